#ifndef BITWIST_SURGERY_HPP
#define BITWIST_SURGERY_HPP

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bitwist/invariants.hpp"
#include "bitwist/pairing.hpp"

namespace bitwist {

// A surgery coefficient: a rational number or infinity.
class Framing {
public:
    Framing() : inf_(true) {}
    explicit Framing(mpq_class q) : inf_(false), q_(std::move(q)) { q_.canonicalize(); }
    static Framing infinity() { return Framing(); }
    static Framing of(long long p, long long q = 1) { return Framing(mpq_class(p, q)); }
    static Framing parse(const std::string& s);  // "p/q", "p" or "inf"

    bool is_infinite() const { return inf_; }
    bool is_integer() const { return !inf_ && q_.get_den() == 1; }
    const mpq_class& rational() const;

    // 1/x with the conventions 1/inf = 0 and 1/0 = inf.
    Framing reciprocal() const;
    Framing plus(const mpq_class& r) const;  // inf + r = inf

    std::string str() const;
    bool operator==(const Framing& o) const;

private:
    bool inf_;
    mpq_class q_;
};

struct LinkComponent {
    std::string id;
    enum Kind { Face, Edge, Other } kind = Other;
    Framing framing;
    bool unknotted = false;
    std::string cycle;  // edge components: representative of their edge cycle
};

struct FramedLink {
    std::vector<LinkComponent> components;
    std::vector<std::vector<long long>> linking;           // symmetric, diagonal unused
    std::set<std::pair<std::string, std::string>> meridians;  // (K, J): K is a meridian of J

    int index_of(const std::string& id) const;
    const LinkComponent& component(const std::string& id) const;
    long long lk(const std::string& a, const std::string& b) const;
};

ValidationReport validate_link(const FramedLink& l);

FramedLink rolfsen_twist(const FramedLink& l, const std::string& j, long long n);
FramedLink slam_dunk(const FramedLink& l, const std::string& k);
FramedLink delete_infinite_components(const FramedLink& l);

// Slam-dunks, infinity deletions and Rolfsen kills of +/-1-framed unknots,
// applied until none fires. Surgery-equivalent to the input.
FramedLink simplify_link(FramedLink l);

// First homology of the surgered manifold: row i has p_i on the diagonal and
// q_i*lk(i,j) off it, framing_i = p_i/q_i in lowest terms.
AbelianInvariants h1_from_link(const FramedLink& l);

// Corridor complex framings: each face component gets 0, each edge component
// its supplied blackboard framing plus 1/mul of its edge cycle.
FramedLink bilink_framings(const FramedLink& l, const std::map<std::string, long long>& blackboard,
                           const MultiplierFunction& mul);

// --- reflection face-pairings -------------------------------------------------

// Cellular decomposition of the northern hemisphere disk plus an integer per
// edge. Equator edges are exactly those covered once by the face words; a
// label 0 collapses the edge (and its mirror cycle) before doubling.
struct ReflectionDiagram {
    std::vector<std::string> vertices;
    std::vector<EdgeRec> edges;
    std::vector<FaceRec> faces;
    std::map<std::string, long long> labels;
};

ValidationReport validate_diagram(const ReflectionDiagram& d);

struct ReflectionBall {
    FacePairing pairing;
    EdgeCycleSet cycles;
    MultiplierFunction mul;
    std::set<std::string> equator_edges;
};

// Mirror doubling; southern copies get the ".s" suffix, equator edges are
// shared, zero-labeled (equator) edges collapse first.
ReflectionBall double_diagram(const ReflectionDiagram& d);

// Scallop diagram: a monogon for k = 1, otherwise a fan of two digons and
// k-2 triangles; equator edges carry the given multipliers, spokes carry 1.
ReflectionDiagram scallop(const std::vector<long long>& multipliers);

// The framed link of a reflection face-pairing: one 0-framed face component
// per northern face and one edge component per surviving northern edge with
// framing sigma/mul.
FramedLink reflection_link(const ReflectionDiagram& d, int sigma);

// --- lens spaces ---------------------------------------------------------------

struct LensParams {
    mpz_class p, q;
    std::vector<long long> a;
    std::vector<long long> m;
};

LensParams lens_from_multipliers(const std::vector<long long>& m);
LensParams multipliers_from_lens(const mpz_class& p, const mpz_class& q);

// --- connected sums and reframing ---------------------------------------------

struct PairedBall {
    FacePairing pairing;
    EdgeCycleSet cycles;
    MultiplierFunction mul;
};

// Connected sum along e1, e2 (which must carry equal multipliers and not both
// be loops): both edges are replaced by digons which are then identified.
// Input ids are prefixed "A." and "B.".
PairedBall connected_sum(const FacePairing& p1, const MultiplierFunction& m1, const std::string& e1,
                         const FacePairing& p2, const MultiplierFunction& m2, const std::string& e2);

struct ReframeStep {
    std::string cycle;      // representative in the base
    mpq_class alpha;
    bool reciprocal_case = false;
    long long attached_multiplier = 0;      // mul assigned to the amalgamated cycle
    std::vector<long long> scallop_multipliers;  // empty in the reciprocal case
    bool identity_holds = false;            // b + 1/mul -+ (1 -+ alpha) == b + alpha
};

struct ReframeResult {
    FacePairing pairing;
    EdgeCycleSet cycles;
    MultiplierFunction mul;
    std::vector<ReframeStep> steps;
};

// Theorem-5.5 pipeline: realize new edge-component framings b_i + alpha_i by
// choosing reciprocal multipliers where possible and attaching scallops
// elsewhere.
ReframeResult attach_scallops(const FacePairing& p, const std::map<std::string, mpq_class>& alpha);

}  // namespace bitwist

#endif
