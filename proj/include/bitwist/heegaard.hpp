#ifndef BITWIST_HEEGAARD_HPP
#define BITWIST_HEEGAARD_HPP

#include <map>
#include <string>
#include <vector>

#include "bitwist/engine.hpp"

namespace bitwist {

enum class EdgeAxis { Vertical, Diagonal };
enum class EdgeRole { Meridian, Nonmeridian };

// A closed edge path on a surface complex.
using EdgeCycle = std::vector<EdgeSide>;

struct SurfaceQuad {
    int pair = -1;           // face pair index
    int slot = -1;           // from-face boundary slot
    std::string face_id;     // face id in Y
    std::string bottom_edge; // ball edge glued at height 0
    std::string top_edge;    // ball edge glued at height 1
    int bottom_cycle = -1;   // edge cycle feeding the bottom slot
    int top_cycle = -1;      // edge cycle feeding the top slot
};

struct EdgePairingSurface {
    FacetedBall ball;     // Q
    OffsetPairing delta;
    Complex2 y;           // 1-skeleton plus one annulus per face pair
    Complex2 s;           // dual cap subdivision of y
    std::vector<DualCapCell> cap_tags;        // per face of s
    std::vector<SurfaceQuad> quads;
    std::map<std::string, int> quad_of_face;  // y face id -> quad index
    std::map<std::string, EdgeAxis> axis;     // per s edge id
    std::map<std::string, EdgeRole> role;
    int genus = 0;
};

EdgePairingSurface build_surface(const SubdividedBall& q, const BitwistPairing& d);

struct HeegaardDiagram {
    std::vector<EdgeCycle> v_curves;
    std::vector<EdgeCycle> d_curves;
    bool v_planar_complement = false;
    bool d_planar_complement = false;
};

// Extracts the vertical/diagonal meridian curve families and verifies the
// Heegaard-diagram structure (counts, simplicity, planar complements).
// Violations throw: they would contradict the construction.
HeegaardDiagram heegaard_diagram(const EdgePairingSurface& s);

struct Cylinder {
    int cycle = -1;
    std::string cycle_representative;
    long long multiplier = 0;
    std::vector<std::string> caps;  // cap face ids of s
    bool closed = false;            // single-cycle case: the cylinder is all of S
    long long chi = 0;
    int boundary_circles = 0;
    bool connected = false;
    EdgeCycle core_boundary;        // one boundary circle (empty when closed)
    // Pushed-in parallel of core_boundary as a dual walk: (s edge index, sign)
    // crossings; represents the cylinder core in cocycle form.
    std::vector<std::pair<int, int>> core_parallel;
};

struct CylinderDecomposition {
    std::vector<Cylinder> cylinders;
};

CylinderDecomposition cylinders(const EdgePairingSurface& s, const SubdividedBall& q);

struct TwistFactor {
    std::string cycle_representative;
    long long exponent = 0;
};

struct TwistWord {
    std::vector<TwistFactor> factors;
    int handedness = +1;
};

struct WindingReport {
    bool pass = false;
    std::vector<long long> winding;  // per cylinder, equal to the multiplier when verified
    std::string detail;
};

TwistWord twist_word(const CylinderDecomposition& dec);

// Verifies that the diagonal system is the twist word applied to the vertical
// system: per-cylinder annulus structure plus the homological identity
// [D_j] = s_j([V_sigma(j)] + H * sum_i m_i <V_sigma(j), beta_i> [beta_i]).
WindingReport winding_check(const EdgePairingSurface& s, const HeegaardDiagram& diag,
                            const CylinderDecomposition& dec);

// --- surface utilities (exposed for tests) -----------------------------------

// Subsurface assembled from a subset of faces of a closed surface complex,
// glued only across the allowed edges.
struct SubSurface {
    int face_count = 0;
    long long chi = 0;
    int components = 0;
    std::vector<EdgeCycle> boundary;  // circles as edge paths on the parent
    // Per circle: a parallel pushed-in dual walk, as (parent edge index, sign)
    // crossings. Evaluating it on 1-chains gives intersection numbers with the
    // circle's class.
    std::vector<std::vector<std::pair<int, int>>> boundary_parallel;
};

SubSurface assemble_subsurface(const Complex2& s, const std::vector<char>& face_in,
                               const std::vector<char>& edge_allowed);

// Homology coordinates via a tree-cotree decomposition: 2g cocycles that
// vanish on face boundaries and are dual to a basis of H1.
class SurfaceHomology {
public:
    explicit SurfaceHomology(const Complex2& s);
    int rank() const { return static_cast<int>(cocycles_.size()); }
    std::vector<long long> coords(const EdgeCycle& z) const;

private:
    const Complex2* s_;
    // cocycle: edge index -> sign
    std::vector<std::map<int, int>> cocycles_;
};

// Algebraic intersection number of two edge-disjoint closed edge paths.
long long algebraic_intersection(const Complex2& s, const EdgeCycle& a, const EdgeCycle& b);

}  // namespace bitwist

#endif
