#ifndef BITWIST_COMPLEX2_HPP
#define BITWIST_COMPLEX2_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bitwist {

// A directed occurrence of an edge in a face boundary. dir=+1 traverses the
// edge tail->head, dir=-1 traverses head->tail.
struct EdgeSide {
    std::string edge;
    int dir = 1;

    bool operator==(const EdgeSide&) const = default;
};

struct EdgeRec {
    std::string id;
    std::string tail;
    std::string head;

    bool operator==(const EdgeRec&) const = default;
};

struct FaceRec {
    std::string id;
    std::vector<EdgeSide> boundary;  // cyclic, in the orientation induced by the surface

    bool operator==(const FaceRec&) const = default;
};

// Closed oriented 2-complex given by coherently oriented face boundary words.
// Cells may be degenerate (loops, monogons, sticker spikes); faces are
// attached along traversal words, never vertex lists.
struct Complex2 {
    std::vector<std::string> vertices;
    std::vector<EdgeRec> edges;
    std::vector<FaceRec> faces;

    bool operator==(const Complex2&) const = default;

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    int face_index(const std::string& id) const;
    const EdgeRec& edge(const std::string& id) const;
    const FaceRec& face(const std::string& id) const;

    // Tail/head vertex of a directed side.
    const std::string& side_tail(const EdgeSide& s) const;
    const std::string& side_head(const EdgeSide& s) const;

    void invalidate_index() { index_built_ = false; }

private:
    void build_index() const;
    mutable bool index_built_ = false;
    mutable std::unordered_map<std::string, int> vidx_, eidx_, fidx_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string msg);
};

// Structural checks for any closed oriented complex: unique ids, resolvable
// references, every edge covered by exactly two sides with opposite
// directions, and every boundary word chains head-to-tail.
ValidationReport validate_surface(const Complex2& c);

// Sphere checks on top of validate_surface: connected, chi == 2, and not the
// forbidden minimal complex (a single 0-cell with a single 2-cell).
ValidationReport validate_sphere(const Complex2& c);

long long euler_characteristic(const Complex2& c);
int connected_component_count(const Complex2& c);

// Orientation mirror: every boundary word reversed.
Complex2 mirror(const Complex2& c);

// Location of one of the two sides covering an edge.
struct SideRef {
    int face = -1;  // face index
    int slot = -1;  // position in boundary word
    int dir = 0;
};

// Flag system of a valid closed oriented complex. Flags are (face, slot, end)
// triples; the three involutions are s0 (other end of the same side), s1
// (other side at the same face corner) and s2 (same edge end, other face
// side). Cell orbits: vertices = <s1,s2>, edges = <s0,s2>, faces = <s0,s1>.
class FlagSystem {
public:
    explicit FlagSystem(const Complex2& c);

    int flag_count() const { return static_cast<int>(s0_.size()); }
    int s0(int f) const { return s0_[f]; }
    int s1(int f) const { return s1_[f]; }
    int s2(int f) const { return s2_[f]; }
    int face_of(int f) const { return face_[f]; }
    int slot_of(int f) const { return slot_[f]; }
    int end_of(int f) const { return end_[f]; }
    int flag(int face, int slot, int end) const;

    // The two side occurrences of each edge index.
    const std::vector<std::pair<SideRef, SideRef>>& edge_sides() const { return edge_sides_; }

private:
    const Complex2* c_;
    std::vector<int> s0_, s1_, s2_, face_, slot_, end_;
    std::vector<int> face_offset_;
    std::vector<std::pair<SideRef, SideRef>> edge_sides_;
};

// Cellular isomorphism search. Returns a flag bijection A->B commuting with
// the involutions, or nullopt. orientation_preserving selects which flag
// parity class images are drawn from.
std::optional<std::vector<int>> cellular_isomorphism(const Complex2& a, const Complex2& b,
                                                     bool orientation_preserving,
                                                     long long flag_cap = -1);

// Poincare dual of a closed oriented complex: faces <-> vertices, edges kept
// (same ids), with boundary words read from the vertex rotations.
Complex2 dual_complex(const Complex2& c);

// --- barycentric boundary subdivision and dual caps -------------------------

// Triangle of the barycentric subdivision: half 0 covers the tail half of the
// side, half 1 the head half. Within face f of boundary length k the 2k
// triangles are cyclically ordered (slot,half) = (0,0),(0,1),(1,0),...
struct BaryTriangle {
    std::string face;
    int slot = 0;
    int half = 0;
};

struct BarycentricBoundary {
    Complex2 parent;
    Complex2 complex;                       // the subdivided surface
    std::vector<BaryTriangle> triangles;    // tags, one per triangle face of `complex`
    std::vector<std::vector<int>> by_face;  // face index of parent -> triangle ids in cyclic order
};

BarycentricBoundary barycentric_boundary(const Complex2& c);

// One quadrilateral cap per face corner, obtained from the barycentric
// subdivision by deleting the vertex-to-face-barycenter edges.
struct DualCapCell {
    std::string face;  // parent face
    int corner = 0;    // corner at the tail of this boundary slot
};

struct DualCapComplex {
    Complex2 parent;
    Complex2 complex;
    std::vector<DualCapCell> caps;  // tags, one per face of `complex`
};

DualCapComplex dual_cap(const BarycentricBoundary& s);

// Deterministic derived-cell id helpers shared across modules.
std::string edge_bary_id(const std::string& edge);
std::string face_bary_id(const std::string& face);
std::string half_edge_id(const std::string& edge, int end);

}  // namespace bitwist

#endif
