#ifndef BITWIST_ENGINE_HPP
#define BITWIST_ENGINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bitwist/pairing.hpp"

namespace bitwist {

// Provenance of one boundary slot of a face of Q.
struct QSlot {
    enum Kind { Sub, StickerOut, StickerBack };
    Kind kind = Sub;
    std::string orig_edge;  // Sub: the subdivided model edge
    int sub_index = -1;     // Sub: index along the stored direction of orig_edge
    int orig_slot = -1;     // Sub: model boundary slot this subedge side came from
    std::string sticker_edge;  // Sticker*: the sticker edge id
    int cycle = -1;         // edge cycle feeding this slot (stickers: per the cylinder rule)
};

// The subdivision Q of the model ball, with stickers and the induced
// subedge-level pairing recorded.
struct SubdividedBall {
    FacetedBall ball;  // Q; face ids equal the model face ids
    FacePairing model;
    EdgeCycleSet cycles;
    MultiplierFunction mul;

    // Per model-face index: provenance of each Q boundary slot.
    std::vector<std::vector<QSlot>> face_slots;

    // Induced pairing eps' on subedge slots: for the `from` face of each pair,
    // eps_sub[pair][qslot] is the partner Q-slot in the `to` face (-1 at
    // sticker slots, where eps' is undefined).
    std::vector<std::vector<int>> eps_sub;

    long long multiplier_of_edge(const std::string& model_edge) const;
    int cycle_of_edge(const std::string& model_edge) const;
};

SubdividedBall subdivide(const FacePairing& p, const MultiplierFunction& m);

// The bitwisted face-pairing delta on Q. At the barycentric-triangle level it
// shifts the induced pairing two triangles against the twist direction; the
// result is always a rigid alignment on each face pair, stored as offsets.
struct BitwistPairing {
    OffsetPairing delta;
    // Per pair: triangle-level map on the barycentric subdivision of the
    // `from` face (2L entries, triangle t = 2*slot + half).
    std::vector<std::vector<int>> triangle_map;
};

BitwistPairing bitwist(const SubdividedBall& q);

struct QuotientComplex {
    long long vertices = 0, edges = 0, faces = 0, three_cells = 1;
    OrbitData orbits;  // of (Q, delta)
    // One word per face pair, read along the `from` face boundary: letters are
    // (edge-orbit index, exponent +1/-1).
    std::vector<std::vector<std::pair<int, int>>> boundary_words;
    FacetedBall ball;      // Q
    OffsetPairing delta;

    long long euler() const { return vertices - edges + faces - three_cells; }
};

QuotientComplex quotient(const SubdividedBall& q, const BitwistPairing& d);

struct ManifoldCertificate {
    bool pass = false;
    long long vertex_orbits = 0, edge_orbits = 0, face_pairs = 0, euler = 0;
};

ManifoldCertificate certify_manifold(const QuotientComplex& m);

// Link of the single vertex of ball/pairing as a closed oriented complex:
// one polygon per ball vertex, glued along corner images.
Complex2 vertex_link(const Complex2& ball, const OffsetPairing& pairing);

struct DualLinkCheck {
    bool isomorphic = false;
    bool skipped_by_cap = false;
    std::string detail;
    // Cell-count precheck data.
    long long dual_link_faces = 0, dual_star_faces = 0;
};

// Theorem 3.2 verification: the dual of the vertex link of M(P,eps,mul) is
// cellularly isomorphic to the boundary of the subdivision built with -mul,
// orientation-reversingly. flag_cap < 0 disables the cap.
DualLinkCheck dual_link_check(const FacePairing& p, const MultiplierFunction& m,
                              long long flag_cap = -1);

}  // namespace bitwist

#endif
