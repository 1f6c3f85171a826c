#ifndef BITWIST_PAIRING_HPP
#define BITWIST_PAIRING_HPP

#include <map>
#include <string>
#include <vector>

#include "bitwist/complex2.hpp"

namespace bitwist {

// The boundary sphere of a faceted 3-ball; the single 3-cell is implicit.
using FacetedBall = Complex2;

// Orientation-reversing matching of faces. Each pair carries one alignment
// offset: slot i of `from`, traversed positively, is glued to slot
// (offset - i) mod L of `to` traversed negatively.
struct FacePair {
    std::string from;
    std::string to;
    int offset = 0;
};

struct OffsetPairing {
    std::vector<FacePair> pairs;
};

struct FacePairing {
    FacetedBall base;
    OffsetPairing pairing;
};

ValidationReport validate_pairing(const FacePairing& p);

// Derived lookup tables for a pairing over a fixed complex.
class PairingTables {
public:
    PairingTables(const Complex2& c, const OffsetPairing& p);

    const Complex2& complex() const { return *c_; }
    int pair_count() const { return static_cast<int>(pairs_.size()); }
    const FacePair& pair(int k) const { return pairs_[k]; }

    int pair_of_face(int face) const { return pair_of_face_[face]; }
    bool is_from(int face) const { return is_from_[face]; }
    int partner_face(int face) const { return partner_[face]; }

    // Image slot of (face, slot) under the pairing map of its pair.
    int partner_slot(int face, int slot) const;

    // Image of the corner at the tail of `slot` (a corner of `face`).
    std::pair<int, int> corner_image(int face, int slot) const;

private:
    const Complex2* c_;
    std::vector<FacePair> pairs_;
    std::vector<int> pair_of_face_, partner_;
    std::vector<char> is_from_;
    std::vector<int> offset_for_face_;  // offset valid for mapping out of this face
};

// --- orbit engine ------------------------------------------------------------

// One hop of an edge-orbit trace: the directed edge occupied before the hop
// and the pairing map applied (power +1 maps from->to, -1 maps to->from).
struct OrbitHop {
    std::string edge;
    int dir = 1;
    int pair = -1;
    int power = 1;
};

struct EdgeOrbit {
    std::vector<OrbitHop> trace;                 // starts at the smallest edge id, dir +1
    std::map<std::string, int> orientation;      // edge -> +1/-1 relative to the trace direction
    int length() const { return static_cast<int>(trace.size()); }
};

struct OrbitData {
    std::vector<EdgeOrbit> edge_orbits;          // sorted by smallest contained edge id
    std::vector<std::vector<std::string>> vertex_orbits;  // each sorted; list sorted by first id
    std::map<std::string, int> orbit_of_edge;
    std::map<std::string, int> orbit_of_vertex;
};

// Closure of the pairing maps on edges and vertices, with ordered traces.
OrbitData pairing_orbits(const Complex2& c, const OffsetPairing& p);

// --- edge cycles and multipliers ---------------------------------------------

// Edge cycles of a model face-pairing; length el is the cycle cardinality.
struct EdgeCycle {
    std::string representative;  // smallest edge id in the cycle
    int length = 0;
    std::vector<OrbitHop> trace;
};

struct EdgeCycleSet {
    std::vector<EdgeCycle> cycles;
    std::map<std::string, int> cycle_of_edge;
};

EdgeCycleSet edge_cycles(const FacePairing& p);

// Total map from edge cycles to nonzero integers, keyed by representative.
struct MultiplierFunction {
    std::map<std::string, long long> by_representative;

    long long of_cycle(const EdgeCycleSet& cycles, const std::string& edge) const;
};

// Validates totality and nonzero values against the given cycle set.
// Throws std::invalid_argument with the spec'd messages on bad input.
MultiplierFunction attach_multipliers(const EdgeCycleSet& cycles,
                                      const std::map<std::string, long long>& values);

}  // namespace bitwist

#endif
