#ifndef BITWIST_GENERATORS_HPP
#define BITWIST_GENERATORS_HPP

#include <cstdint>
#include <random>

#include "bitwist/pairing.hpp"
#include "bitwist/surgery.hpp"

namespace bitwist {

using Rng = std::mt19937_64;

// Random valid faceted ball with a face-pairing: even face multiset with
// paired lengths, random side matching, rejection-sampled to a sphere.
FacePairing random_paired_ball(Rng& rng, int max_faces = 8, int max_len = 6);

MultiplierFunction random_multipliers(Rng& rng, const EdgeCycleSet& cycles, int bound = 3);

// Random meridian-chain link: a path of unknots with consecutive linking
// +-1 and rational framings with small numerators/denominators. The final
// component is marked as a meridian of its neighbor.
FramedLink random_chain_link(Rng& rng, int min_len = 2, int max_len = 6, int coeff_bound = 9);

}  // namespace bitwist

#endif
