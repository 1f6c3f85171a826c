#ifndef BITWIST_TEST_HELPERS_HPP
#define BITWIST_TEST_HELPERS_HPP

#include <string>

#include "bitwist/io.hpp"

namespace bitwist::testing {

inline BallInput load_data(const std::string& name) {
    return load_ball_file(std::string(TEST_DATA_DIR) + "/" + name);
}

inline BallInput tetra() { return load_data("tetra.json"); }

inline FacePairing tetra_pairing() {
    BallInput in = tetra();
    return {in.ball, in.pairing};
}

// The double monogon: one vertex, one loop edge, two hemispheres.
inline Complex2 double_monogon() {
    Complex2 c;
    c.vertices = {"v"};
    c.edges = {{"e", "v", "v"}};
    c.faces = {{"N", {{"e", +1}}}, {"S", {{"e", -1}}}};
    return c;
}

}  // namespace bitwist::testing

#endif
