#include "doctest.h"

#include "bitwist/generators.hpp"
#include "bitwist/heegaard.hpp"
#include "bitwist/report.hpp"
#include "bitwist/surgery.hpp"
#include "helpers.hpp"

using namespace bitwist;

namespace {

struct Built {
    SubdividedBall q;
    BitwistPairing d;
    EdgePairingSurface s;
};

Built build(const FacePairing& p, const MultiplierFunction& mul) {
    SubdividedBall q = subdivide(p, mul);
    BitwistPairing d = bitwist(q);
    EdgePairingSurface s = build_surface(q, d);
    return {std::move(q), std::move(d), std::move(s)};
}

Built model() {
    FacePairing p = testing::tetra_pairing();
    EdgeCycleSet cs = edge_cycles(p);
    return build(p, attach_multipliers(cs, {{"AB", -1}, {"BC", 1}, {"CD", 1}}));
}

Built scallop_ball(const std::vector<long long>& m) {
    ReflectionBall rb = double_diagram(scallop(m));
    return build(rb.pairing, rb.mul);
}

}  // namespace

TEST_CASE("model surface has genus two and 2+2 meridian curves") {
    Built b = model();
    CHECK(b.s.genus == 2);
    CHECK(euler_characteristic(b.s.y) == -2);
    CHECK(validate_surface(b.s.s).ok);

    HeegaardDiagram diag = heegaard_diagram(b.s);
    CHECK(diag.v_curves.size() == 2);
    CHECK(diag.d_curves.size() == 2);
    CHECK(diag.v_planar_complement);
    CHECK(diag.d_planar_complement);
}

TEST_CASE("model cylinders: three annuli with windings (-1, 1, 1)") {
    Built b = model();
    HeegaardDiagram diag = heegaard_diagram(b.s);
    CylinderDecomposition dec = cylinders(b.s, b.q);
    REQUIRE(dec.cylinders.size() == 3);
    // Caps partition S.
    size_t total = 0;
    for (const auto& c : dec.cylinders) {
        total += c.caps.size();
        CHECK(c.connected);
        CHECK(c.chi == 0);
        CHECK(c.boundary_circles == 2);
    }
    CHECK(total == b.s.s.faces.size());

    TwistWord tw = twist_word(dec);
    REQUIRE(tw.factors.size() == 3);
    CHECK(tw.factors[0].cycle_representative == "AB");
    CHECK(tw.factors[0].exponent == -1);
    CHECK(tw.factors[1].exponent == 1);
    CHECK(tw.factors[2].exponent == 1);

    WindingReport wr = winding_check(b.s, diag, dec);
    CHECK(wr.pass);
    REQUIRE(wr.winding.size() == 3);
    CHECK(wr.winding[0] == -1);
    CHECK(wr.winding[1] == 1);
    CHECK(wr.winding[2] == 1);
}

TEST_CASE("lying about a multiplier fails the winding check") {
    Built b = model();
    HeegaardDiagram diag = heegaard_diagram(b.s);
    CylinderDecomposition dec = cylinders(b.s, b.q);
    dec.cylinders[0].multiplier = 1;  // really -1
    WindingReport wr = winding_check(b.s, diag, dec);
    CHECK_FALSE(wr.pass);

    CylinderDecomposition dec2 = cylinders(b.s, b.q);
    dec2.cylinders[1].multiplier = 2;  // really 1
    CHECK_FALSE(winding_check(b.s, diag, dec2).pass);
}

TEST_CASE("scallop k=1 gives a torus with a single closed cylinder") {
    for (long long p = 1; p <= 5; ++p) {
        Built b = scallop_ball({p});
        CHECK(b.s.genus == 1);
        HeegaardDiagram diag = heegaard_diagram(b.s);
        CHECK(diag.v_curves.size() == 1);
        CHECK(diag.d_curves.size() == 1);
        CylinderDecomposition dec = cylinders(b.s, b.q);
        REQUIRE(dec.cylinders.size() == 1);
        CHECK(dec.cylinders[0].closed);
        CHECK(dec.cylinders[0].caps.size() == b.s.s.faces.size());
        WindingReport wr = winding_check(b.s, diag, dec);
        CHECK(wr.pass);
        CHECK(wr.winding[0] == p);
    }
}

TEST_CASE("negative single-cycle winding") {
    // One cycle with multiplier -2: the diagonal arcs wind -2 about the core.
    FacePairing p;
    p.base = testing::double_monogon();
    p.pairing.pairs = {{"N", "S", 0}};
    EdgeCycleSet cs = edge_cycles(p);
    MultiplierFunction mul = attach_multipliers(cs, {{"e", -2}});
    Built b = build(p, mul);
    HeegaardDiagram diag = heegaard_diagram(b.s);
    CylinderDecomposition dec = cylinders(b.s, b.q);
    WindingReport wr = winding_check(b.s, diag, dec);
    CHECK(wr.pass);
    CHECK(wr.winding[0] == -2);
    CylinderDecomposition lie = cylinders(b.s, b.q);
    lie.cylinders[0].multiplier = 2;
    CHECK_FALSE(winding_check(b.s, diag, lie).pass);
}

TEST_CASE("random instances: full Heegaard and twist verification") {
    Rng rng(321);
    for (int i = 0; i < 30; ++i) {
        FacePairing p = random_paired_ball(rng, 8, 5);
        EdgeCycleSet cs = edge_cycles(p);
        MultiplierFunction mul = random_multipliers(rng, cs, 3);
        Built b = build(p, mul);
        CHECK(euler_characteristic(b.s.s) == 2 - 2 * b.s.genus);
        HeegaardDiagram diag = heegaard_diagram(b.s);
        CHECK(static_cast<int>(diag.v_curves.size()) == b.s.genus);
        CylinderDecomposition dec = cylinders(b.s, b.q);
        size_t total = 0;
        for (const auto& c : dec.cylinders) total += c.caps.size();
        CHECK(total == b.s.s.faces.size());
        WindingReport wr = winding_check(b.s, diag, dec);
        CHECK(wr.pass);
        for (size_t c = 0; c < dec.cylinders.size(); ++c)
            CHECK(wr.winding[c] == dec.cylinders[c].multiplier);
    }
}

TEST_CASE("homology coordinates vanish on face boundaries") {
    Built b = model();
    SurfaceHomology hom(b.s.s);
    CHECK(hom.rank() == 2 * b.s.genus);
    for (const auto& f : b.s.s.faces) {
        EdgeCycle z = f.boundary;
        for (long long v : hom.coords(z)) CHECK(v == 0);
    }
}
