#include "doctest.h"

#include <map>
#include <set>

#include "bitwist/engine.hpp"
#include "bitwist/generators.hpp"
#include "helpers.hpp"

using namespace bitwist;

namespace {

SubdividedBall tetra_subdivision(std::map<std::string, long long> mults) {
    FacePairing p = testing::tetra_pairing();
    EdgeCycleSet cs = edge_cycles(p);
    return subdivide(p, attach_multipliers(cs, mults));
}

SubdividedBall model_subdivision() { return tetra_subdivision({{"AB", -1}, {"BC", 1}, {"CD", 1}}); }

}  // namespace

TEST_CASE("model subdivision counts: two stickers, 18 vertices, 20 edges") {
    SubdividedBall q = model_subdivision();
    CHECK(q.ball.vertices.size() == 18);
    CHECK(q.ball.edges.size() == 20);
    CHECK(q.ball.faces.size() == 4);
    CHECK(euler_characteristic(q.ball) == 2);

    // One subedge for AB and CD, four for each edge of the long cycle.
    CHECK(q.ball.edge_index("AB#0") >= 0);
    CHECK(q.ball.edge_index("AB#1") < 0);
    CHECK(q.ball.edge_index("CD#0") >= 0);
    for (const std::string& e : {"AC", "AD", "BC", "BD"}) {
        CHECK(q.ball.edge_index(e + "#3") >= 0);
        CHECK(q.ball.edge_index(e + "#4") < 0);
    }
    // Stickers: after the negative AB in ABC (corner B) and in ABD (corner A).
    CHECK(q.ball.edge_index("ABC!B!0") >= 0);
    CHECK(q.ball.edge_index("ABD!A!0") >= 0);
    int stickers = 0;
    for (const auto& e : q.ball.edges)
        if (e.id.find('!') != std::string::npos) ++stickers;
    CHECK(stickers == 2);

    // Boundary lengths 11, 11, 9, 9.
    CHECK(q.ball.face("ABC").boundary.size() == 11);
    CHECK(q.ball.face("ABD").boundary.size() == 11);
    CHECK(q.ball.face("ACD").boundary.size() == 9);
    CHECK(q.ball.face("BCD").boundary.size() == 9);
}

TEST_CASE("uniform multipliers leave no stickers") {
    SubdividedBall plus = tetra_subdivision({{"AB", 1}, {"BC", 1}, {"CD", 1}});
    CHECK(plus.ball.vertices.size() == 16);
    CHECK(plus.ball.edges.size() == 18);
    CHECK(plus.ball.faces.size() == 4);

    SubdividedBall minus = tetra_subdivision({{"AB", -1}, {"BC", -1}, {"CD", -1}});
    CHECK(minus.ball.vertices.size() == 16);
    CHECK(minus.ball.edges.size() == 18);
}

TEST_CASE("the bitwisted pairing reproduces the model permutation tables") {
    SubdividedBall q = model_subdivision();
    BitwistPairing d = bitwist(q);
    REQUIRE(d.delta.pairs.size() == 2);

    // Pair ABC/ABD. Boundary slot order of ABC: AB#0, sticker out/back,
    // BC#0..3, AC#3..0; of ABD: AD#0..3, BD#3..0, AB#0, sticker out/back.
    // The published tables force slot i of ABC onto slot (9 - i) mod 11.
    CHECK(d.delta.pairs[0].from == "ABC");
    CHECK(d.delta.pairs[0].to == "ABD");
    CHECK(d.delta.pairs[0].offset == 9);
    // Pair ACD/BCD: slot i onto slot (7 - i) mod 9.
    CHECK(d.delta.pairs[1].from == "ACD");
    CHECK(d.delta.pairs[1].to == "BCD");
    CHECK(d.delta.pairs[1].offset == 7);

    // Spot checks straight from the displays: the AB side of ABC maps to the
    // outgoing sticker side of ABD, the sticker-out side of ABC to the AB
    // side of ABD.
    const auto& abc = q.ball.face("ABC").boundary;
    const auto& abd = q.ball.face("ABD").boundary;
    auto slot_of = [](const std::vector<EdgeSide>& b, const std::string& e, int dir) {
        for (size_t i = 0; i < b.size(); ++i)
            if (b[i].edge == e && b[i].dir == dir) return static_cast<int>(i);
        return -1;
    };
    int ab_in_abc = slot_of(abc, "AB#0", +1);
    int stk_out_abd = slot_of(abd, "ABD!A!0", +1);
    CHECK((9 - ab_in_abc) % 11 == stk_out_abd);
    int stk_out_abc = slot_of(abc, "ABC!B!0", +1);
    int ab_in_abd = slot_of(abd, "AB#0", -1);
    CHECK((9 - stk_out_abc + 11) % 11 == ab_in_abd);

    // Triangle maps are rigid and orientation reversing.
    for (const auto& tri : d.triangle_map) {
        int T = static_cast<int>(tri.size());
        for (int t = 0; t < T; ++t) CHECK(tri[(t + 1) % T] == ((tri[t] + T - 1) % T));
    }
}

TEST_CASE("pure twist is the induced pairing shifted by one subedge") {
    SubdividedBall q = tetra_subdivision({{"AB", 1}, {"BC", 1}, {"CD", 1}});
    BitwistPairing d = bitwist(q);
    PairingTables t(q.ball, d.delta);
    for (size_t k = 0; k < d.delta.pairs.size(); ++k) {
        int fa = q.ball.face_index(d.delta.pairs[k].from);
        int L = static_cast<int>(q.ball.faces[fa].boundary.size());
        for (int s = 0; s < L; ++s) {
            int eps = q.eps_sub[k][s];
            REQUIRE(eps >= 0);
            CHECK(t.partner_slot(fa, s) == (eps + L - 1) % L);
        }
    }
}

TEST_CASE("single digon pair with one cycle and mul +1") {
    // Two digon faces, two edges, one cycle; delta is the unique rigid shift
    // on four triangles.
    FacePairing p;
    p.base.vertices = {"x", "y"};
    p.base.edges = {{"a", "x", "y"}, {"b", "x", "y"}};
    p.base.faces = {{"N", {{"a", +1}, {"b", -1}}}, {"S", {{"b", +1}, {"a", -1}}}};
    p.pairing.pairs = {{"N", "S", 0}};
    REQUIRE(validate_pairing(p).ok);
    EdgeCycleSet cs = edge_cycles(p);
    REQUIRE(cs.cycles.size() == 1);
    CHECK(cs.cycles[0].length == 2);
    SubdividedBall q = subdivide(p, attach_multipliers(cs, {{"a", 1}}));
    CHECK(q.ball.edges.size() == 4);  // two subedges per edge
    BitwistPairing d = bitwist(q);
    QuotientComplex m = quotient(q, d);
    CHECK(certify_manifold(m).pass);
}

TEST_CASE("model quotient has cell vector (1, 2, 2, 1) and the published orbits") {
    SubdividedBall q = model_subdivision();
    BitwistPairing d = bitwist(q);
    QuotientComplex m = quotient(q, d);

    CHECK(m.vertices == 1);
    CHECK(m.edges == 2);
    CHECK(m.faces == 2);
    CHECK(m.three_cells == 1);
    CHECK(m.euler() == 0);
    CHECK(certify_manifold(m).pass);

    REQUIRE(m.orbits.edge_orbits.size() == 2);
    std::set<std::string> orbit_a, orbit_b;
    for (const auto& [e, d2] : m.orbits.edge_orbits[0].orientation) orbit_a.insert(e);
    for (const auto& [e, d2] : m.orbits.edge_orbits[1].orientation) orbit_b.insert(e);

    // The two displayed hop chains, translated to derived subedge ids:
    // b3..A etc. live on AC, c's on AD, d's on BD, a's on BC.
    std::set<std::string> chain11 = {"AC#0", "ABD!A!0", "AB#0", "ABC!B!0", "BD#0", "AD#1",
                                     "AC#2", "BC#3",    "AD#3", "BD#2",    "BC#1"};
    std::set<std::string> chain9 = {"AC#3", "CD#0", "BD#3", "BC#2", "AC#1",
                                    "AD#0", "BC#0", "BD#1", "AD#2"};
    if (orbit_a.size() != 11) std::swap(orbit_a, orbit_b);
    CHECK(orbit_a == chain11);
    CHECK(orbit_b == chain9);
    CHECK(m.orbits.edge_orbits[0].trace.size() + m.orbits.edge_orbits[1].trace.size() == 20);

    // Boundary words read along the pair representatives have lengths 11, 9.
    REQUIRE(m.boundary_words.size() == 2);
    CHECK(m.boundary_words[0].size() == 11);
    CHECK(m.boundary_words[1].size() == 9);
}

TEST_CASE("a fake quotient fails certification") {
    QuotientComplex fake;
    fake.vertices = 2;
    fake.edges = 2;
    fake.faces = 2;
    fake.three_cells = 1;
    ManifoldCertificate c = certify_manifold(fake);
    CHECK_FALSE(c.pass);
    CHECK(c.vertex_orbits == 2);
}

TEST_CASE("vertex links are spheres and the duality certificate holds on the model") {
    FacePairing p = testing::tetra_pairing();
    EdgeCycleSet cs = edge_cycles(p);

    SUBCASE("model multipliers") {
        MultiplierFunction mul = attach_multipliers(cs, {{"AB", -1}, {"BC", 1}, {"CD", 1}});
        SubdividedBall q = subdivide(p, mul);
        BitwistPairing d = bitwist(q);
        Complex2 link = vertex_link(q.ball, d.delta);
        CHECK(validate_sphere(link).ok);
        CHECK(link.faces.size() == q.ball.vertices.size());

        DualLinkCheck res = dual_link_check(p, mul);
        CHECK(res.isomorphic);
        CHECK(res.dual_link_faces == res.dual_star_faces);
    }
    SUBCASE("pure twist multipliers") {
        MultiplierFunction mul = attach_multipliers(cs, {{"AB", 1}, {"BC", 1}, {"CD", 1}});
        DualLinkCheck res = dual_link_check(p, mul);
        CHECK(res.isomorphic);
    }
    SUBCASE("size cap skips the search") {
        MultiplierFunction mul = attach_multipliers(cs, {{"AB", -1}, {"BC", 1}, {"CD", 1}});
        DualLinkCheck res = dual_link_check(p, mul, 4);
        CHECK(res.skipped_by_cap);
        CHECK(res.detail == "skipped (cap)");
    }
}

TEST_CASE("randomized instances all certify and mirror multipliers agree") {
    Rng rng(99);
    for (int i = 0; i < 40; ++i) {
        FacePairing p = random_paired_ball(rng, 8, 6);
        EdgeCycleSet cs = edge_cycles(p);
        MultiplierFunction mul = random_multipliers(rng, cs, 3);
        SubdividedBall q = subdivide(p, mul);
        BitwistPairing d = bitwist(q);
        QuotientComplex m = quotient(q, d);
        CHECK(certify_manifold(m).pass);

        MultiplierFunction neg;
        for (const auto& [k, v] : mul.by_representative) neg.by_representative[k] = -v;
        QuotientComplex m2 = quotient(q = subdivide(p, neg), bitwist(q));
        CHECK(m2.vertices == m.vertices);
        CHECK(m2.edges == m.edges);
        CHECK(m2.faces == m.faces);
    }
}
