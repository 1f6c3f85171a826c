#include "doctest.h"

#include <set>

#include "bitwist/generators.hpp"
#include "bitwist/pairing.hpp"
#include "helpers.hpp"

using namespace bitwist;

TEST_CASE("the model tetrahedron pairing validates") {
    FacePairing p = testing::tetra_pairing();
    CHECK(validate_pairing(p).ok);
}

TEST_CASE("mismatched boundary lengths are rejected") {
    FacePairing p = testing::tetra_pairing();
    // Cut one face down to a digon: lengths 3 vs 2.
    p.base.faces[1].boundary.pop_back();
    CHECK_FALSE(validate_pairing(p).ok);
}

TEST_CASE("uncovered faces are rejected") {
    FacePairing p = testing::tetra_pairing();
    p.pairing.pairs.pop_back();
    ValidationReport r = validate_pairing(p);
    REQUIRE_FALSE(r.ok);
    bool found = false;
    for (const auto& v : r.violations)
        if (v.find("uncovered face") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("self-paired faces are rejected") {
    FacePairing p = testing::tetra_pairing();
    p.pairing.pairs[0] = {"ABC", "ABC", 0};
    p.pairing.pairs[1] = {"ABD", "ACD", 0};
    CHECK_FALSE(validate_pairing(p).ok);
}

TEST_CASE("tetrahedron edge cycles are (1, 4, 1)") {
    EdgeCycleSet cs = edge_cycles(testing::tetra_pairing());
    REQUIRE(cs.cycles.size() == 3);
    CHECK(cs.cycles[0].representative == "AB");
    CHECK(cs.cycles[0].length == 1);
    CHECK(cs.cycles[1].representative == "AC");
    CHECK(cs.cycles[1].length == 4);
    std::set<std::string> big;
    for (const auto& hop : cs.cycles[1].trace) big.insert(hop.edge);
    CHECK(big == std::set<std::string>{"AC", "AD", "BC", "BD"});
    CHECK(cs.cycles[2].representative == "CD");
    CHECK(cs.cycles[2].length == 1);
}

TEST_CASE("a k=1 scallop-style pairing has one cycle of length 1") {
    FacePairing p;
    p.base = testing::double_monogon();
    p.pairing.pairs = {{"N", "S", 0}};
    REQUIRE(validate_pairing(p).ok);
    EdgeCycleSet cs = edge_cycles(p);
    REQUIRE(cs.cycles.size() == 1);
    CHECK(cs.cycles[0].length == 1);
}

TEST_CASE("multiplier attachment accepts member-edge keys and rejects bad maps") {
    EdgeCycleSet cs = edge_cycles(testing::tetra_pairing());
    MultiplierFunction m =
        attach_multipliers(cs, {{"AB", -1}, {"BC", 1}, {"CD", 1}});
    CHECK(m.by_representative.at("AB") == -1);
    CHECK(m.by_representative.at("AC") == 1);  // keyed by representative
    CHECK(m.of_cycle(cs, "BD") == 1);

    CHECK_THROWS_WITH_AS(attach_multipliers(cs, {{"AB", -1}, {"BC", 1}}),
                         doctest::Contains("incomplete multiplier map"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(attach_multipliers(cs, {{"AB", 0}, {"BC", 1}, {"CD", 1}}),
                         doctest::Contains("zero multiplier"), std::invalid_argument);
    CHECK_THROWS_AS(attach_multipliers(cs, {{"AB", 1}, {"BC", 1}, {"BD", 2}, {"CD", 1}}),
                    std::invalid_argument);
}

TEST_CASE("cycles partition the edges and are closed under the alignment maps") {
    Rng rng(2024);
    for (int i = 0; i < 60; ++i) {
        FacePairing p = random_paired_ball(rng, 8, 6);
        EdgeCycleSet cs = edge_cycles(p);
        size_t total = 0;
        for (const auto& cy : cs.cycles) total += cy.length;
        CHECK(total == p.base.edges.size());
        CHECK(cs.cycle_of_edge.size() == p.base.edges.size());

        // Closure: every alignment image of every edge stays in its cycle,
        // and applying the alignment twice is the identity on slots.
        PairingTables t(p.base, p.pairing);
        for (int f = 0; f < static_cast<int>(p.base.faces.size()); ++f) {
            const auto& b = p.base.faces[f].boundary;
            for (int s = 0; s < static_cast<int>(b.size()); ++s) {
                int g = t.partner_face(f);
                int j = t.partner_slot(f, s);
                CHECK(t.partner_slot(g, j) == s);
                const std::string& e1 = b[s].edge;
                const std::string& e2 = p.base.faces[g].boundary[j].edge;
                CHECK(cs.cycle_of_edge.at(e1) == cs.cycle_of_edge.at(e2));
            }
        }

        // Determinism: recomputing gives the same cycles.
        EdgeCycleSet cs2 = edge_cycles(p);
        REQUIRE(cs2.cycles.size() == cs.cycles.size());
        for (size_t k = 0; k < cs.cycles.size(); ++k) {
            CHECK(cs2.cycles[k].representative == cs.cycles[k].representative);
            CHECK(cs2.cycles[k].length == cs.cycles[k].length);
        }
    }
}
