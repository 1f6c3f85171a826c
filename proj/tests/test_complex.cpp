#include "doctest.h"

#include "bitwist/complex2.hpp"
#include "bitwist/generators.hpp"
#include "helpers.hpp"

using namespace bitwist;

TEST_CASE("tetrahedron boundary is a valid sphere") {
    Complex2 c = testing::tetra().ball;
    ValidationReport r = validate_sphere(c);
    CHECK(r.ok);
    CHECK(euler_characteristic(c) == 2);
}

TEST_CASE("minimal complex is rejected") {
    Complex2 c;
    c.vertices = {"v"};
    c.faces = {{"f", {}}};
    ValidationReport r = validate_sphere(c);
    REQUIRE_FALSE(r.ok);
    bool found = false;
    for (const auto& v : r.violations)
        if (v.find("forbidden minimal complex") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("torus-like complex fails the sphere condition") {
    Complex2 c;
    c.vertices = {"v"};
    c.edges = {{"a", "v", "v"}, {"b", "v", "v"}};
    c.faces = {{"f", {{"a", +1}, {"b", +1}, {"a", -1}, {"b", -1}}}};
    CHECK(validate_surface(c).ok);
    ValidationReport r = validate_sphere(c);
    REQUIRE_FALSE(r.ok);
    bool found = false;
    for (const auto& v : r.violations)
        if (v.find("Euler characteristic") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("incoherent orientation is caught") {
    Complex2 c = testing::double_monogon();
    c.faces[1].boundary[0].dir = +1;  // both sides traverse e the same way
    CHECK_FALSE(validate_surface(c).ok);
}

TEST_CASE("barycentric triangle counts are 2k per k-gon") {
    BarycentricBoundary s = barycentric_boundary(testing::tetra().ball);
    CHECK(s.triangles.size() == 24);
    for (const auto& per_face : s.by_face) CHECK(per_face.size() == 6);
    CHECK(validate_sphere(s.complex).ok);

    BarycentricBoundary m = barycentric_boundary(testing::double_monogon());
    CHECK(m.by_face[0].size() == 2);
    CHECK(m.by_face[1].size() == 2);
    CHECK(validate_sphere(m.complex).ok);
}

TEST_CASE("dual cap counts one cap per corner") {
    DualCapComplex d = dual_cap(barycentric_boundary(testing::tetra().ball));
    CHECK(d.caps.size() == 12);
    CHECK(validate_sphere(d.complex).ok);

    DualCapComplex m = dual_cap(barycentric_boundary(testing::double_monogon()));
    CHECK(m.caps.size() == 2);  // one per monogon
    CHECK(validate_sphere(m.complex).ok);

    // A pillowcase of two squares: four caps per face.
    Complex2 p;
    p.vertices = {"1", "2", "3", "4"};
    p.edges = {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "4", "1"}};
    p.faces = {{"F", {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}},
               {"G", {{"d", -1}, {"c", -1}, {"b", -1}, {"a", -1}}}};
    REQUIRE(validate_sphere(p).ok);
    DualCapComplex dp = dual_cap(barycentric_boundary(p));
    CHECK(dp.caps.size() == 8);
    CHECK(validate_sphere(dp.complex).ok);
}

TEST_CASE("dual complex of the tetrahedron boundary") {
    Complex2 c = testing::tetra().ball;
    Complex2 d = dual_complex(c);
    CHECK(d.vertices.size() == 4);
    CHECK(d.edges.size() == 6);
    CHECK(d.faces.size() == 4);
    CHECK(validate_sphere(d).ok);
    // Dual of the dual is cellularly the original.
    Complex2 dd = dual_complex(d);
    CHECK(cellular_isomorphism(dd, c, true).has_value());
}

TEST_CASE("isomorphism search finds symmetries and rejects non-isomorphic") {
    Complex2 c = testing::tetra().ball;
    CHECK(cellular_isomorphism(c, c, true).has_value());
    CHECK(cellular_isomorphism(c, c, false).has_value());  // a reflection exists
    CHECK_FALSE(cellular_isomorphism(c, testing::double_monogon(), true).has_value());
}

TEST_CASE("boundary cycles close on random valid complexes") {
    Rng rng(12345);
    for (int i = 0; i < 100; ++i) {
        FacePairing p = random_paired_ball(rng, 8, 6);
        // validate_sphere includes the chaining check; ok means every walk closes.
        CHECK(validate_sphere(p.base).ok);
    }
}

TEST_CASE("barycentric subdivision keeps the Euler characteristic") {
    Rng rng(777);
    for (int i = 0; i < 25; ++i) {
        FacePairing p = random_paired_ball(rng, 8, 6);
        BarycentricBoundary s = barycentric_boundary(p.base);
        CHECK(euler_characteristic(s.complex) == 2);
        DualCapComplex d = dual_cap(s);
        CHECK(euler_characteristic(d.complex) == 2);
        CHECK(validate_sphere(d.complex).ok);
    }
}
