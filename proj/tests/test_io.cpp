#include <doctest.h>

#include <sstream>

#include "polyoracle/datagen.hpp"
#include "polyoracle/io.hpp"
#include "test_util.hpp"

using namespace polyoracle;
using test_util::vec2;

TEST_CASE("polytope file round trip") {
    const auto P = test_util::bounded_random(4, 20, 55);
    std::ostringstream first;
    write_polytope(first, P, {"seed=55", "note"});
    CHECK(first.str().rfind("# seed=55\n# note\n4 20\n", 0) == 0);

    std::istringstream in(first.str());
    const auto Q = read_polytope(in);
    CHECK(Q.dim() == P.dim());
    CHECK(Q.num_facets() == P.num_facets());
    CHECK(Q.A() == P.A());  // shortest round-trip formatting is exact
    CHECK(Q.b() == P.b());

    std::ostringstream second;
    write_polytope(second, Q, {"seed=55", "note"});
    CHECK(first.str() == second.str());
}

TEST_CASE("polytope parser rejects malformed input") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_polytope(in);
    };
    CHECK_THROWS_AS(parse(""), IoError);
    CHECK_THROWS_AS(parse("# only comments\n"), IoError);
    CHECK_THROWS_AS(parse("2\n1 0 1\n"), IoError);                 // bad header
    CHECK_THROWS_AS(parse("2 2\n1 0 1\n"), IoError);               // missing row
    CHECK_THROWS_AS(parse("2 1\n1 0\n"), IoError);                 // short row
    CHECK_THROWS_AS(parse("2 1\n1 zero 1\n"), IoError);            // non-numeric
    CHECK_THROWS_AS(parse("0 1\n\n"), IoError);                    // nonpositive dims
    CHECK_THROWS_AS(parse("2 1\n0 0 1\n"), std::invalid_argument); // zero normal row
}

TEST_CASE("point and ray files") {
    std::ostringstream out;
    write_points(out, std::vector<VectorX<double>>{vec2(0.1, -2), vec2(3, 4)}, {"pts"});
    std::istringstream in(out.str());
    const auto pts = read_points(in);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == vec2(0.1, -2));
    CHECK(pts[1] == vec2(3, 4));

    std::istringstream ray_in("# a ray\n0 0 2 1\n");
    const auto rays = read_rays(ray_in);
    REQUIRE(rays.size() == 1);
    CHECK(rays[0].s == vec2(0, 0));
    CHECK(rays[0].dir.isApprox(vec2(2, 1).normalized()));

    std::istringstream bad("1 2 3\n");
    CHECK_THROWS_AS(read_rays(bad), IoError);

    std::istringstream ragged("1 2\n1 2 3\n");
    CHECK_THROWS_AS(read_points(ragged), IoError);
}
