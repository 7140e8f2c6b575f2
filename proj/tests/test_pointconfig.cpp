// Point configurations: directions, position predicates, matroid at infinity.
#include <doctest.h>

#include "pytharr/pointconfig.hpp"

using namespace pytharr;

namespace {

// the running 4-point, 5-edge instance: two parallel segments among a..t
Configuration running_config() {
    return Configuration(2, {{"1", {Rational(0), Rational(0)}},
                             {"2", {Rational(4), Rational(0)}},
                             {"3", {Rational(3), Rational(2)}},
                             {"4", {Rational(1), Rational(2)}}});
}

GainGraph running_graph() {
    return GainGraph({{"a", "1", "2"}, {"b", "1", "3"}, {"c", "1", "4"},
                      {"s", "2", "3"}, {"t", "3", "4"}},
                     {{"a", Rational(-6)}, {"b", Rational(0)}, {"c", Rational(2)},
                      {"s", Rational(2)}, {"t", Rational(6)}});
}

} // namespace

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(running_config());
    CHECK_THROWS_AS(Configuration(2, {{"u", {Rational(1), Rational(2)}},
                                      {"v", {Rational(1), Rational(2)}}}),
                    DuplicatePoint);
    CHECK_THROWS_AS(Configuration(2, {{"u", {Rational(1)}}}), DimensionMismatch);
    Configuration c = running_config();
    CHECK(c.dimension() == 2);
    CHECK(c.has_point("1"));
    CHECK_FALSE(c.has_point("9"));
    CHECK_THROWS_AS(c.point("9"), MissingPoint);
}

TEST_CASE("edge directions") {
    Configuration c = running_config();
    GainGraph g = running_graph();
    CHECK(direction(c, g, "a") == Vector{Rational(4), Rational(0)});
    CHECK(direction(c, g, "t") == Vector{Rational(-2), Rational(0)});
    CHECK(direction(c, g, "s") == Vector{Rational(-1), Rational(2)});
    CHECK_THROWS_AS(direction(c, g, "zz"), UnknownEdge);

    // reversing an edge negates its direction
    GainGraph rev({{"t", "4", "3"}}, {{"t", Rational(6)}});
    CHECK(direction(c, rev, "t") == Vector{Rational(2), Rational(0)});

    // a vertex without a point is an error
    Configuration partial(2, {{"1", {Rational(0), Rational(0)}},
                              {"2", {Rational(4), Rational(0)}},
                              {"3", {Rational(3), Rational(2)}}});
    CHECK_THROWS_AS(direction(partial, g, "c"), MissingPoint);
}

TEST_CASE("matroid at infinity of the running instance") {
    VectorMatroid m = matroid_at_infinity(running_config(), running_graph());
    CHECK(m.rank() == 2);
    CHECK(m.rank(ElementSet{"a", "t"}) == 1); // parallel directions
    std::vector<Circuit> cs = circuits(m);
    std::set<Circuit> expected = {
        {"a", "t"},           {"a", "b", "c"}, {"a", "b", "s"}, {"a", "c", "s"},
        {"b", "c", "s"},      {"b", "c", "t"}, {"b", "s", "t"}, {"c", "s", "t"}};
    CHECK(std::set<Circuit>(cs.begin(), cs.end()) == expected);
}

TEST_CASE("matroid at infinity is orientation invariant") {
    Configuration c = running_config();
    GainGraph flipped({{"a", "2", "1"}, {"b", "1", "3"}, {"c", "4", "1"},
                       {"s", "2", "3"}, {"t", "4", "3"}},
                      {{"a", Rational(6)}, {"b", Rational(0)}, {"c", Rational(-2)},
                       {"s", Rational(2)}, {"t", Rational(-6)}});
    std::vector<Circuit> c1 = circuits(matroid_at_infinity(c, running_graph()));
    std::vector<Circuit> c2 = circuits(matroid_at_infinity(c, flipped));
    CHECK(c1 == c2);
}

TEST_CASE("affine position") {
    Configuration tri(2, {{"u", {Rational(0), Rational(0)}},
                          {"v", {Rational(1), Rational(0)}},
                          {"w", {Rational(0), Rational(1)}}});
    CHECK(is_affine_position(tri));

    Configuration collinear(2, {{"u", {Rational(0), Rational(0)}},
                                {"v", {Rational(1), Rational(1)}},
                                {"w", {Rational(3), Rational(3)}}});
    CHECK_FALSE(is_affine_position(collinear));
    // a 2-point subset of the collinear triple is still fine
    CHECK(is_affine_position(collinear, {"u", "v"}));

    CHECK(is_affine_position(running_config()));
}

TEST_CASE("ideal position") {
    // fewer than d+1 points can never be in ideal position
    Configuration two(2, {{"u", {Rational(0), Rational(0)}},
                          {"v", {Rational(1), Rational(0)}}});
    CHECK_FALSE(is_ideal_position(two));

    // the unit square is in affine but not ideal position (opposite sides
    // are parallel)
    Configuration square(2, {{"p", {Rational(0), Rational(0)}},
                             {"q", {Rational(1), Rational(0)}},
                             {"r", {Rational(0), Rational(1)}},
                             {"s", {Rational(1), Rational(1)}}});
    CHECK(is_affine_position(square));
    CHECK_FALSE(is_ideal_position(square));

    Configuration tri(2, {{"u", {Rational(0), Rational(0)}},
                          {"v", {Rational(4), Rational(0)}},
                          {"w", {Rational(3), Rational(2)}}});
    CHECK(is_ideal_position(tri));

    // the running instance has a parallelism, so it is not ideal either
    CHECK_FALSE(is_ideal_position(running_config()));
}

TEST_CASE("ideal equals affine position for d+1 points") {
    std::vector<Configuration> cases = {
        Configuration(2, {{"u", {Rational(0), Rational(0)}},
                          {"v", {Rational(4), Rational(0)}},
                          {"w", {Rational(3), Rational(2)}}}),
        Configuration(2, {{"u", {Rational(0), Rational(0)}},
                          {"v", {Rational(1), Rational(1)}},
                          {"w", {Rational(3), Rational(3)}}}),
        Configuration(1, {{"u", {Rational(0)}}, {"v", {Rational(7)}}}),
        Configuration(3, {{"u", {Rational(0), Rational(0), Rational(0)}},
                          {"v", {Rational(1), Rational(0), Rational(0)}},
                          {"w", {Rational(0), Rational(1), Rational(0)}},
                          {"x", {Rational(1), Rational(1), Rational(0)}}})};
    for (const Configuration& c : cases) {
        REQUIRE(c.points().size() == c.dimension() + 1);
        std::vector<Vector> pts;
        for (const auto& [v, p] : c.points()) pts.push_back(p);
        bool spans = affine_rank(pts) == c.dimension() + 1;
        CHECK(is_ideal_position(c) == is_affine_position(c));
        CHECK(is_ideal_position(c) == spans);
    }
}

TEST_CASE("affinographic configuration") {
    GainGraph pair({{"e", "u", "v"}}, {{"e", Rational(5)}});
    Configuration c = affinographic_configuration(pair);
    CHECK(c.dimension() == 2);
    CHECK(c.point("u") == Vector{frac(1, 2), Rational(0)});
    CHECK(c.point("v") == Vector{Rational(0), frac(1, 2)});

    // direction = ½(indicator(v) − indicator(u)); doubling gives the
    // indicator difference itself
    Vector dir = direction(c, pair, "e");
    CHECK(scale(Rational(2), dir) == Vector{Rational(-1), Rational(1)});

    // on a triangle, the matroid at infinity has the single circle as its
    // unique circuit
    GainGraph tri({{"x", "u", "v"}, {"y", "v", "w"}, {"z", "u", "w"}},
                  {{"x", Rational(1)}, {"y", Rational(2)}, {"z", Rational(3)}});
    VectorMatroid m = matroid_at_infinity(affinographic_configuration(tri), tri);
    std::vector<Circuit> cs = circuits(m);
    REQUIRE(cs.size() == 1);
    CHECK(cs.front() == Circuit{"x", "y", "z"});
}
