// ============================================================================
//  Gain graphs: walks, circles, balance, balance-closure, linear classes.
// ============================================================================
#include <doctest.h>

#include "pytharr/gaingraph.hpp"

using namespace pytharr;

namespace {

// The running 4-vertex, 5-edge theta-plus-chord graph: a:1->2, b:1->3,
// c:1->4, s:2->3, t:3->4, with the gain-generic gains (-6,0,2,2,6).
GainGraph running_graph() {
    std::vector<Edge> edges = {
        {"a", "1", "2"}, {"b", "1", "3"}, {"c", "1", "4"}, {"s", "2", "3"}, {"t", "3", "4"},
    };
    std::map<EdgeId, Rational> gains = {
        {"a", -6}, {"b", 0}, {"c", 2}, {"s", 2}, {"t", 6},
    };
    return GainGraph(std::move(edges), std::move(gains));
}

Circle circle_of(const GainGraph& g, std::initializer_list<const char*> ids) {
    EdgeSet s;
    for (const char* e : ids) s.insert(e);
    return circle_from_edges(g, s);
}

} // namespace

TEST_CASE("construction rejects loops, duplicate ids, missing gains") {
    CHECK_THROWS_AS(GainGraph({{"e", "v", "v"}}, {{"e", 0}}), InvalidEdge);
    CHECK_THROWS_AS(GainGraph({{"e", "u", "v"}, {"e", "v", "w"}}, {{"e", 0}}), InvalidEdge);
    CHECK_THROWS_AS(GainGraph({{"e", "u", "v"}}, {}), InvalidEdge);
    CHECK_THROWS_AS(GainGraph({{"e", "u", "v"}}, {{"e", 0}, {"f", 1}}), InvalidEdge);
    // parallel edges are fine
    CHECK_NOTHROW(GainGraph({{"e", "u", "v"}, {"f", "u", "v"}}, {{"e", 0}, {"f", 1}}));
}

TEST_CASE("walk_gain") {
    GainGraph g = running_graph();

    CHECK(walk_gain(g, {}) == 0);

    // circle astc traversed 1 -> 2 -> 3 -> 4 -> 1: -6 + 2 + 6 - 2 = 0
    Walk astc = {{"a", true}, {"s", true}, {"t", true}, {"c", false}};
    CHECK(walk_gain(g, astc) == 0);

    // reversal negates
    Walk fwd = {{"a", true}, {"s", true}};
    Walk rev = {{"s", false}, {"a", false}};
    CHECK(walk_gain(g, fwd) == -walk_gain(g, rev));

    // concatenation adds
    Walk whole = {{"a", true}, {"s", true}, {"t", true}};
    Walk part1 = {{"a", true}};
    Walk part2 = {{"s", true}, {"t", true}};
    CHECK(walk_gain(g, whole) == walk_gain(g, part1) + walk_gain(g, part2));

    // a then t is not a walk: head(a)=2, tail(t)=3
    CHECK_THROWS_AS(walk_gain(g, {{"a", true}, {"t", true}}), InvalidWalk);
}

TEST_CASE("all_circles on the running graph finds abs, bct, astc") {
    GainGraph g = running_graph();
    std::set<Circle> cs = all_circles(g);
    REQUIRE(cs.size() == 3);
    CHECK(cs.count(circle_of(g, {"a", "b", "s"})));
    CHECK(cs.count(circle_of(g, {"b", "c", "t"})));
    CHECK(cs.count(circle_of(g, {"a", "s", "t", "c"})));
}

TEST_CASE("all_circles: tree has none, digon has one") {
    GainGraph tree({{"e", "u", "v"}, {"f", "v", "w"}}, {{"e", 1}, {"f", 2}});
    CHECK(all_circles(tree).empty());

    GainGraph digon({{"e", "u", "v"}, {"f", "u", "v"}}, {{"e", 1}, {"f", 2}});
    CHECK(all_circles(digon).size() == 1);
}

TEST_CASE("circle canonical form is independent of tracing") {
    GainGraph g = running_graph();
    // abs traced from different starting points and directions
    Circle c1(g, {{"a", true}, {"s", true}, {"b", false}});
    Circle c2(g, {{"s", true}, {"b", false}, {"a", true}});
    Circle c3(g, {{"b", true}, {"s", false}, {"a", false}});
    CHECK(c1 == c2);
    CHECK(c1 == c3);
}

TEST_CASE("circle validation") {
    GainGraph g = running_graph();
    // not closed
    CHECK_THROWS_AS(Circle(g, {{"a", true}, {"s", true}}), NotACircle);
    // too short
    CHECK_THROWS_AS(Circle(g, {{"a", true}}), NotACircle);
    // revisits a vertex: 1->2->3->1->4 cannot close into a circle walk
    CHECK_THROWS_AS(Circle(g, {{"a", true}, {"s", true}, {"b", false},
                               {"c", true},  {"t", false}, {"b", false}}),
                    NotACircle);
}

TEST_CASE("is_balanced") {
    GainGraph g = running_graph();
    // forests are balanced
    CHECK(is_balanced(g, {"a", "b", "c"}));
    CHECK(is_balanced(g, {}));
    // {a,s,t,c}: the only circle inside is astc with gain 0
    CHECK(is_balanced(g, {"a", "s", "t", "c"}));
    // {a,b,s}: circle gain -6 - 0 + 2 != 0
    CHECK(!is_balanced(g, {"a", "b", "s"}));
}

TEST_CASE("balance_closure") {
    // gains making abs balanced: a - b + s = 1 - 3 + 2 = 0
    GainGraph g({{"a", "1", "2"}, {"b", "1", "3"}, {"c", "1", "4"}, {"s", "2", "3"}, {"t", "3", "4"}},
                {{"a", 1}, {"b", 3}, {"c", 0}, {"s", 2}, {"t", 5}});

    CHECK(balance_closure(g, {}) == EdgeSet{});

    EdgeSet as = {"a", "s"};
    EdgeSet closed = balance_closure(g, as);
    CHECK(closed == EdgeSet{"a", "b", "s"});
    // idempotent on its result, preserves cycle-matroid rank, extensive
    CHECK(balance_closure(g, closed) == closed);
    CHECK(cycle_matroid_rank(g, as) == cycle_matroid_rank(g, closed));
    for (const EdgeId& e : as) CHECK(closed.count(e));

    // the running gains leave abs unbalanced
    CHECK_THROWS_AS(balance_closure(running_graph(), EdgeSet{"a", "b", "s"}),
                    UnbalancedInput);
}

TEST_CASE("balance_closure is isotone on nested balanced forests") {
    GainGraph g = running_graph();
    EdgeSet small = {"a"};
    EdgeSet large = {"a", "s"};
    EdgeSet cs = balance_closure(g, small);
    EdgeSet cl = balance_closure(g, large);
    for (const EdgeId& e : cs) CHECK(cl.count(e));
}

TEST_CASE("linear classes of circles in the theta graph") {
    GainGraph g = running_graph();
    Circle abs = circle_of(g, {"a", "b", "s"});
    Circle bct = circle_of(g, {"b", "c", "t"});
    Circle astc = circle_of(g, {"a", "s", "t", "c"});

    CHECK(is_linear_class_of_circles(g, {}));
    CHECK(is_linear_class_of_circles(g, {abs}));
    CHECK(is_linear_class_of_circles(g, {bct}));
    CHECK(is_linear_class_of_circles(g, {abs, bct, astc}));
    CHECK(!is_linear_class_of_circles(g, {abs, bct}));
    CHECK(!is_linear_class_of_circles(g, {abs, astc}));
    CHECK(is_linear_class_of_circles(g, all_circles(g)));
}

TEST_CASE("balanced circles always form a linear class") {
    GainGraph g = running_graph(); // astc balanced, abs/bct not
    std::set<Circle> balanced;
    for (const Circle& c : all_circles(g))
        if (is_balanced_circle(g, c)) balanced.insert(c);
    CHECK(balanced.size() == 1);
    CHECK(is_linear_class_of_circles(g, balanced));

    // and under fully balanced gains: a-b+s=0, b-c+t=0 -> all three balanced
    GainGraph g2 = g.with_gains({{"a", 1}, {"b", 3}, {"c", 7}, {"s", 2}, {"t", 4}});
    std::set<Circle> balanced2;
    for (const Circle& c : all_circles(g2))
        if (is_balanced_circle(g2, c)) balanced2.insert(c);
    CHECK(balanced2.size() == 3);
    CHECK(is_linear_class_of_circles(g2, balanced2));
}

TEST_CASE("three parallel edges: digon circles and theta closure") {
    GainGraph g({{"p", "u", "v"}, {"q", "u", "v"}, {"r", "u", "v"}},
                {{"p", 0}, {"q", 0}, {"r", 1}});
    std::set<Circle> cs = all_circles(g);
    CHECK(cs.size() == 3); // pq, pr, qr
    Circle pq = circle_from_edges(g, {"p", "q"});
    Circle pr = circle_from_edges(g, {"p", "r"});
    Circle qr = circle_from_edges(g, {"q", "r"});
    // {pq, pr} union is the whole theta; the third circle qr is forced
    CHECK(!is_linear_class_of_circles(g, {pq, pr}));
    CHECK(is_linear_class_of_circles(g, {pq, pr, qr}));
    CHECK(is_linear_class_of_circles(g, {pq}));
}
