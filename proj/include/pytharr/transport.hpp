// ============================================================================
//  pytharr/transport.hpp
//
//  Equivalent representations of a Pythagorean arrangement: a Triple bundles
//  a point configuration with a gain graph, gains move between parallel edges
//  along their pair equation, parallelism is canonicalized into graph
//  structure, circuits are realized as circles, and arrangements are re-rooted
//  onto trees.  Every transport yields an equivalent triple: the multiset of
//  hyperplanes, each taken as a point set, is unchanged.
// ============================================================================
#ifndef PYTHARR_TRANSPORT_HPP
#define PYTHARR_TRANSPORT_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pytharr/arrangement.hpp"
#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"
#include "pytharr/gaingraph.hpp"
#include "pytharr/genericity.hpp"
#include "pytharr/matroid.hpp"
#include "pytharr/pointconfig.hpp"

namespace pytharr {

// ---------------------------------------------------------------------------
// Triples.
// ---------------------------------------------------------------------------

// A point configuration together with a gain graph whose vertices all carry
// points.  The configuration may hold extra points (combined triples do).
struct Triple {
    Configuration configuration;
    GainGraph graph;

    Triple(Configuration q, GainGraph g)
        : configuration(std::move(q)), graph(std::move(g)) {
        for (const Edge& e : graph.edges()) {
            configuration.point(e.tail); // throws MissingPoint
            configuration.point(e.head);
        }
    }
};

// ---------------------------------------------------------------------------
// Parallelism.
// ---------------------------------------------------------------------------

// the scalar c with  to = c * from;  throws NotParallel when none exists
inline Rational parallel_ratio(const Vector& from, const Vector& to) {
    if (from.size() != to.size())
        throw DimensionMismatch("parallel_ratio: " + std::to_string(from.size()) + " vs " +
                                std::to_string(to.size()));
    if (is_zero_vector(from) || is_zero_vector(to))
        throw NotParallel("parallel_ratio of a zero vector");
    Rational c;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (from[i] != 0) {
            c = to[i] / from[i];
            break;
        }
    }
    if (c == 0 || compare_vectors(scale(c, from), to) != 0)
        throw NotParallel("directions are not parallel");
    return c;
}

// the primitive integer vector positively parallel to v, sign fixed so the
// first nonzero entry is positive
inline Vector primitive_direction(const Vector& v) {
    if (is_zero_vector(v)) throw Error("primitive direction of the zero vector");
    mpz_class lcm_den = 1, gcd_num = 0;
    for (const Rational& r : v) {
        Rational c = r;
        c.canonicalize();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Vector out = scale(Rational(lcm_den), v);
    for (const Rational& r : out) {
        Rational c = r;
        c.canonicalize();
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num().get_mpz_t());
    }
    out = scale(Rational(1) / Rational(gcd_num), out);
    for (const Rational& r : out) {
        if (r != 0) {
            if (r < 0) out = scale(Rational(-1), out);
            break;
        }
    }
    for (Rational& r : out) r.canonicalize();
    return out;
}

// ---------------------------------------------------------------------------
// Moving a gain along a parallel pair.
// ---------------------------------------------------------------------------

// The unique gain g' on e' whose hyperplane is the same point set as e's
// hyperplane under gain `gain`: with direction(e') = c * direction(e),
// g' + shift(e') = c * (gain + shift(e)).
inline Rational transported_gain(const Triple& combined, const EdgeId& e, const EdgeId& eprime,
                                 const Rational& gain) {
    const Configuration& q = combined.configuration;
    const GainGraph& g = combined.graph;
    Rational c = parallel_ratio(direction(q, g, e), direction(q, g, eprime));
    return c * (gain + norm_shift(q, g, e)) - norm_shift(q, g, eprime);
}

// ---------------------------------------------------------------------------
// Equivalence: equality of hyperplane multisets.
// ---------------------------------------------------------------------------

inline bool are_equivalent(const Triple& t1, const Triple& t2) {
    if (t1.configuration.dimension() != t2.configuration.dimension())
        throw DimensionMismatch("equivalence across dimensions " +
                                std::to_string(t1.configuration.dimension()) + " and " +
                                std::to_string(t2.configuration.dimension()));
    auto keys = [](const Triple& t) {
        std::multiset<std::vector<Rational>> out;
        Arrangement arr = build_arrangement(t.configuration, t.graph);
        for (const Hyperplane& h : arr.hyperplanes()) out.insert(canonical_hyperplane_key(h));
        return out;
    };
    return keys(t1) == keys(t2);
}

// ---------------------------------------------------------------------------
// Canonicalizing parallelism into graph structure.
// ---------------------------------------------------------------------------

// An equivalent star-shaped triple in which hyperplane-parallel edges are
// graph-parallel: one hub vertex "0" at the origin, one tip per direction
// class at its primitive direction, every edge rerouted hub -> tip with its
// gain transported.  Idempotent; in dimension one the configuration is {0, 1}.
inline Triple parallelism_canonicalization(const Triple& t) {
    const Configuration& q = t.configuration;
    const GainGraph& g = t.graph;
    std::size_t d = q.dimension();

    std::vector<Vector> class_dirs; // primitive, in order of first appearance
    std::map<EdgeId, std::size_t> class_of;
    for (const Edge& e : g.edges()) {
        Vector u = primitive_direction(direction(q, g, e.id));
        std::size_t at = class_dirs.size();
        for (std::size_t i = 0; i < class_dirs.size(); ++i) {
            if (compare_vectors(class_dirs[i], u) == 0) {
                at = i;
                break;
            }
        }
        if (at == class_dirs.size()) class_dirs.push_back(std::move(u));
        class_of[e.id] = at;
    }

    std::map<VertexId, Vector> pts;
    pts["0"] = Vector(d, Rational(0));
    for (std::size_t i = 0; i < class_dirs.size(); ++i)
        pts[std::to_string(i + 1)] = class_dirs[i];

    std::vector<Edge> edges;
    std::map<EdgeId, Rational> gains;
    for (const Edge& e : g.edges()) {
        const Vector& u = class_dirs[class_of[e.id]];
        edges.push_back({e.id, "0", std::to_string(class_of[e.id] + 1)});
        Rational r = parallel_ratio(direction(q, g, e.id), u);
        gains[e.id] = r * (g.gain(e.id) + norm_shift(q, g, e.id)) - dot(u, u);
    }
    return Triple(Configuration(d, std::move(pts)), GainGraph(std::move(edges), std::move(gains)));
}

// ---------------------------------------------------------------------------
// Point placement helpers.
// ---------------------------------------------------------------------------

namespace detail {

inline bool point_taken(const std::map<VertexId, Vector>& pts, const Vector& p) {
    for (const auto& [v, x] : pts)
        if (compare_vectors(x, p) == 0) return true;
    return false;
}

// a name prefix that collides with no existing vertex name
inline std::string fresh_prefix(const std::set<VertexId>& taken, std::string seed) {
    auto collides = [&](const std::string& pre) {
        for (const VertexId& v : taken)
            if (v.compare(0, pre.size(), pre) == 0) return true;
        return false;
    };
    while (collides(seed)) seed += seed.back();
    return seed;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Realizing a circuit of the matroid at infinity as a circle of the graph.
// ---------------------------------------------------------------------------

// An equivalent triple with the same matroid at infinity in which the edges
// of x form a circle: the circuit's unique dependence closes a walk of new
// vertices, and gains are transported onto the moved edges.  A circuit whose
// edges already form a circle is returned unchanged.
inline Triple realize_circuit_as_circle(const Triple& t, const Circuit& x) {
    const Configuration& q = t.configuration;
    const GainGraph& g = t.graph;
    VectorMatroid m = matroid_at_infinity(q, g);
    if (!is_circuit(m, x)) {
        std::string s;
        for (const ElementId& e : x) s += (s.empty() ? "" : ", ") + e;
        throw NotACircuit("edge set {" + s + "} is not a circuit of the matroid at infinity");
    }

    EdgeSet xs(x.begin(), x.end());
    for (const Circle& c : all_circles_within(g, xs))
        if (c.edge_set() == xs) return t; // already a circle

    // the dependence among the circuit's directions, read off its equation
    std::map<EdgeId, Rational> lambda = forbidden_hyperplane(q, g, x).coefficients();
    std::vector<EdgeId> order;
    for (const Edge& e : g.edges())
        if (xs.count(e.id)) order.push_back(e.id);

    // walk: p_i = p_{i-1} + lambda_e * direction(e); the signed steps sum to
    // zero, and no proper run of them vanishes (the circuit is minimal), so
    // the walk closes through distinct points
    std::vector<Vector> walk{Vector(q.dimension(), Rational(0))};
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        walk.push_back(add(walk.back(), scale(lambda.at(order[i]), direction(q, g, order[i]))));

    // translate the new points clear of the existing ones
    Vector shift(q.dimension(), Rational(0));
    for (long c = 0;; ++c) {
        shift[0] = c;
        bool clear = true;
        for (const Vector& p : walk)
            if (detail::point_taken(q.points(), add(p, shift))) clear = false;
        if (clear) break;
    }

    std::set<VertexId> taken;
    for (const auto& [v, p] : q.points()) taken.insert(v);
    std::string prefix = detail::fresh_prefix(taken, "w");

    std::map<VertexId, Vector> pts = q.points();
    std::vector<VertexId> ring;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        VertexId v = prefix + std::to_string(i);
        pts[v] = add(walk[i], shift);
        ring.push_back(v);
    }

    std::vector<Edge> edges;
    std::map<EdgeId, Rational> gains = g.gains();
    Configuration extended(q.dimension(), pts);
    for (const Edge& e : g.edges()) {
        if (!xs.count(e.id)) {
            edges.push_back(e);
            continue;
        }
        std::size_t i = std::find(order.begin(), order.end(), e.id) - order.begin();
        Edge moved{e.id, ring[i], ring[(i + 1) % ring.size()]};
        Vector nd = subtract(extended.point(moved.head), extended.point(moved.tail));
        Rational r = parallel_ratio(direction(q, g, e.id), nd);
        Rational k_new = dot(extended.point(moved.head), extended.point(moved.head)) -
                         dot(extended.point(moved.tail), extended.point(moved.tail));
        gains[e.id] = r * (g.gain(e.id) + norm_shift(q, g, e.id)) - k_new;
        edges.push_back(moved);
    }
    return Triple(std::move(extended), GainGraph(std::move(edges), std::move(gains)));
}

// ---------------------------------------------------------------------------
// Re-rooting an arrangement onto a tree.
// ---------------------------------------------------------------------------

// An equivalent triple whose graph is the given tree: each tree edge takes
// the direction of its corresponding original edge (scaled by a positive
// integer chosen so reference points stay distinct) and its transported gain.
// When the tree is the original graph under the identity correspondence, the
// original triple comes back unchanged.
inline Triple tree_representation(const Triple& t, const std::vector<Edge>& tree,
                                  const std::map<EdgeId, EdgeId>& edge_to_original) {
    const Configuration& q = t.configuration;
    const GainGraph& g = t.graph;

    if (tree.size() != g.edges().size())
        throw ImpossibleCorrespondence("tree has " + std::to_string(tree.size()) +
                                       " edges, the graph has " +
                                       std::to_string(g.edges().size()));
    std::set<EdgeId> tree_ids;
    std::set<VertexId> tree_verts;
    for (const Edge& e : tree) {
        if (!tree_ids.insert(e.id).second)
            throw ImpossibleCorrespondence("duplicate tree edge id \"" + e.id + "\"");
        if (e.tail == e.head)
            throw ImpossibleCorrespondence("tree edge \"" + e.id + "\" is a loop");
        tree_verts.insert(e.tail);
        tree_verts.insert(e.head);
    }
    std::set<EdgeId> mapped;
    for (const auto& [te, oe] : edge_to_original) {
        if (!tree_ids.count(te))
            throw ImpossibleCorrespondence("correspondence names unknown tree edge \"" + te + "\"");
        if (!g.has_edge(oe))
            throw ImpossibleCorrespondence("correspondence names unknown edge \"" + oe + "\"");
        if (!mapped.insert(oe).second)
            throw ImpossibleCorrespondence("edge \"" + oe + "\" matched twice");
    }
    if (edge_to_original.size() != tree.size())
        throw ImpossibleCorrespondence("correspondence covers " +
                                       std::to_string(edge_to_original.size()) + " of " +
                                       std::to_string(tree.size()) + " tree edges");
    if (!tree.empty() && tree_verts.size() != tree.size() + 1)
        throw ImpossibleCorrespondence("shape is not a tree: " + std::to_string(tree.size()) +
                                       " edges on " + std::to_string(tree_verts.size()) +
                                       " vertices");

    if (tree.empty())
        return Triple(Configuration(q.dimension(), {{"0", Vector(q.dimension(), Rational(0))}}),
                      GainGraph({}, {}));

    std::map<VertexId, std::vector<const Edge*>> adjacent;
    for (const Edge& e : tree) {
        adjacent[e.tail].push_back(&e);
        adjacent[e.head].push_back(&e);
    }

    // breadth-first placement from the lexicographically least vertex, seeded
    // at its original point when the configuration knows it
    const VertexId& root = *tree_verts.begin();
    std::map<VertexId, Vector> pts;
    pts[root] = q.has_point(root) ? q.point(root) : Vector(q.dimension(), Rational(0));
    std::vector<VertexId> frontier{root};
    while (!frontier.empty()) {
        std::vector<VertexId> next;
        for (const VertexId& v : frontier) {
            for (const Edge* e : adjacent[v]) {
                VertexId other = (e->tail == v) ? e->head : e->tail;
                if (pts.count(other)) continue;
                Vector d = direction(q, g, edge_to_original.at(e->id));
                if (e->head == other) d = scale(Rational(-1), d); // place the head
                // other = v - c*d if other is the tail, v + c*d if the head
                for (long c = 1;; ++c) {
                    Vector cand = subtract(pts[v], scale(Rational(c), d));
                    if (!detail::point_taken(pts, cand)) {
                        pts[other] = std::move(cand);
                        break;
                    }
                }
                next.push_back(other);
            }
        }
        frontier = std::move(next);
    }
    if (pts.size() != tree_verts.size())
        throw ImpossibleCorrespondence("shape is not a tree: not connected");

    Configuration placed(q.dimension(), pts);
    std::map<EdgeId, Rational> gains;
    for (const Edge& e : tree) {
        const EdgeId& oe = edge_to_original.at(e.id);
        Vector nd = subtract(placed.point(e.head), placed.point(e.tail));
        Rational r = parallel_ratio(direction(q, g, oe), nd);
        Rational k_new = dot(placed.point(e.head), placed.point(e.head)) -
                         dot(placed.point(e.tail), placed.point(e.tail));
        gains[e.id] = r * (g.gain(oe) + norm_shift(q, g, oe)) - k_new;
    }
    return Triple(std::move(placed), GainGraph(tree, std::move(gains)));
}

} // namespace pytharr

#endif // PYTHARR_TRANSPORT_HPP
