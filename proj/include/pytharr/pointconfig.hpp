// ============================================================================
//  pytharr/pointconfig.hpp
//
//  Rational point configurations indexed by graph vertices, edge directions,
//  and the matroid at infinity they induce.  Also the two genericity notions
//  on the points themselves (affine position, ideal position) and the
//  affinographic configuration of a graph.
// ============================================================================
#ifndef PYTHARR_POINTCONFIG_HPP
#define PYTHARR_POINTCONFIG_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"
#include "pytharr/gaingraph.hpp"
#include "pytharr/matroid.hpp"

namespace pytharr {

class Configuration {
public:
    Configuration(std::size_t dimension, std::map<VertexId, Vector> points)
        : dim_(dimension), points_(std::move(points)) {
        for (const auto& [v, p] : points_) {
            if (p.size() != dim_)
                throw DimensionMismatch("point \"" + v + "\" has " + std::to_string(p.size()) +
                                        " coordinates, expected " + std::to_string(dim_));
        }
        // points must be pairwise distinct
        for (auto it = points_.begin(); it != points_.end(); ++it) {
            for (auto jt = std::next(it); jt != points_.end(); ++jt) {
                if (compare_vectors(it->second, jt->second) == 0)
                    throw DuplicatePoint("vertices \"" + it->first + "\" and \"" + jt->first +
                                         "\" share the same point");
            }
        }
    }

    std::size_t dimension() const { return dim_; }
    const std::map<VertexId, Vector>& points() const { return points_; }

    bool has_point(const VertexId& v) const { return points_.count(v) != 0; }

    const Vector& point(const VertexId& v) const {
        auto it = points_.find(v);
        if (it == points_.end()) throw MissingPoint("no point for vertex \"" + v + "\"");
        return it->second;
    }

private:
    std::size_t dim_;
    std::map<VertexId, Vector> points_;
};

// ---------------------------------------------------------------------------
// Edge directions and the matroid at infinity.
// ---------------------------------------------------------------------------

// direction of an edge e = (u, v): the vector q_v - q_u
inline Vector direction(const Configuration& q, const GainGraph& g, const EdgeId& e) {
    const Edge& ed = g.edge(e); // throws UnknownEdge
    return subtract(q.point(ed.head), q.point(ed.tail));
}

inline VectorMatroid matroid_at_infinity(const Configuration& q, const GainGraph& g) {
    std::vector<ElementId> ground;
    std::map<ElementId, Vector> vectors;
    for (const Edge& e : g.edges()) {
        ground.push_back(e.id);
        vectors[e.id] = direction(q, g, e.id);
    }
    return VectorMatroid(std::move(ground), std::move(vectors));
}

// ---------------------------------------------------------------------------
// Position predicates on the points themselves.
// ---------------------------------------------------------------------------

// affine rank of a list of points = rank of the differences from the first
inline std::size_t affine_rank(const std::vector<Vector>& pts) {
    if (pts.empty()) return 0;
    Matrix m(pts.front().size());
    for (std::size_t i = 1; i < pts.size(); ++i) m.append_row(subtract(pts[i], pts.front()));
    return rank(m) + 1;
}

// affine (general) position: every subset of at most d+1 of the selected
// points is affinely independent
inline bool is_affine_position(const Configuration& q, const std::set<VertexId>& vertices) {
    std::vector<Vector> pts;
    for (const VertexId& v : vertices) pts.push_back(q.point(v));
    std::size_t n = pts.size();
    std::size_t limit = std::min(n, q.dimension() + 1);
    // every k-subset with k <= d+1 affinely independent; it suffices to test
    // k = limit, but small configurations are cheap so test all sizes.
    std::vector<std::size_t> idx;
    auto rec = [&](auto&& self, std::size_t start, std::size_t k) -> bool {
        if (idx.size() == k) {
            std::vector<Vector> sel;
            for (std::size_t i : idx) sel.push_back(pts[i]);
            return affine_rank(sel) == k;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx.push_back(i);
            bool ok = self(self, i + 1, k);
            idx.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    for (std::size_t k = 2; k <= limit; ++k)
        if (!rec(rec, 0, k)) return false;
    return true;
}

inline bool is_affine_position(const Configuration& q) {
    std::set<VertexId> all;
    for (const auto& [v, p] : q.points()) all.insert(v);
    return is_affine_position(q, all);
}

// ideal (generic at infinity) position: at least d+1 points, and every
// d-edge forest on the complete graph over the points has linearly
// independent directions
inline bool is_ideal_position(const Configuration& q) {
    std::size_t d = q.dimension();
    std::vector<Vector> pts;
    for (const auto& [v, p] : q.points()) pts.push_back(p);
    std::size_t n = pts.size();
    if (n < d + 1) return false;
    // enumerate all d-subsets of the edges of K_n, keep forests, test rank
    std::vector<std::pair<std::size_t, std::size_t>> all_edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    std::vector<std::size_t> idx;
    auto is_forest = [&]() {
        std::vector<std::size_t> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i : idx) {
            std::size_t a = find(all_edges[i].first), b = find(all_edges[i].second);
            if (a == b) return false;
            parent[a] = b;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        if (idx.size() == d) {
            if (!is_forest()) return true; // only forests constrain
            Matrix m(d);
            for (std::size_t i : idx)
                m.append_row(subtract(pts[all_edges[i].second], pts[all_edges[i].first]));
            return rank(m) == d;
        }
        for (std::size_t i = start; i < all_edges.size(); ++i) {
            idx.push_back(i);
            bool ok = self(self, i + 1);
            idx.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return rec(rec, 0);
}

// ---------------------------------------------------------------------------
// The affinographic configuration of a graph: one coordinate per vertex,
// q_v = (1/2) * indicator(v), so each edge direction is a difference of
// standard basis vectors scaled by 1/2.
// ---------------------------------------------------------------------------

inline Configuration affinographic_configuration(const GainGraph& g) {
    std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
    std::sort(verts.begin(), verts.end());
    std::map<VertexId, Vector> pts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        Vector p(verts.size(), Rational(0));
        p[i] = frac(1, 2);
        pts[verts[i]] = std::move(p);
    }
    return Configuration(verts.size(), std::move(pts));
}

} // namespace pytharr

#endif // PYTHARR_POINTCONFIG_HPP
