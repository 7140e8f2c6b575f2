// ============================================================================
//  pytharr/gaingraph.hpp
//
//  Graphs with oriented-edge rational gains over the additive group (Q, +).
//  Each edge is stored with a preferred orientation; traversing an edge
//  against that orientation negates its gain.  Loops are rejected at
//  construction, parallel edges are welcome.
//
//  A circle is the (sub)graph traced by an internally non-repeating closed
//  walk.  We canonicalize each circle to the lexicographically least
//  rotation/reflection of its edge-id sequence so enumeration can
//  deduplicate, and keep the traversal directions so the balance sum is
//  reproducible.  Circle enumeration is a plain DFS over simple cycles --
//  quadratic blowups are irrelevant at the intended scale (<= ~12 edges).
// ============================================================================
#ifndef PYTHARR_GAINGRAPH_HPP
#define PYTHARR_GAINGRAPH_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"

namespace pytharr {

using VertexId = std::string;
using EdgeId = std::string;

struct Edge {
    EdgeId id;
    VertexId tail;
    VertexId head;
};

// One step of a walk: an edge plus the direction it is traversed in.
struct WalkStep {
    EdgeId edge;
    bool forward = true;

    friend bool operator==(const WalkStep& a, const WalkStep& b) {
        return a.edge == b.edge && a.forward == b.forward;
    }
    friend bool operator<(const WalkStep& a, const WalkStep& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.forward < b.forward;
    }
};

using Walk = std::vector<WalkStep>;
using EdgeSet = std::set<EdgeId>;

class GainGraph {
public:
    GainGraph() = default;

    GainGraph(std::vector<Edge> edges, std::map<EdgeId, Rational> gains)
        : edges_(std::move(edges)), gains_(std::move(gains)) {
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.tail == e.head)
                throw InvalidEdge("loop edge \"" + e.id + "\" at vertex \"" + e.tail + "\"");
            if (index_.count(e.id))
                throw InvalidEdge("duplicate edge id \"" + e.id + "\"");
            if (!gains_.count(e.id))
                throw InvalidEdge("edge \"" + e.id + "\" has no gain");
            index_[e.id] = i;
            vertices_.insert(e.tail);
            vertices_.insert(e.head);
        }
        if (gains_.size() != edges_.size())
            throw InvalidEdge("gain map mentions an unknown edge");
    }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::set<VertexId>& vertices() const { return vertices_; }

    bool has_edge(const EdgeId& id) const { return index_.count(id) != 0; }

    const Edge& edge(const EdgeId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw UnknownEdge("no edge \"" + id + "\"");
        return edges_[it->second];
    }

    // position of the edge in the global edge order (list order as built);
    // canonical signs and coefficient vectors are indexed by this.
    std::size_t edge_position(const EdgeId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw UnknownEdge("no edge \"" + id + "\"");
        return it->second;
    }

    // gain along the preferred orientation
    const Rational& gain(const EdgeId& id) const {
        auto it = gains_.find(id);
        if (it == gains_.end()) throw UnknownEdge("no edge \"" + id + "\"");
        return it->second;
    }

    // gain along a traversal direction: g(reversed e) = -g(e)
    Rational gain(const WalkStep& step) const {
        Rational g = gain(step.edge);
        return step.forward ? g : Rational(-g);
    }

    VertexId step_source(const WalkStep& s) const {
        const Edge& e = edge(s.edge);
        return s.forward ? e.tail : e.head;
    }
    VertexId step_target(const WalkStep& s) const {
        const Edge& e = edge(s.edge);
        return s.forward ? e.head : e.tail;
    }

    // a copy with some (or all) gains replaced
    GainGraph with_gains(const std::map<EdgeId, Rational>& overrides) const {
        std::map<EdgeId, Rational> merged = gains_;
        for (const auto& [id, gain] : overrides) {
            if (!merged.count(id)) throw UnknownEdge("no edge \"" + id + "\"");
            merged[id] = gain;
        }
        return GainGraph(edges_, std::move(merged));
    }

    const std::map<EdgeId, Rational>& gains() const { return gains_; }

private:
    std::vector<Edge> edges_;
    std::map<EdgeId, Rational> gains_;
    std::map<EdgeId, std::size_t> index_;
    std::set<VertexId> vertices_;
};

// ---------------------------------------------------------------------------
// Circle: an internally non-repeating closed walk, canonicalized to the
// lexicographically least rotation/reflection of its edge-id sequence
// (directions break ties) so each circle subgraph is representable one way.
// ---------------------------------------------------------------------------

class Circle {
public:
    // Builds a circle from a closed walk, validating circle-ness.
    Circle(const GainGraph& g, Walk walk) {
        if (walk.size() < 2)
            throw NotACircle("a circle needs at least two edges");
        std::set<VertexId> seen;
        for (std::size_t i = 0; i < walk.size(); ++i) {
            const WalkStep& cur = walk[i];
            const WalkStep& nxt = walk[(i + 1) % walk.size()];
            if (g.step_target(cur) != g.step_source(nxt))
                throw NotACircle("walk does not close up at edge \"" + cur.edge + "\"");
            VertexId v = g.step_source(cur);
            if (!seen.insert(v).second)
                throw NotACircle("walk revisits vertex \"" + v + "\"");
        }
        std::set<EdgeId> edge_ids;
        for (const WalkStep& s : walk) {
            if (!edge_ids.insert(s.edge).second)
                throw NotACircle("walk repeats edge \"" + s.edge + "\"");
        }
        steps_ = canonicalize(std::move(walk));
    }

    const Walk& steps() const { return steps_; }

    EdgeSet edge_set() const {
        EdgeSet s;
        for (const WalkStep& st : steps_) s.insert(st.edge);
        return s;
    }

    std::size_t size() const { return steps_.size(); }

    friend bool operator==(const Circle& a, const Circle& b) { return a.steps_ == b.steps_; }
    friend bool operator<(const Circle& a, const Circle& b) { return a.steps_ < b.steps_; }

private:
    static Walk canonicalize(Walk w) {
        Walk best = w;
        auto consider = [&best](const Walk& cand) {
            if (cand < best) best = cand;
        };
        std::size_t n = w.size();
        for (std::size_t r = 0; r < n; ++r) {
            Walk rot(w.begin() + static_cast<long>(r), w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
            consider(rot);
            // reflection: reverse order and flip directions
            Walk ref(rot.rbegin(), rot.rend());
            for (WalkStep& s : ref) s.forward = !s.forward;
            consider(ref);
        }
        return best;
    }

    Walk steps_;
};

// ---------------------------------------------------------------------------
// walk_gain: signed sum of gains in traversal order.
// ---------------------------------------------------------------------------

inline Rational walk_gain(const GainGraph& g, const Walk& w) {
    Rational total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && g.step_target(w[i - 1]) != g.step_source(w[i]))
            throw InvalidWalk("steps " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " do not share a vertex");
        total += g.gain(w[i]);
    }
    return total;
}

inline Rational circle_gain(const GainGraph& g, const Circle& c) {
    return walk_gain(g, c.steps());
}

inline bool is_balanced_circle(const GainGraph& g, const Circle& c) {
    return circle_gain(g, c) == 0;
}

// ---------------------------------------------------------------------------
// all_circles: every circle subgraph of g (optionally restricted to an edge
// subset), each once in canonical form.  Plain DFS over simple closed walks.
// ---------------------------------------------------------------------------

inline std::set<Circle> all_circles_within(const GainGraph& g, const EdgeSet& allowed) {
    std::set<Circle> out;
    std::vector<Edge> pool;
    for (const Edge& e : g.edges())
        if (allowed.count(e.id)) pool.push_back(e);

    // DFS state: current walk, vertices on the path, start vertex.
    Walk walk;
    std::set<VertexId> on_path;
    std::set<EdgeId> used;

    auto extend = [&](auto&& self, const VertexId& start, const VertexId& at) -> void {
        for (const Edge& e : pool) {
            if (used.count(e.id)) continue;
            bool fwd;
            if (e.tail == at) fwd = true;
            else if (e.head == at) fwd = false;
            else continue;
            VertexId nxt = fwd ? e.head : e.tail;
            if (nxt == start) {
                if (walk.size() >= 1) {
                    Walk closed = walk;
                    closed.push_back({e.id, fwd});
                    if (closed.size() >= 2) out.insert(Circle(g, closed));
                }
                continue;
            }
            if (on_path.count(nxt)) continue;
            walk.push_back({e.id, fwd});
            on_path.insert(nxt);
            used.insert(e.id);
            self(self, start, nxt);
            used.erase(e.id);
            on_path.erase(nxt);
            walk.pop_back();
        }
    };

    for (const VertexId& start : g.vertices()) {
        on_path = {start};
        used.clear();
        walk.clear();
        extend(extend, start, start);
    }
    return out;
}

inline std::set<Circle> all_circles(const GainGraph& g) {
    EdgeSet all;
    for (const Edge& e : g.edges()) all.insert(e.id);
    return all_circles_within(g, all);
}

// The circle on a given edge set, if that set traces one.
inline Circle circle_from_edges(const GainGraph& g, const EdgeSet& edges) {
    for (const Circle& c : all_circles_within(g, edges))
        if (c.edge_set() == edges) return c;
    std::string ids;
    for (const EdgeId& e : edges) ids += (ids.empty() ? "" : ",") + e;
    throw NotACircle("edge set {" + ids + "} does not trace a circle");
}

// ---------------------------------------------------------------------------
// Balance.
// ---------------------------------------------------------------------------

inline bool is_balanced(const GainGraph& g, const EdgeSet& s) {
    for (const Circle& c : all_circles_within(g, s))
        if (!is_balanced_circle(g, c)) return false;
    return true;
}

// Largest balanced superset reachable by closing s under balanced circles:
// s together with every edge e lying on a balanced circle inside s + e.
inline EdgeSet balance_closure(const GainGraph& g, const EdgeSet& s) {
    if (!is_balanced(g, s)) throw UnbalancedInput("balance_closure of an unbalanced set");
    EdgeSet out = s;
    for (const Edge& e : g.edges()) {
        if (out.count(e.id)) continue;
        EdgeSet probe = s;
        probe.insert(e.id);
        for (const Circle& c : all_circles_within(g, probe)) {
            if (c.edge_set().count(e.id) && is_balanced_circle(g, c)) {
                out.insert(e.id);
                break;
            }
        }
    }
    return out;
}

// Rank of an edge set in the cycle matroid of the underlying graph:
// |touched vertices| - number of connected components of the subgraph.
inline std::size_t cycle_matroid_rank(const GainGraph& g, const EdgeSet& s) {
    std::map<VertexId, VertexId> parent;
    auto find = [&](VertexId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t rank = 0;
    for (const EdgeId& id : s) {
        const Edge& e = g.edge(id);
        if (!parent.count(e.tail)) parent[e.tail] = e.tail;
        if (!parent.count(e.head)) parent[e.head] = e.head;
        VertexId a = find(e.tail), b = find(e.head);
        if (a != b) {
            parent[a] = b;
            ++rank;
        }
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Linear classes of circles: closed under theta-graph symmetric difference.
// A theta graph consists of two branch vertices joined by three internally
// disjoint paths; the union of two circles is a theta exactly when it is
// connected with two vertices of degree 3 and the rest of degree 2.
// ---------------------------------------------------------------------------

inline bool union_is_theta(const GainGraph& g, const Circle& a, const Circle& b) {
    EdgeSet u = a.edge_set();
    for (const EdgeId& e : b.edge_set()) u.insert(e);
    if (u == a.edge_set() || u == b.edge_set()) return false;
    std::map<VertexId, int> deg;
    for (const EdgeId& id : u) {
        const Edge& e = g.edge(id);
        ++deg[e.tail];
        ++deg[e.head];
    }
    int deg3 = 0;
    for (const auto& [v, d] : deg) {
        if (d == 3) ++deg3;
        else if (d != 2) return false;
    }
    if (deg3 != 2) return false;
    // connectedness: a theta's edge count is vertex count + 1
    if (u.size() != deg.size() + 1) return false;
    return cycle_matroid_rank(g, u) == deg.size() - 1;
}

inline bool is_linear_class_of_circles(const GainGraph& g, const std::set<Circle>& cls) {
    std::set<Circle> universe = all_circles(g);
    for (const Circle& c : cls)
        if (!universe.count(c))
            throw NotACircle("class member is not a circle of the graph");
    for (const Circle& a : cls) {
        for (const Circle& b : cls) {
            if (!(a < b)) continue;
            if (!union_is_theta(g, a, b)) continue;
            // the third circle of the theta is the symmetric difference
            EdgeSet sym;
            for (const EdgeId& e : a.edge_set())
                if (!b.edge_set().count(e)) sym.insert(e);
            for (const EdgeId& e : b.edge_set())
                if (!a.edge_set().count(e)) sym.insert(e);
            Circle third = circle_from_edges(g, sym);
            if (!cls.count(third)) return false;
        }
    }
    return true;
}

} // namespace pytharr

#endif // PYTHARR_GAINGRAPH_HPP
