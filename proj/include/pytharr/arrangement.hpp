// ============================================================================
//  pytharr/arrangement.hpp
//
//  The squared-distance-difference arrangement H(Q, Γ, g): one affine
//  hyperplane per gained edge, with
//
//      h_e = { x : 2 x · (q_v − q_u) = g(e) + |q_v|² − |q_u|² },
//
//  centrality of edge subsets, the labeled intersection semilattice, and the
//  circuit criterion for centrality.
//
//  Normals are stored unnormalized (exactly 2(q_v − q_u)); a canonical
//  integral form is provided for cross-representation multiset comparison.
// ============================================================================
#ifndef PYTHARR_ARRANGEMENT_HPP
#define PYTHARR_ARRANGEMENT_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"
#include "pytharr/gaingraph.hpp"
#include "pytharr/matroid.hpp"
#include "pytharr/pointconfig.hpp"

namespace pytharr {

struct Hyperplane {
    Vector normal;   // 2 (q_head − q_tail)
    Rational offset; // g(e) + |q_head|² − |q_tail|²
    EdgeId label;

    bool contains(const Vector& x) const { return dot(normal, x) == offset; }
};

// squared euclidean norm
inline Rational norm_squared(const Vector& v) { return dot(v, v); }

// (primitive integer normal | offset), first nonzero normal entry positive —
// the comparison key that identifies a hyperplane as a point set.
inline std::vector<Rational> canonical_hyperplane_key(const Hyperplane& h) {
    std::vector<Rational> key = h.normal;
    key.push_back(h.offset);
    // clear denominators and divide by the content
    mpz_class lcm_den = 1, gcd_num = 0;
    for (const Rational& r : key) {
        Rational c = r;
        c.canonicalize();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    for (Rational& r : key) r = r * Rational(lcm_den);
    for (const Rational& r : key) {
        Rational c = r;
        c.canonicalize();
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num().get_mpz_t());
    }
    if (gcd_num != 0)
        for (Rational& r : key) r = r / Rational(gcd_num);
    for (std::size_t i = 0; i + 1 < key.size(); ++i) {
        if (key[i] != 0) {
            if (key[i] < 0)
                for (Rational& r : key) r = -r;
            break;
        }
    }
    for (Rational& r : key) r.canonicalize();
    return key;
}

class Arrangement {
public:
    Arrangement(std::size_t dimension, std::vector<Hyperplane> hyperplanes)
        : dim_(dimension), hyperplanes_(std::move(hyperplanes)) {
        for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
            const Hyperplane& h = hyperplanes_[i];
            if (h.normal.size() != dim_)
                throw DimensionMismatch("hyperplane \"" + h.label + "\" has a normal of dimension " +
                                        std::to_string(h.normal.size()));
            if (is_zero_vector(h.normal))
                throw Error("hyperplane \"" + h.label + "\" has zero normal");
            if (index_.count(h.label))
                throw InvalidEdge("duplicate hyperplane label \"" + h.label + "\"");
            index_[h.label] = i;
        }
    }

    std::size_t dimension() const { return dim_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

    bool has_label(const EdgeId& e) const { return index_.count(e) != 0; }

    const Hyperplane& by_label(const EdgeId& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) throw UnknownLabel("no hyperplane labeled \"" + e + "\"");
        return hyperplanes_[it->second];
    }

private:
    std::size_t dim_;
    std::vector<Hyperplane> hyperplanes_;
    std::map<EdgeId, std::size_t> index_;
};

inline Arrangement build_arrangement(const Configuration& q, const GainGraph& g) {
    std::vector<Hyperplane> hs;
    for (const Edge& e : g.edges()) {
        const Vector& qt = q.point(e.tail); // throws MissingPoint
        const Vector& qh = q.point(e.head);
        Hyperplane h;
        h.normal = scale(Rational(2), subtract(qh, qt));
        h.offset = g.gain(e.id) + norm_squared(qh) - norm_squared(qt);
        h.label = e.id;
        hs.push_back(std::move(h));
    }
    return Arrangement(q.dimension(), std::move(hs));
}

// ---------------------------------------------------------------------------
// Centrality and flats of edge subsets.
// ---------------------------------------------------------------------------

inline AffineSubspace intersection_of(const Arrangement& a, const EdgeSet& s) {
    Matrix lhs(a.dimension());
    Vector rhs;
    for (const EdgeId& e : s) {
        const Hyperplane& h = a.by_label(e); // throws UnknownLabel
        lhs.append_row(h.normal);
        rhs.push_back(h.offset);
    }
    return solve(lhs, rhs);
}

inline bool is_central(const Arrangement& a, const EdgeSet& s) {
    return !intersection_of(a, s).is_empty();
}

inline AffineSubspace flat_of(const Arrangement& a, const EdgeSet& s) {
    AffineSubspace f = intersection_of(a, s);
    if (f.is_empty()) throw NotCentral("the given edge set is not central");
    return f;
}

// ---------------------------------------------------------------------------
// Labeled intersection semilattice: every nonempty intersection of a subset
// of hyperplanes, labeled by ALL hyperplanes containing it, ordered by
// reverse inclusion, ranked by codimension.  The ambient space sits at the
// bottom with the empty label.
// ---------------------------------------------------------------------------

struct Flat {
    AffineSubspace subspace;
    EdgeSet labels;        // every hyperplane containing the subspace
    std::size_t codimension = 0;
};

struct LabeledSemilattice {
    std::size_t dimension = 0;
    std::vector<Flat> flats; // sorted by (codimension, labels)

    std::vector<EdgeSet> labels_at_codimension(std::size_t k) const {
        std::vector<EdgeSet> out;
        for (const Flat& f : flats)
            if (f.codimension == k) out.push_back(f.labels);
        return out;
    }

    std::size_t max_codimension() const {
        std::size_t m = 0;
        for (const Flat& f : flats) m = std::max(m, f.codimension);
        return m;
    }

    // combinatorial identity: same labeled flats in the same order
    bool same_labels_as(const LabeledSemilattice& other) const {
        if (flats.size() != other.flats.size()) return false;
        for (std::size_t i = 0; i < flats.size(); ++i)
            if (flats[i].codimension != other.flats[i].codimension ||
                flats[i].labels != other.flats[i].labels)
                return false;
        return true;
    }
};

inline LabeledSemilattice intersection_semilattice(const Arrangement& a) {
    std::vector<AffineSubspace> found;
    found.push_back(AffineSubspace::whole_space(a.dimension()));
    // breadth-first incremental intersection with dedup by subspace equality
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const Hyperplane& h : a.hyperplanes()) {
            Matrix lhs(a.dimension());
            lhs.append_row(h.normal);
            Vector rhs{h.offset};
            AffineSubspace hsub = solve(lhs, rhs);
            AffineSubspace meet = intersect(found[i], hsub);
            if (meet.is_empty()) continue;
            bool seen = false;
            for (const AffineSubspace& f : found)
                if (f.same_as(meet)) { seen = true; break; }
            if (!seen) found.push_back(std::move(meet));
        }
    }
    LabeledSemilattice out;
    out.dimension = a.dimension();
    for (const AffineSubspace& f : found) {
        Flat flat;
        flat.subspace = f;
        for (const Hyperplane& h : a.hyperplanes()) {
            Matrix lhs(a.dimension());
            lhs.append_row(h.normal);
            AffineSubspace hsub = solve(lhs, Vector{h.offset});
            if (hsub.contains(f)) flat.labels.insert(h.label);
        }
        flat.codimension = a.dimension() - *f.dimension();
        out.flats.push_back(std::move(flat));
    }
    std::sort(out.flats.begin(), out.flats.end(), [](const Flat& x, const Flat& y) {
        return x.codimension != y.codimension ? x.codimension < y.codimension : x.labels < y.labels;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Centrality is governed by circuits: S is central iff every circuit of the
// matroid at infinity inside S is central.  Verified over the whole powerset.
// ---------------------------------------------------------------------------

inline bool central_circuit_criterion(const Arrangement& a, const Configuration& q,
                                      const GainGraph& g) {
    VectorMatroid m = matroid_at_infinity(q, g);
    std::vector<Circuit> circs = circuits(m);
    std::vector<EdgeId> edges;
    for (const Edge& e : g.edges()) edges.push_back(e.id);
    std::size_t n = edges.size();
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        EdgeSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint32_t(1) << i)) s.insert(edges[i]);
        bool lhs = is_central(a, s);
        bool rhs = true;
        for (const Circuit& c : circs) {
            if (std::includes(s.begin(), s.end(), c.begin(), c.end()) && !is_central(a, c)) {
                rhs = false;
                break;
            }
        }
        if (lhs != rhs) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DOT export: one node per flat, labels are sorted edge-id sets, edges are
// covering relations of the reverse-inclusion order.
// ---------------------------------------------------------------------------

inline std::string label_string(const EdgeSet& labels) {
    if (labels.empty()) return "()";
    std::string s;
    for (const EdgeId& e : labels) {
        if (!s.empty()) s += " ";
        s += e;
    }
    return s;
}

inline std::string to_dot(const LabeledSemilattice& l) {
    std::string dot = "digraph semilattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < l.flats.size(); ++i)
        dot += "  n" + std::to_string(i) + " [label=\"" + label_string(l.flats[i].labels) + "\"];\n";
    // covering relations: i < j in reverse inclusion when flat j ⊂ flat i
    auto below = [&](std::size_t i, std::size_t j) {
        return l.flats[i].codimension < l.flats[j].codimension &&
               l.flats[i].subspace.contains(l.flats[j].subspace);
    };
    for (std::size_t i = 0; i < l.flats.size(); ++i) {
        for (std::size_t j = 0; j < l.flats.size(); ++j) {
            if (!below(i, j)) continue;
            bool covering = true;
            for (std::size_t k = 0; k < l.flats.size() && covering; ++k)
                if (k != i && k != j && below(i, k) && below(k, j)) covering = false;
            if (covering)
                dot += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + ";\n";
        }
    }
    dot += "}\n";
    return dot;
}

} // namespace pytharr

#endif // PYTHARR_ARRANGEMENT_HPP
