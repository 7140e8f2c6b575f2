// ============================================================================
//  pytharr/genericity.hpp
//
//  The derived arrangement in edge space.  For a point configuration Q and a
//  gain graph G, each circuit X of the matroid at infinity contributes one
//  linear equation in the gain variables -- the locus of gain vectors for
//  which the hyperplanes labelled by X share a point.  This header computes
//  those equations symbolically (cofactor expansion of the bordered system
//  matrix), assembles them into the derived arrangement, classifies gain
//  vectors as generic or not, builds the lattice of flats of the derived
//  arrangement, restricts it to a prescribed balance class of circles, and
//  exposes the correspondence between centres and fully-central gain vectors.
//
//  Everything is exact.  Canonical equations clear denominators to a
//  primitive integer coefficient vector whose first nonzero coefficient
//  (in EdgeId order) is positive, so equality of equations is plain
//  structural equality.
// ============================================================================
#ifndef PYTHARR_GENERICITY_HPP
#define PYTHARR_GENERICITY_HPP

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pytharr/arrangement.hpp"
#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"
#include "pytharr/gaingraph.hpp"
#include "pytharr/matroid.hpp"
#include "pytharr/pointconfig.hpp"

namespace pytharr {

// |q_head|^2 - |q_tail|^2, the constant that joins the gain in every
// hyperplane offset.
inline Rational norm_shift(const Configuration& q, const GainGraph& g, const EdgeId& e) {
    const Edge& ed = g.edge(e);
    const Vector& qt = q.point(ed.tail);
    const Vector& qh = q.point(ed.head);
    return dot(qh, qh) - dot(qt, qt);
}

// the global coordinate order of edge space: the graph's edge-list order
inline std::vector<EdgeId> edge_order(const GainGraph& g) {
    std::vector<EdgeId> out;
    for (const Edge& e : g.edges()) out.push_back(e.id);
    return out;
}

// the graph's gains as a vector in edge order
inline Vector gain_vector(const GainGraph& g) {
    Vector out;
    for (const Edge& e : g.edges()) out.push_back(g.gain(e.id));
    return out;
}

// a gain map from a vector in edge order
inline std::map<EdgeId, Rational> gain_map(const GainGraph& g, const Vector& v) {
    if (v.size() != g.edges().size())
        throw DimensionMismatch("gain vector of dim " + std::to_string(v.size()) + " for " +
                                std::to_string(g.edges().size()) + " edges");
    std::map<EdgeId, Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out[g.edges()[i].id] = v[i];
    return out;
}

// ---------------------------------------------------------------------------
// SymbolicColumn: the bordered column of a system matrix.  Row i stands for
// the entry  constant - gamma_e / 2  with constant = -(|q_head|^2-|q_tail|^2)/2.
// ---------------------------------------------------------------------------

struct SymbolicRow {
    Rational constant;
    EdgeId variable;
};

struct SymbolicColumn {
    std::vector<SymbolicRow> entries;

    // plug a concrete gain function in for the symbols
    Vector specialize(const GainGraph& g) const {
        Vector out;
        for (const SymbolicRow& r : entries) out.push_back(r.constant - g.gain(r.variable) / 2);
        return out;
    }
};

// The system matrix of an edge set: one row per edge (in edge-list order),
// direction entries to the left, the symbolic gain entry as a final column.
inline std::pair<Matrix, SymbolicColumn> system_matrix(const Configuration& q, const GainGraph& g,
                                                       const EdgeSet& s) {
    if (q.dimension() == 0)
        throw UnsupportedDimension("system matrix in dimension 0");
    Matrix m(q.dimension());
    SymbolicColumn col;
    for (const Edge& e : g.edges()) {
        if (!s.count(e.id)) continue;
        m.append_row(direction(q, g, e.id));
        col.entries.push_back({-norm_shift(q, g, e.id) / 2, e.id});
    }
    for (const EdgeId& id : s) g.edge(id); // unknown ids fault here
    return {std::move(m), std::move(col)};
}

// ---------------------------------------------------------------------------
// EdgeSpaceHyperplane: a linear equation  sum c_e gamma_e + constant = 0  in
// gain space, stored canonically: only nonzero coefficients, scaled to a
// primitive integer coefficient vector whose first nonzero entry (EdgeId
// order) is positive.
// ---------------------------------------------------------------------------

class EdgeSpaceHyperplane {
public:
    EdgeSpaceHyperplane(std::map<EdgeId, Rational> coefficients, Rational constant)
        : coefficients_(std::move(coefficients)), constant_(std::move(constant)) {
        for (auto it = coefficients_.begin(); it != coefficients_.end();)
            it = (it->second == 0) ? coefficients_.erase(it) : std::next(it);
        if (coefficients_.empty())
            throw Error("edge-space hyperplane with no nonzero coefficient");

        // clear denominators, divide by the gcd, fix the sign
        mpz_class lcm_den = 1;
        for (const auto& [e, c] : coefficients_)
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_class gcd_num = 0;
        for (const auto& [e, c] : coefficients_) {
            mpz_class n = c.get_num() * (lcm_den / c.get_den());
            mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
        }
        Rational scale(lcm_den, gcd_num);
        scale.canonicalize();
        if (coefficients_.begin()->second < 0) scale = -scale;
        for (auto& [e, c] : coefficients_) c *= scale;
        constant_ *= scale;
    }

    const std::map<EdgeId, Rational>& coefficients() const { return coefficients_; }
    const Rational& constant() const { return constant_; }

    EdgeSet support() const {
        EdgeSet s;
        for (const auto& [e, c] : coefficients_) s.insert(e);
        return s;
    }

    Rational coefficient(const EdgeId& e) const {
        auto it = coefficients_.find(e);
        return it == coefficients_.end() ? Rational(0) : it->second;
    }

    Rational evaluate(const std::map<EdgeId, Rational>& gains) const {
        Rational v = constant_;
        for (const auto& [e, c] : coefficients_) {
            auto it = gains.find(e);
            if (it == gains.end()) throw UnknownEdge("no gain for edge \"" + e + "\"");
            v += c * it->second;
        }
        return v;
    }

    Rational evaluate(const GainGraph& g) const { return evaluate(g.gains()); }

    bool contains(const GainGraph& g) const { return evaluate(g) == 0; }

    // the hyperplane as a flat of gain space, coordinates in the given order
    AffineSubspace as_subspace(const std::vector<EdgeId>& order) const {
        Vector row(order.size(), Rational(0));
        std::size_t placed = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto it = coefficients_.find(order[i]);
            if (it != coefficients_.end()) {
                row[i] = it->second;
                ++placed;
            }
        }
        if (placed != coefficients_.size())
            throw UnknownEdge("equation mentions an edge outside the coordinate order");
        Matrix m(order.size());
        m.append_row(std::move(row));
        return solve(m, Vector{-constant_});
    }

    friend bool operator==(const EdgeSpaceHyperplane& a, const EdgeSpaceHyperplane& b) {
        return a.coefficients_ == b.coefficients_ && a.constant_ == b.constant_;
    }
    friend bool operator!=(const EdgeSpaceHyperplane& a, const EdgeSpaceHyperplane& b) {
        return !(a == b);
    }
    friend bool operator<(const EdgeSpaceHyperplane& a, const EdgeSpaceHyperplane& b) {
        if (a.coefficients_ != b.coefficients_) return a.coefficients_ < b.coefficients_;
        return a.constant_ < b.constant_;
    }

private:
    std::map<EdgeId, Rational> coefficients_;
    Rational constant_;
};

// "g_a - 2 g_b + 2 g_c = 0"
inline std::string format_edge_equation(const EdgeSpaceHyperplane& h) {
    std::string out;
    for (const auto& [e, c] : h.coefficients()) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (out.empty())
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        if (a != 1) out += format_rational(a) + " ";
        out += "g_" + e;
    }
    out += " = " + format_rational(Rational(-h.constant()));
    return out;
}

// ---------------------------------------------------------------------------
// The equation of nongenericity of a dependent edge set.
//
// For an edge set S with rank(S) = |S| - 1, the bordered matrix [directions |
// symbolic column] is square after restriction to the pivot columns of the
// direction block, and its determinant is linear in the gain symbols.
// Cofactor expansion along the symbolic column yields the equation; the
// coefficient of gamma_{e_i} is (up to one global sign and the factor -1/2,
// both removed by canonicalization) the signed minor of the directions with
// row i deleted.
// ---------------------------------------------------------------------------

inline EdgeSpaceHyperplane nongenericity_equation(const Configuration& q, const GainGraph& g,
                                                  const EdgeSet& s) {
    if (q.dimension() == 0)
        throw UnsupportedDimension("nongenericity equation in dimension 0");
    std::vector<EdgeId> members;
    for (const Edge& e : g.edges())
        if (s.count(e.id)) members.push_back(e.id);
    for (const EdgeId& id : s) g.edge(id); // unknown ids fault here
    if (members.empty()) throw Error("nongenericity equation of an empty edge set");

    Matrix dirs(q.dimension());
    for (const EdgeId& e : members) dirs.append_row(direction(q, g, e));
    Echelon ech = reduce(dirs);
    if (ech.rank() + 1 != members.size())
        throw Error("edge set is not minimally bordered: rank " + std::to_string(ech.rank()) +
                    " with " + std::to_string(members.size()) + " edges");

    // restrict to the pivot columns: the left kernel is unchanged
    std::vector<Vector> restricted;
    for (const EdgeId& e : members) {
        const Vector d = direction(q, g, e);
        Vector r;
        for (std::size_t c : ech.pivots) r.push_back(d[c]);
        restricted.push_back(std::move(r));
    }

    std::map<EdgeId, Rational> coeffs;
    Rational constant = 0;
    Rational sign = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        Matrix minor(ech.rank());
        for (std::size_t j = 0; j < members.size(); ++j)
            if (j != i) minor.append_row(restricted[j]);
        Rational c = sign * det(minor);
        coeffs[members[i]] = c;
        constant += c * norm_shift(q, g, members[i]);
        sign = -sign;
    }
    return EdgeSpaceHyperplane(std::move(coeffs), std::move(constant));
}

// ---------------------------------------------------------------------------
// The hyperplane of nongenericity of a circuit: border any basis completing
// the circuit.  All completions yield the same canonical equation, and its
// support is exactly the circuit.
// ---------------------------------------------------------------------------

inline EdgeSpaceHyperplane forbidden_hyperplane(const Configuration& q, const GainGraph& g,
                                                const Circuit& x) {
    VectorMatroid m = matroid_at_infinity(q, g);
    if (!is_circuit(m, x)) {
        std::string ids;
        for (const EdgeId& e : x) ids += (ids.empty() ? "" : ",") + e;
        throw NotACircuit("edge set {" + ids + "} is not a circuit of the matroid at infinity");
    }

    // first circuit element in edge order starts the border
    EdgeId x0;
    for (const Edge& e : g.edges())
        if (x.count(e.id)) {
            x0 = e.id;
            break;
        }

    ElementSet base = x;
    base.erase(x0);
    std::size_t target = m.rank();
    for (const Edge& e : g.edges()) {
        if (base.size() == target) break;
        if (e.id == x0 || base.count(e.id)) continue;
        ElementSet probe = base;
        probe.insert(e.id);
        if (m.rank(probe) > m.rank(base)) base = std::move(probe);
    }

    EdgeSet bordered(base.begin(), base.end());
    bordered.insert(x0);
    return nongenericity_equation(q, g, bordered);
}

// ---------------------------------------------------------------------------
// The derived arrangement: one equation per circuit of the matroid at
// infinity, in the circuits' (size, edge-position) enumeration order.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<Circuit, EdgeSpaceHyperplane>> derived_arrangement(
    const Configuration& q, const GainGraph& g) {
    VectorMatroid m = matroid_at_infinity(q, g);
    std::vector<std::pair<Circuit, EdgeSpaceHyperplane>> out;
    for (const Circuit& x : circuits(m)) out.emplace_back(x, forbidden_hyperplane(q, g, x));
    return out;
}

inline bool is_gain_generic(const Configuration& q, const GainGraph& g) {
    for (const auto& [x, h] : derived_arrangement(q, g))
        if (h.contains(g)) return false;
    return true;
}

// the circuits whose equation the gain function satisfies; by the centrality
// criterion these are exactly the circuits central in the point arrangement
inline std::set<Circuit> central_circuits(const Configuration& q, const GainGraph& g) {
    std::set<Circuit> out;
    for (const auto& [x, h] : derived_arrangement(q, g))
        if (h.contains(g)) out.insert(x);
    return out;
}

// ---------------------------------------------------------------------------
// Flats of the derived arrangement.
// ---------------------------------------------------------------------------

struct FlatOfF {
    std::set<Circuit> circuits;  // every equation containing the flat
    AffineSubspace subspace;     // their common intersection in gain space
};

inline FlatOfF flat_of_gain(const Configuration& q, const GainGraph& g) {
    std::vector<EdgeId> order = edge_order(g);
    FlatOfF f{{}, AffineSubspace::whole_space(order.size())};
    for (const auto& [x, h] : derived_arrangement(q, g)) {
        if (!h.contains(g)) continue;
        f.circuits.insert(x);
        f.subspace = intersect(f.subspace, h.as_subspace(order));
    }
    return f;
}

struct FlatsLattice {
    std::vector<EdgeId> edge_order;
    std::vector<std::pair<Circuit, EdgeSpaceHyperplane>> hyperplanes;
    std::vector<FlatOfF> flats;  // sorted by (codimension, circuit set)

    const FlatOfF& by_circuits(const std::set<Circuit>& c) const {
        for (const FlatOfF& f : flats)
            if (f.circuits == c) return f;
        throw Error("no flat with the requested circuit set");
    }

    std::vector<std::set<Circuit>> labels_at_codimension(std::size_t k) const {
        std::vector<std::set<Circuit>> out;
        for (const FlatOfF& f : flats)
            if (f.subspace.codimension() == k) out.push_back(f.circuits);
        return out;
    }

    std::size_t max_codimension() const {
        std::size_t k = 0;
        for (const FlatOfF& f : flats) k = std::max(k, f.subspace.codimension());
        return k;
    }
};

inline FlatsLattice flats_lattice(const Configuration& q, const GainGraph& g) {
    FlatsLattice out;
    out.edge_order = edge_order(g);
    out.hyperplanes = derived_arrangement(q, g);

    std::vector<AffineSubspace> planes;
    for (const auto& [x, h] : out.hyperplanes) planes.push_back(h.as_subspace(out.edge_order));

    // breadth-first closure under intersection, deduplicated by canonical form
    std::vector<AffineSubspace> found{AffineSubspace::whole_space(out.edge_order.size())};
    std::set<std::pair<std::vector<Vector>, Vector>> seen{found.front().canonical_form()};
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const AffineSubspace& p : planes) {
            AffineSubspace cut = intersect(found[i], p);
            if (cut.is_empty()) continue;
            if (seen.insert(cut.canonical_form()).second) found.push_back(std::move(cut));
        }
    }

    VectorMatroid m = matroid_at_infinity(q, g);
    for (AffineSubspace& sub : found) {
        FlatOfF f{{}, std::move(sub)};
        for (std::size_t j = 0; j < planes.size(); ++j)
            if (planes[j].contains(f.subspace)) f.circuits.insert(out.hyperplanes[j].first);
        if (!is_linear_class_of_circuits(m, f.circuits))
            throw Error("flat label fails the linear-class law");
        out.flats.push_back(std::move(f));
    }

    std::sort(out.flats.begin(), out.flats.end(), [](const FlatOfF& a, const FlatOfF& b) {
        if (a.subspace.codimension() != b.subspace.codimension())
            return a.subspace.codimension() < b.subspace.codimension();
        return a.circuits < b.circuits;
    });
    return out;
}

// ---------------------------------------------------------------------------
// The balance equation of a circle: signed incidence of the traversal,
// no constant term.
// ---------------------------------------------------------------------------

inline EdgeSpaceHyperplane balance_hyperplane(const GainGraph& g, const Circle& x) {
    std::map<EdgeId, Rational> coeffs;
    for (const WalkStep& s : x.steps()) {
        g.edge(s.edge); // foreign circles fault here
        coeffs[s.edge] = s.forward ? 1 : -1;
    }
    return EdgeSpaceHyperplane(std::move(coeffs), Rational(0));
}

inline EdgeSpaceHyperplane balance_hyperplane(const GainGraph& g, const EdgeSet& x) {
    return balance_hyperplane(g, circle_from_edges(g, x));
}

// ---------------------------------------------------------------------------
// Prescribed bias.  A bias class is a linear class of circles designated
// balanced; restricting the flats of the derived arrangement to the gain
// vectors realizing that bias merges flats whose compatible loci coincide
// and flags the loci on which a circle OUTSIDE the class is forced balanced.
// ---------------------------------------------------------------------------

using BiasClass = std::set<Circle>;

struct BiasNode {
    FlatOfF flat;               // the lattice flat the locus labels
    AffineSubspace restricted;  // the locus: flat  ∩  (balance of every class member)
    bool over_balanced;         // a circle outside the class is balanced on all of it
    Vector representative;      // a gain vector in the locus, off every avoidable equation
};

inline std::vector<BiasNode> bias_restricted_flats(const Configuration& q, const GainGraph& g,
                                                   const BiasClass& bias) {
    if (!is_linear_class_of_circles(g, bias))
        throw NotLinearClass("the prescribed balance class is not a linear class of circles");

    std::vector<EdgeId> order = edge_order(g);
    std::size_t n = order.size();

    std::vector<std::pair<EdgeSpaceHyperplane, AffineSubspace>> outside;
    AffineSubspace locus0 = AffineSubspace::whole_space(n);
    for (const Circle& y : all_circles(g)) {
        EdgeSpaceHyperplane b = balance_hyperplane(g, y);
        AffineSubspace sub = b.as_subspace(order);
        if (bias.count(y))
            locus0 = intersect(locus0, sub);
        else
            outside.emplace_back(std::move(b), std::move(sub));
    }

    for (const auto& [b, bsub] : outside)
        if (bsub.contains(locus0))
            throw UnrealizableBias("the class forces the circle {" +
                                   [&] {
                                       std::string ids;
                                       for (const EdgeId& e : b.support())
                                           ids += (ids.empty() ? "" : ",") + e;
                                       return ids;
                                   }() +
                                   "} balanced");

    FlatsLattice lattice = flats_lattice(q, g);
    std::vector<AffineSubspace> plane_subs;
    for (const auto& [x, h] : lattice.hyperplanes) plane_subs.push_back(h.as_subspace(order));

    std::vector<BiasNode> nodes;
    for (const FlatOfF& a : lattice.flats) {
        AffineSubspace k = intersect(a.subspace, locus0);
        if (k.is_empty()) continue;
        bool fresh = true;
        for (const BiasNode& seen : nodes)
            if (seen.restricted.same_as(k)) {
                fresh = false;
                break;
            }
        if (!fresh) continue;

        BiasNode node{{std::set<Circuit>{}, AffineSubspace::whole_space(n)}, std::move(k), false,
                      Vector{}};
        for (std::size_t j = 0; j < plane_subs.size(); ++j)
            if (plane_subs[j].contains(node.restricted)) {
                node.flat.circuits.insert(lattice.hyperplanes[j].first);
                node.flat.subspace = intersect(node.flat.subspace, plane_subs[j]);
            }
        for (const auto& [b, bsub] : outside)
            if (bsub.contains(node.restricted)) {
                node.over_balanced = true;
                break;
            }

        // a representative gain vector: walk the locus's moment curve until
        // every equation that does not vanish on the whole locus is avoided
        std::vector<const AffineSubspace*> avoid;
        for (std::size_t j = 0; j < plane_subs.size(); ++j)
            if (!node.flat.circuits.count(lattice.hyperplanes[j].first))
                avoid.push_back(&plane_subs[j]);
        for (const auto& [b, bsub] : outside)
            if (!bsub.contains(node.restricted)) avoid.push_back(&bsub);

        const Vector& base = node.restricted.base();
        const std::vector<Vector>& dirs = node.restricted.directions();
        std::size_t cap = dirs.size() * avoid.size() + 2;
        for (std::size_t t = 1; t <= cap; ++t) {
            Vector cand = base;
            Rational power = 1;
            for (const Vector& d : dirs) {
                power *= Rational(static_cast<long>(t));
                cand = add(cand, scale(power, d));
            }
            bool clear = true;
            for (const AffineSubspace* sub : avoid)
                if (sub->contains_point(cand)) {
                    clear = false;
                    break;
                }
            if (clear) {
                node.representative = std::move(cand);
                break;
            }
        }
        if (node.representative.empty() && n > 0)
            throw Error("no representative found on a bias locus");
        nodes.push_back(std::move(node));
    }

    std::sort(nodes.begin(), nodes.end(), [](const BiasNode& a, const BiasNode& b) {
        if (a.restricted.codimension() != b.restricted.codimension())
            return a.restricted.codimension() < b.restricted.codimension();
        return a.flat.circuits < b.flat.circuits;
    });
    return nodes;
}

// ---------------------------------------------------------------------------
// Certified genericity: the radius (sup-norm) below which every perturbation
// of the gains stays off every equation of the derived arrangement, hence
// keeps the labeled semilattice.  Non-generic gains get radius 0; an
// arrangement with no circuits is unconditionally stable, radius 1.
// ---------------------------------------------------------------------------

inline Rational perturbation_radius(const Configuration& q, const GainGraph& g) {
    Rational best = -1;
    for (const auto& [x, h] : derived_arrangement(q, g)) {
        Rational value = h.evaluate(g);
        if (value < 0) value = -value;
        Rational weight = 0;
        for (const auto& [e, c] : h.coefficients()) weight += (c < 0 ? Rational(-c) : c);
        Rational radius = value / weight;
        if (best < 0 || radius < best) best = radius;
    }
    return best < 0 ? Rational(1) : best;
}

// ---------------------------------------------------------------------------
// Centres.  A point p is the centre of exactly one fully-central gain vector
// (gains read off the hyperplane equations through p), and a fully-central
// gain vector recovers its centre from any basis of the matroid at infinity.
// ---------------------------------------------------------------------------

class CentresCorrespondence {
public:
    CentresCorrespondence(const Configuration& q, const GainGraph& g, ElementSet basis)
        : dim_(q.dimension()), basis_(std::move(basis)) {
        VectorMatroid m = matroid_at_infinity(q, g);
        for (const EdgeId& e : basis_)
            m.vector_of(e); // foreign ids fault here
        if (basis_.size() != m.rank() || m.rank(basis_) != m.rank())
            throw NotABasis("the chosen edge set is not a basis of the matroid at infinity");
        Arrangement arr = build_arrangement(q, g);
        EdgeSet all;
        for (const Edge& e : g.edges()) all.insert(e.id);
        if (intersection_of(arr, all).is_empty())
            throw NotCentral("the arrangement of the given gains has no common point");
        for (const Edge& e : g.edges()) {
            order_.push_back(e.id);
            dirs_[e.id] = direction(q, g, e.id);
            shifts_[e.id] = norm_shift(q, g, e.id);
        }
    }

    const std::vector<EdgeId>& edge_order() const { return order_; }
    const ElementSet& basis() const { return basis_; }

    // the unique gain vector whose arrangement passes through p
    Vector gains_at(const Vector& p) const {
        if (p.size() != dim_)
            throw DimensionMismatch("centre of dim " + std::to_string(p.size()) +
                                    " in ambient dim " + std::to_string(dim_));
        Vector out;
        for (const EdgeId& e : order_)
            out.push_back(2 * dot(dirs_.at(e), p) - shifts_.at(e));
        return out;
    }

    // the centre locus of a fully-central gain vector, solved on the basis
    // edges and checked against all the rest
    AffineSubspace centre_of(const std::map<EdgeId, Rational>& gains) const {
        Matrix a(dim_);
        Vector b;
        for (const EdgeId& e : basis_) {
            a.append_row(scale(2, dirs_.at(e)));
            b.push_back(gain_of(gains, e) + shifts_.at(e));
        }
        AffineSubspace centre = solve(a, b);
        for (const EdgeId& e : order_) {
            Matrix ae(dim_);
            ae.append_row(scale(2, dirs_.at(e)));
            AffineSubspace he = solve(ae, Vector{gain_of(gains, e) + shifts_.at(e)});
            if (!he.contains(centre))
                throw NotCentral("gain vector is not fully central: edge \"" + e +
                                 "\" misses the basis centre");
        }
        return centre;
    }

    AffineSubspace centre_of(const GainGraph& g) const { return centre_of(g.gains()); }

private:
    static const Rational& gain_of(const std::map<EdgeId, Rational>& gains, const EdgeId& e) {
        auto it = gains.find(e);
        if (it == gains.end()) throw UnknownEdge("no gain for edge \"" + e + "\"");
        return it->second;
    }

    std::size_t dim_;
    ElementSet basis_;
    std::vector<EdgeId> order_;
    std::map<EdgeId, Vector> dirs_;
    std::map<EdgeId, Rational> shifts_;
};

inline CentresCorrespondence centres_correspondence(const Configuration& q, const GainGraph& g,
                                                    const ElementSet& basis) {
    return CentresCorrespondence(q, g, basis);
}

// ---------------------------------------------------------------------------
// DOT export of the flats lattice: one box per flat labeled by its circuits,
// covering edges upward by reverse inclusion.
// ---------------------------------------------------------------------------

inline std::string circuit_set_string(const std::set<Circuit>& cs) {
    if (cs.empty()) return "()";
    std::string out;
    for (const Circuit& c : cs) {
        if (!out.empty()) out += ", ";
        bool compact = true;
        for (const EdgeId& e : c) compact = compact && e.size() == 1;
        std::string word;
        for (const EdgeId& e : c) {
            if (!word.empty() && !compact) word += "+";
            word += e;
        }
        out += word;
    }
    return out;
}

inline std::string to_dot(const FlatsLattice& l) {
    std::string out = "digraph flats {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < l.flats.size(); ++i)
        out += "  f" + std::to_string(i) + " [label=\"" + circuit_set_string(l.flats[i].circuits) +
               "\"];\n";
    for (std::size_t i = 0; i < l.flats.size(); ++i) {
        for (std::size_t j = 0; j < l.flats.size(); ++j) {
            if (i == j) continue;
            const FlatOfF& lo = l.flats[i];
            const FlatOfF& hi = l.flats[j];
            // hi covers lo in reverse inclusion: hi strictly inside lo ...
            if (lo.subspace.codimension() >= hi.subspace.codimension()) continue;
            if (!lo.subspace.contains(hi.subspace)) continue;
            bool covered = false; // ... with nothing strictly between
            for (std::size_t k = 0; k < l.flats.size() && !covered; ++k) {
                if (k == i || k == j) continue;
                const FlatOfF& mid = l.flats[k];
                covered = lo.subspace.codimension() < mid.subspace.codimension() &&
                          mid.subspace.codimension() < hi.subspace.codimension() &&
                          lo.subspace.contains(mid.subspace) && mid.subspace.contains(hi.subspace);
            }
            if (!covered) out += "  f" + std::to_string(i) + " -> f" + std::to_string(j) + ";\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace pytharr

#endif // PYTHARR_GENERICITY_HPP
