// ============================================================================
//  pytharr/matroid.hpp
//
//  Finite vector matroids and their combinatorial superstructure: circuits,
//  fundamental circuits, modular pairs, linear classes of circuits, modular
//  ideals, elementary lifts, and semimatroid validation.
//
//  Ground sets are tiny (<= ~12 elements), so subsets are also handled as
//  bitmasks internally and every family-level theorem is checked by plain
//  exhaustion.  Modular ideals are stored extensionally for the same reason:
//  it makes the lattice/bijection statements decidable by brute force.
//
//  "Modular family" in the source definition of linear classes is read as
//  modular *pairs* throughout; the closure and lift constructions only ever
//  need pairs.
// ============================================================================
#ifndef PYTHARR_MATROID_HPP
#define PYTHARR_MATROID_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pytharr/errors.hpp"
#include "pytharr/exactla.hpp"

namespace pytharr {

using ElementId = std::string;
using ElementSet = std::set<ElementId>;
using Circuit = ElementSet;

class VectorMatroid {
public:
    VectorMatroid(std::vector<ElementId> ground, std::map<ElementId, Vector> vectors)
        : ground_(std::move(ground)), vectors_(std::move(vectors)) {
        if (ground_.size() > 31)
            throw Error("ground set too large (" + std::to_string(ground_.size()) + " elements)");
        for (std::size_t i = 0; i < ground_.size(); ++i) {
            const ElementId& e = ground_[i];
            if (!vectors_.count(e))
                throw MissingData("no vector for element \"" + e + "\"");
            if (index_.count(e))
                throw InvalidEdge("duplicate element id \"" + e + "\"");
            index_[e] = i;
        }
        dim_ = ground_.empty() ? 0 : vectors_.at(ground_.front()).size();
        for (const ElementId& e : ground_)
            if (vectors_.at(e).size() != dim_)
                throw DimensionMismatch("element vectors of differing dimension");
        rank_cache_.assign(std::size_t(1) << ground_.size(), -1);
    }

    const std::vector<ElementId>& ground() const { return ground_; }
    std::size_t size() const { return ground_.size(); }

    const Vector& vector_of(const ElementId& e) const {
        auto it = vectors_.find(e);
        if (it == vectors_.end()) throw UnknownEdge("no element \"" + e + "\"");
        return it->second;
    }

    bool has_element(const ElementId& e) const { return index_.count(e) != 0; }

    std::uint32_t mask_of(const ElementSet& s) const {
        std::uint32_t m = 0;
        for (const ElementId& e : s) {
            auto it = index_.find(e);
            if (it == index_.end()) throw UnknownEdge("no element \"" + e + "\"");
            m |= std::uint32_t(1) << it->second;
        }
        return m;
    }

    ElementSet set_of(std::uint32_t mask) const {
        ElementSet s;
        for (std::size_t i = 0; i < ground_.size(); ++i)
            if (mask & (std::uint32_t(1) << i)) s.insert(ground_[i]);
        return s;
    }

    std::size_t rank_mask(std::uint32_t mask) const {
        int& slot = rank_cache_[mask];
        if (slot < 0) {
            Matrix m(dim_);
            for (std::size_t i = 0; i < ground_.size(); ++i)
                if (mask & (std::uint32_t(1) << i)) m.append_row(vectors_.at(ground_[i]));
            slot = static_cast<int>(pytharr::rank(m));
        }
        return static_cast<std::size_t>(slot);
    }

    std::size_t rank(const ElementSet& s) const { return rank_mask(mask_of(s)); }
    std::size_t rank() const { return rank_mask((std::uint32_t(1) << ground_.size()) - 1); }

    bool is_independent(const ElementSet& s) const { return rank(s) == s.size(); }
    bool is_loop(const ElementId& e) const { return is_zero_vector(vector_of(e)); }

private:
    std::vector<ElementId> ground_;
    std::map<ElementId, Vector> vectors_;
    std::map<ElementId, std::size_t> index_;
    std::size_t dim_ = 0;
    mutable std::vector<int> rank_cache_;
};

// ---------------------------------------------------------------------------
// Circuits: all minimal dependent subsets, in increasing (size, mask) order.
// ---------------------------------------------------------------------------

inline std::vector<Circuit> circuits(const VectorMatroid& m) {
    std::size_t n = m.size();
    std::vector<std::uint32_t> found;
    std::vector<Circuit> out;
    std::vector<std::uint32_t> by_size[32];
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask)
        by_size[__builtin_popcount(mask)].push_back(mask);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::uint32_t mask : by_size[k]) {
            bool has_sub = false;
            for (std::uint32_t c : found)
                if ((c & mask) == c) { has_sub = true; break; }
            if (has_sub) continue;
            if (m.rank_mask(mask) < k) {
                found.push_back(mask);
                out.push_back(m.set_of(mask));
            }
        }
    }
    return out;
}

inline bool is_circuit(const VectorMatroid& m, const ElementSet& x) {
    if (x.empty() || m.rank(x) != x.size() - 1) return false;
    for (const ElementId& e : x) {
        ElementSet sub = x;
        sub.erase(e);
        if (m.rank(sub) != sub.size()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fundamental circuit C_B(x): the unique circuit inside B + x, for a basis B
// and an element x outside it.
// ---------------------------------------------------------------------------

inline Circuit fundamental_circuit(const VectorMatroid& m, const ElementSet& b, const ElementId& x) {
    if (m.rank(b) != b.size() || b.size() != m.rank())
        throw NotABasis("the given set is not a basis");
    if (b.count(x)) throw ElementInBasis("element \"" + x + "\" lies in the basis");
    if (!m.has_element(x)) throw UnknownEdge("no element \"" + x + "\"");
    // greedy minimization: drop basis elements that are not needed for
    // dependence; what survives together with x is the unique circuit.
    ElementSet c = b;
    c.insert(x);
    for (const ElementId& e : b) {
        ElementSet probe = c;
        probe.erase(e);
        if (probe.size() > m.rank(probe)) c = probe; // still dependent
    }
    return c;
}

// Relaxed variant used by ideal construction: b need only be independent
// with x in its span.
inline Circuit fundamental_circuit_within(const VectorMatroid& m, const ElementSet& b,
                                          const ElementId& x) {
    ElementSet c = b;
    c.insert(x);
    if (m.rank(c) == c.size())
        throw NotABasis("element \"" + x + "\" is independent from the given set");
    for (const ElementId& e : b) {
        ElementSet probe = c;
        probe.erase(e);
        if (probe.size() > m.rank(probe)) c = probe;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Modular pairs.
// ---------------------------------------------------------------------------

// modular pair of arbitrary sets: rk(A ∩ B) + rk(A ∪ B) = rk A + rk B
inline bool is_modular_pair_of_sets(const VectorMatroid& m, const ElementSet& a,
                                    const ElementSet& b) {
    ElementSet uni = a, inter;
    for (const ElementId& e : b) uni.insert(e);
    for (const ElementId& e : a)
        if (b.count(e)) inter.insert(e);
    return m.rank(inter) + m.rank(uni) == m.rank(a) + m.rank(b);
}

// modular pair of circuits, by the rank criterion rk(X ∪ Y) = |X ∪ Y| - 2
inline bool is_modular_pair(const VectorMatroid& m, const Circuit& x, const Circuit& y) {
    if (x == y || !is_circuit(m, x) || !is_circuit(m, y))
        throw NotCircuits("is_modular_pair expects two distinct circuits");
    ElementSet uni = x;
    for (const ElementId& e : y) uni.insert(e);
    return m.rank(uni) == uni.size() - 2;
}

// ---------------------------------------------------------------------------
// Linear classes of circuits: families closed under taking circuits inside
// unions of modular pairs of members.
// ---------------------------------------------------------------------------

using LinearClass = std::set<Circuit>;

inline bool is_linear_class_of_circuits(const VectorMatroid& m, const LinearClass& cls) {
    std::vector<Circuit> all = circuits(m);
    std::set<Circuit> universe(all.begin(), all.end());
    for (const Circuit& c : cls)
        if (!universe.count(c)) throw NotCircuits("class member is not a circuit");
    for (const Circuit& x : cls) {
        for (const Circuit& y : cls) {
            if (!(x < y) || !is_modular_pair(m, x, y)) continue;
            ElementSet uni = x;
            for (const ElementId& e : y) uni.insert(e);
            for (const Circuit& z : all) {
                if (!cls.count(z) &&
                    std::includes(uni.begin(), uni.end(), z.begin(), z.end()))
                    return false;
            }
        }
    }
    return true;
}

inline LinearClass linear_class_closure(const VectorMatroid& m, const LinearClass& seed) {
    std::vector<Circuit> all = circuits(m);
    std::set<Circuit> universe(all.begin(), all.end());
    for (const Circuit& c : seed)
        if (!universe.count(c)) throw NotCircuits("seed member is not a circuit");
    LinearClass cls = seed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto ix = cls.begin(); ix != cls.end(); ++ix) {
            for (auto iy = std::next(ix); iy != cls.end(); ++iy) {
                if (!is_modular_pair(m, *ix, *iy)) continue;
                ElementSet uni = *ix;
                for (const ElementId& e : *iy) uni.insert(e);
                for (const Circuit& z : all) {
                    if (!cls.count(z) &&
                        std::includes(uni.begin(), uni.end(), z.begin(), z.end())) {
                        cls.insert(z);
                        changed = true;
                    }
                }
                if (changed) break;
            }
            if (changed) break;
        }
    }
    return cls;
}

// Every linear class, by closure-generated DFS from the empty class.
inline std::set<LinearClass> all_linear_classes(const VectorMatroid& m) {
    std::vector<Circuit> all = circuits(m);
    std::set<LinearClass> out;
    LinearClass empty_cls = linear_class_closure(m, {});
    std::vector<LinearClass> stack = {empty_cls};
    out.insert(empty_cls);
    while (!stack.empty()) {
        LinearClass cur = stack.back();
        stack.pop_back();
        for (const Circuit& c : all) {
            if (cur.count(c)) continue;
            LinearClass nxt = cur;
            nxt.insert(c);
            nxt = linear_class_closure(m, nxt);
            if (out.insert(nxt).second) stack.push_back(nxt);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modular ideals, stored extensionally.
// ---------------------------------------------------------------------------

struct ModularIdeal {
    std::set<ElementSet> sets;

    bool contains(const ElementSet& s) const { return sets.count(s) != 0; }
};

// full (MI1)/(MI2) + order-ideal validation, by exhaustion.
inline bool is_modular_ideal(const VectorMatroid& m, const std::set<ElementSet>& family) {
    if (family.empty()) return false;
    // order ideal: dropping any one element stays inside
    for (const ElementSet& s : family) {
        for (const ElementId& e : s) {
            ElementSet sub = s;
            sub.erase(e);
            if (!family.count(sub)) return false;
        }
    }
    if (!family.count(ElementSet{})) return false;
    // (MI1) non-degeneracy
    for (const ElementId& e : m.ground())
        if (!m.is_loop(e) && !family.count(ElementSet{e})) return false;
    // (MI2) modular extension, over all pairs in the family
    for (const ElementSet& a : family) {
        for (const ElementSet& b : family) {
            if (!is_modular_pair_of_sets(m, a, b)) continue;
            ElementSet uni = a;
            for (const ElementId& e : b) uni.insert(e);
            if (!family.count(uni)) return false;
        }
    }
    return true;
}

// The modular ideal generated by a linear class: all independent sets plus
// every dependent set with a basis whose fundamental circuits stay in the
// class.
inline ModularIdeal modular_ideal_from_linear_class(const VectorMatroid& m, const LinearClass& cls) {
    if (!is_linear_class_of_circuits(m, cls))
        throw NotALinearClass("the given circuit family is not a linear class");
    std::size_t n = m.size();
    ModularIdeal ideal;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        ElementSet s = m.set_of(mask);
        std::size_t r = m.rank_mask(mask);
        if (r == s.size()) {
            ideal.sets.insert(std::move(s));
            continue;
        }
        // search all bases of s (independent subsets of full rank within s)
        std::vector<ElementId> elems(s.begin(), s.end());
        std::size_t k = elems.size();
        bool admitted = false;
        for (std::uint32_t sub = 0; sub < (std::uint32_t(1) << k) && !admitted; ++sub) {
            if (static_cast<std::size_t>(__builtin_popcount(sub)) != r) continue;
            ElementSet b;
            for (std::size_t i = 0; i < k; ++i)
                if (sub & (std::uint32_t(1) << i)) b.insert(elems[i]);
            if (m.rank(b) != r) continue;
            bool all_in = true;
            for (const ElementId& x : s) {
                if (b.count(x)) continue;
                if (!cls.count(fundamental_circuit_within(m, b, x))) {
                    all_in = false;
                    break;
                }
            }
            admitted = all_in;
        }
        if (admitted) ideal.sets.insert(std::move(s));
    }
    if (!is_modular_ideal(m, ideal.sets))
        throw NotALinearClass("constructed family fails the modular-ideal axioms");
    return ideal;
}

// ---------------------------------------------------------------------------
// Elementary lift rank.
// ---------------------------------------------------------------------------

inline std::size_t lift_rank(const VectorMatroid& m, const ModularIdeal& ideal,
                             const ElementSet& s) {
    if (!is_modular_ideal(m, ideal.sets))
        throw InvalidIdeal("the given family is not a modular ideal");
    return m.rank(s) + (ideal.contains(s) ? 0 : 1);
}

// Validation-free variant for inner loops over all subsets (the caller
// validates the ideal once).
inline std::size_t lift_rank_unchecked(const VectorMatroid& m, const ModularIdeal& ideal,
                                       const ElementSet& s) {
    return m.rank(s) + (ideal.contains(s) ? 0 : 1);
}

// ---------------------------------------------------------------------------
// Rank-function and semimatroid validators (exhaustive, desk scale).
// ---------------------------------------------------------------------------

inline bool is_matroid_rank_function(const std::function<std::size_t(const ElementSet&)>& f,
                                     const std::vector<ElementId>& ground) {
    std::size_t n = ground.size();
    if (n > 20) throw Error("ground set too large for exhaustive validation");
    std::vector<std::size_t> val(std::size_t(1) << n);
    auto set_of = [&](std::uint32_t mask) {
        ElementSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint32_t(1) << i)) s.insert(ground[i]);
        return s;
    };
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask)
        val[mask] = f(set_of(mask));
    // normalization
    if (val[0] != 0) return false;
    // unit increase (covers subcardinality and isotonicity)
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t(1) << i)) continue;
            std::size_t up = val[mask | (std::uint32_t(1) << i)];
            if (up != val[mask] && up != val[mask] + 1) return false;
        }
    }
    // submodularity over all pairs
    for (std::uint32_t a = 0; a < (std::uint32_t(1) << n); ++a)
        for (std::uint32_t b = a; b < (std::uint32_t(1) << n); ++b)
            if (val[a & b] + val[a | b] > val[a] + val[b]) return false;
    return true;
}

// Axioms S0-S5 for a central-set family with a rank function.
inline bool is_semimatroid(const std::set<ElementSet>& central,
                           const std::function<std::size_t(const ElementSet&)>& rk) {
    // (S0) nonempty and hereditary
    if (central.empty()) return false;
    for (const ElementSet& x : central) {
        for (const ElementId& e : x) {
            ElementSet sub = x;
            sub.erase(e);
            if (!central.count(sub)) return false;
        }
    }
    std::map<ElementSet, std::size_t> r;
    for (const ElementSet& x : central) r[x] = rk(x);
    for (const ElementSet& x : central) {
        // (S1) subcardinal
        if (r[x] > x.size()) return false;
        for (const ElementSet& y : central) {
            ElementSet uni = x, inter;
            for (const ElementId& e : y) uni.insert(e);
            for (const ElementId& e : x)
                if (y.count(e)) inter.insert(e);
            bool x_sub_y = std::includes(y.begin(), y.end(), x.begin(), x.end());
            // (S2) isotone
            if (x_sub_y && r[x] > r[y]) return false;
            // (S3) submodular where the union is central
            if (central.count(uni) && r[inter] + r[uni] > r[x] + r[y]) return false;
            // (S4) closure exchange
            if (r[inter] == r[x] && !central.count(uni)) return false;
            // (S5) augmentation
            if (r[x] < r[y]) {
                bool found = false;
                for (const ElementId& e : y) {
                    if (x.count(e)) continue;
                    ElementSet ext = x;
                    ext.insert(e);
                    if (central.count(ext)) { found = true; break; }
                }
                if (!found) return false;
            }
        }
    }
    return true;
}

// The Ardila correspondence sanity check: the family passes the semimatroid
// axioms (ranked by the matroid rank) exactly when it passes (MI1)/(MI2).
inline bool modular_ideal_iff_semimatroid_check(const VectorMatroid& m,
                                                const std::set<ElementSet>& family) {
    bool ideal_ok = is_modular_ideal(m, family);
    bool semi_ok = is_semimatroid(
        family, [&m](const ElementSet& s) { return m.rank(s); });
    return ideal_ok == semi_ok;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of modular ideals (for the bijection theorem).
// Candidates are order ideals containing every independent set.  Dependent
// sets are decided in size order, and every partial choice is closed under
// the (MI2) forcing rule — a modular pair of members forces their union into
// the family, and a member forces all of its subsets — so a branch dies the
// moment a forced set meets an exclusion.  This keeps the search close to
// output-sensitive; the node budget guards against adversarial inputs.
// ---------------------------------------------------------------------------

inline std::set<std::set<ElementSet>> all_modular_ideals(const VectorMatroid& m,
                                                         std::size_t node_budget = 2000000) {
    std::size_t n = m.size();
    if (n > 12) throw Error("ground set too large for exhaustive enumeration");
    std::vector<std::size_t> rk(std::size_t(1) << n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask)
        rk[mask] = m.rank_mask(mask);
    auto dependent = [&rk](std::uint32_t mask) {
        return rk[mask] < static_cast<std::size_t>(__builtin_popcount(mask));
    };

    std::vector<std::uint32_t> dependents;
    std::vector<char> initial(std::size_t(1) << n, 0);
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
        if (dependent(mask))
            dependents.push_back(mask);
        else
            initial[mask] = 1; // independent sets belong to every ideal
    }
    std::sort(dependents.begin(), dependents.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    // Close `member` under modular-union and downward-closure forcing; a set
    // forced while excluded kills the branch.
    std::vector<char> excluded(std::size_t(1) << n, 0);
    auto propagate = [&](std::vector<char>& member) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::uint32_t> mem;
            for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask)
                if (member[mask]) mem.push_back(mask);
            for (std::size_t i = 0; i < mem.size() && !changed; ++i)
                for (std::size_t j = i + 1; j < mem.size() && !changed; ++j) {
                    std::uint32_t a = mem[i], b = mem[j], u = a | b;
                    if (member[u] || rk[a & b] + rk[u] != rk[a] + rk[b]) continue;
                    if (excluded[u]) return false;
                    member[u] = 1;
                    for (std::uint32_t d = u;; d = (d - 1) & u) {
                        if (!member[d]) {
                            if (excluded[d]) return false;
                            member[d] = 1;
                        }
                        if (d == 0) break;
                    }
                    changed = true;
                }
        }
        return true;
    };

    std::set<std::set<ElementSet>> out;
    std::size_t nodes = 0;

    auto emit = [&](const std::vector<char>& member) {
        // the propagated fixpoint already satisfies (MI1)/(MI2); re-verify
        // to keep the enumeration honest
        std::vector<std::uint32_t> family;
        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask)
            if (member[mask]) family.push_back(mask);
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i; j < family.size(); ++j) {
                std::uint32_t a = family[i], b = family[j];
                if (rk[a & b] + rk[a | b] == rk[a] + rk[b] && !member[a | b])
                    return; // (MI2) violated
            }
        std::set<ElementSet> named;
        for (std::uint32_t f : family) named.insert(m.set_of(f));
        out.insert(std::move(named));
    };

    // `member` arrives propagated and consistent with `excluded`
    auto rec = [&](auto&& self, std::size_t i, std::vector<char> member) -> void {
        if (++nodes > node_budget)
            throw Error("modular-ideal enumeration exceeded its node budget");
        if (i == dependents.size()) {
            emit(member);
            return;
        }
        std::uint32_t mask = dependents[i];
        if (!member[mask]) {
            // exclusion: nothing forces `mask` yet, so the current fixpoint
            // remains valid unchanged
            excluded[mask] = 1;
            self(self, i + 1, member);
            excluded[mask] = 0;
            // inclusion: force the set in, then re-close
            member[mask] = 1;
            for (std::uint32_t d = mask;; d = (d - 1) & mask) {
                if (!member[d]) {
                    if (excluded[d]) return; // a subset was already excluded
                    member[d] = 1;
                }
                if (d == 0) break;
            }
            if (!propagate(member)) return;
        }
        self(self, i + 1, std::move(member));
    };
    if (propagate(initial)) rec(rec, 0, std::move(initial));
    return out;
}

} // namespace pytharr

#endif // PYTHARR_MATROID_HPP
