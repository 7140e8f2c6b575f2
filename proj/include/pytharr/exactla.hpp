// ============================================================================
//  pytharr/exactla.hpp
//
//  Exact linear algebra over arbitrary-precision rationals.
//
//  Everything downstream (arrangements, matroids, the derived edge-space
//  arrangement) reduces to polynomial identities over Q, so this layer is
//  deliberately tolerance-free: rank, determinant, solving and subspace
//  comparisons are all exact decisions.  Over exact rationals any nonzero
//  pivot is a valid pivot, so elimination simply scans the remaining block
//  for one; there are no tolerance parameters anywhere.  Scale is desk-sized
//  throughout (<= ~12 edges, ambient dim <= 4, edge space dim <= 12).
//
//  An AffineSubspace is either Empty or given by a base point plus a list of
//  linearly independent direction vectors.  Equality of subspaces is decided
//  by mutual containment rather than via a canonical form; intersection goes
//  through the dual (equation) representation and back.
// ============================================================================
#ifndef PYTHARR_EXACTLA_HPP
#define PYTHARR_EXACTLA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pytharr/errors.hpp"

namespace pytharr {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Rational parsing / formatting.  The wire format is "p/q" or the integer
// shorthand "n"; GMP's own string conversions use exactly that shape, but we
// validate eagerly so malformed input surfaces as ParseError with the
// offending token, never as a GMP abort.
// ---------------------------------------------------------------------------

inline bool looks_like_rational(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    auto digits = [&](std::size_t& k) {
        std::size_t start = k;
        while (k < s.size() && s[k] >= '0' && s[k] <= '9') ++k;
        return k > start;
    };
    if (s[i] == '+' || s[i] == '-') ++i;
    if (!digits(i)) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    std::size_t denom_start = i;
    if (!digits(i) || i != s.size()) return false;
    // all-zero denominator is invalid
    for (std::size_t k = denom_start; k < i; ++k)
        if (s[k] != '0') return true;
    return false;
}

inline Rational parse_rational(const std::string& s) {
    if (!looks_like_rational(s))
        throw ParseError("not a rational literal: \"" + s + "\" (expected \"n\" or \"p/q\")");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw ParseError("not a rational literal: \"" + s + "\"");
    r.canonicalize();
    return r;
}

inline std::string format_rational(const Rational& r) {
    // mpq_class arithmetic keeps values canonical, but the (num, den)
    // constructor does not reduce; normalize a copy before printing.
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

// Reduced rational from a numerator/denominator pair.
inline Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// Small vector helpers.
// ---------------------------------------------------------------------------

inline bool is_zero_vector(const Vector& v) {
    for (const Rational& x : v)
        if (x != 0) return false;
    return true;
}

inline int compare_vectors(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

inline Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot: vectors of dim " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vector subtract(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("subtract: vectors of dim " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("add: vectors of dim " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vector scale(const Rational& c, const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

// ---------------------------------------------------------------------------
// Matrix: a rectangular list of rows plus an explicit column count, so that
// 0-row matrices still know their width (rank of a 0 x n matrix is 0).
// ---------------------------------------------------------------------------

struct Matrix {
    std::size_t cols = 0;
    std::vector<Vector> rows;

    Matrix() = default;
    explicit Matrix(std::size_t n_cols) : cols(n_cols) {}
    Matrix(std::size_t n_cols, std::vector<Vector> r) : cols(n_cols), rows(std::move(r)) {
        for (const Vector& row : rows)
            if (row.size() != cols)
                throw DimensionMismatch("matrix row of dim " + std::to_string(row.size()) +
                                        " in a matrix of width " + std::to_string(cols));
    }
    static Matrix from_rows(std::vector<Vector> r) {
        if (r.empty()) return Matrix(0);
        std::size_t w = r.front().size();
        return Matrix(w, std::move(r));
    }

    std::size_t row_count() const { return rows.size(); }
    void append_row(Vector v) {
        if (v.size() != cols)
            throw DimensionMismatch("append_row: dim " + std::to_string(v.size()) +
                                    " into a matrix of width " + std::to_string(cols));
        rows.push_back(std::move(v));
    }
};

// ---------------------------------------------------------------------------
// Gaussian elimination.  One worker computes the reduced row echelon form
// and pivot columns; rank/det/solve/kernel are all read off it.
// ---------------------------------------------------------------------------

struct Echelon {
    std::vector<Vector> rows;      // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column per retained row
    std::size_t cols = 0;

    std::size_t rank() const { return rows.size(); }
};

inline Echelon reduce(const Matrix& m) {
    Echelon e;
    e.cols = m.cols;
    std::vector<Vector> work = m.rows;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < work.size(); ++c) {
        // full search of the remaining block for a nonzero pivot in column c
        std::size_t p = r;
        while (p < work.size() && work[p][c] == 0) ++p;
        if (p == work.size()) continue;
        std::swap(work[r], work[p]);
        Rational inv = work[r][c];
        for (std::size_t j = c; j < m.cols; ++j) work[r][j] /= inv;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == r || work[i][c] == 0) continue;
            Rational f = work[i][c];
            for (std::size_t j = c; j < m.cols; ++j) work[i][j] -= f * work[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    work.resize(r);
    e.rows = std::move(work);
    return e;
}

inline std::size_t rank(const Matrix& m) { return reduce(m).rank(); }

inline Rational det(const Matrix& m) {
    if (m.row_count() != m.cols)
        throw NonSquare("det: " + std::to_string(m.row_count()) + " x " +
                        std::to_string(m.cols) + " matrix");
    std::size_t n = m.cols;
    std::vector<Vector> work = m.rows;
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && work[p][c] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(work[p], work[c]);
            d = -d;
        }
        d *= work[c][c];
        Rational inv = work[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (work[i][c] == 0) continue;
            Rational f = work[i][c] / inv;
            for (std::size_t j = c; j < n; ++j) work[i][j] -= f * work[c][j];
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// AffineSubspace.
// ---------------------------------------------------------------------------

class AffineSubspace {
public:
    static AffineSubspace empty(std::size_t ambient_dim) {
        AffineSubspace s;
        s.ambient_ = ambient_dim;
        s.empty_ = true;
        return s;
    }

    // base point plus independent directions; independence is verified.
    static AffineSubspace subspace(Vector base, std::vector<Vector> directions) {
        AffineSubspace s;
        s.ambient_ = base.size();
        s.empty_ = false;
        s.base_ = std::move(base);
        for (const Vector& d : directions)
            if (d.size() != s.ambient_)
                throw DimensionMismatch("subspace direction of dim " + std::to_string(d.size()) +
                                        " in ambient dim " + std::to_string(s.ambient_));
        Matrix dm(s.ambient_, directions);
        if (rank(dm) != directions.size())
            throw DimensionMismatch("subspace directions are linearly dependent");
        s.directions_ = std::move(directions);
        return s;
    }

    static AffineSubspace point(Vector p) { return subspace(std::move(p), {}); }

    static AffineSubspace whole_space(std::size_t ambient_dim) {
        Vector origin(ambient_dim, Rational(0));
        std::vector<Vector> dirs;
        for (std::size_t i = 0; i < ambient_dim; ++i) {
            Vector e(ambient_dim, Rational(0));
            e[i] = 1;
            dirs.push_back(std::move(e));
        }
        return subspace(std::move(origin), std::move(dirs));
    }

    bool is_empty() const { return empty_; }
    std::size_t ambient_dim() const { return ambient_; }
    const Vector& base() const {
        if (empty_) throw Error("base() of the empty subspace");
        return base_;
    }
    const std::vector<Vector>& directions() const { return directions_; }

    // dimension of the flat; the empty set carries none.
    std::optional<std::size_t> dimension() const {
        if (empty_) return std::nullopt;
        return directions_.size();
    }

    std::size_t codimension() const {
        if (empty_) throw Error("codimension() of the empty subspace");
        return ambient_ - directions_.size();
    }

    bool contains_point(const Vector& p) const {
        if (p.size() != ambient_)
            throw DimensionMismatch("contains_point: point dim " + std::to_string(p.size()) +
                                    " vs ambient " + std::to_string(ambient_));
        if (empty_) return false;
        Matrix m(ambient_, directions_);
        std::size_t r0 = rank(m);
        m.append_row(subtract(p, base_));
        return rank(m) == r0;
    }

    // is `other` a subset of this flat?
    bool contains(const AffineSubspace& other) const {
        if (other.ambient_ != ambient_)
            throw DimensionMismatch("contains: ambient dims differ");
        if (other.empty_) return true;
        if (empty_) return false;
        if (!contains_point(other.base_)) return false;
        Matrix m(ambient_, directions_);
        std::size_t r0 = rank(m);
        for (const Vector& d : other.directions_) {
            Matrix m2 = m;
            m2.append_row(d);
            if (rank(m2) != r0) return false;
        }
        return true;
    }

    // set equality via mutual containment.
    bool same_as(const AffineSubspace& other) const {
        return contains(other) && other.contains(*this);
    }

    // Canonical description: the reduced echelon basis of the direction space
    // together with the unique base point whose pivot coordinates vanish.
    // Equal flats agree component-wise, so the form works as an ordering key.
    std::pair<std::vector<Vector>, Vector> canonical_form() const {
        if (empty_) throw Error("canonical_form() of the empty subspace");
        Matrix dirs(ambient_, directions_);
        Echelon e = reduce(dirs);
        Vector b = base_;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            Rational f = b[e.pivots[i]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j) b[j] -= f * e.rows[i][j];
        }
        return {std::move(e.rows), std::move(b)};
    }

    // A dual description: rows n_i with right-hand sides c_i such that the
    // flat is exactly { x : n_i . x = c_i for all i }.  The empty flat has no
    // such description and asks for one in error.
    std::pair<Matrix, Vector> equations() const {
        if (empty_) throw Error("equations() of the empty subspace");
        Matrix dirs(ambient_, directions_);
        std::vector<Vector> normals = normal_space(dirs);
        Matrix a(ambient_);
        Vector b;
        for (Vector& n : normals) {
            b.push_back(dot(n, base_));
            a.append_row(std::move(n));
        }
        return {std::move(a), std::move(b)};
    }

private:
    // basis of { x : d . x = 0 for every direction row d }, i.e. the normals
    // to the flat.  Row-reduce the direction matrix and read the null space
    // off the free columns.
    static std::vector<Vector> normal_space(const Matrix& dirs) {
        Echelon e = reduce(dirs);
        std::vector<bool> is_pivot(dirs.cols, false);
        for (std::size_t c : e.pivots) is_pivot[c] = true;
        std::vector<Vector> out;
        for (std::size_t fc = 0; fc < dirs.cols; ++fc) {
            if (is_pivot[fc]) continue;
            Vector v(dirs.cols, Rational(0));
            v[fc] = 1;
            for (std::size_t i = 0; i < e.pivots.size(); ++i)
                v[e.pivots[i]] = -e.rows[i][fc];
            out.push_back(std::move(v));
        }
        return out;
    }

    std::size_t ambient_ = 0;
    bool empty_ = true;
    Vector base_;
    std::vector<Vector> directions_;
};

// ---------------------------------------------------------------------------
// solve: full solution set of a . x = b as an AffineSubspace.  Inconsistent
// systems yield the Empty subspace (a value, not an error); the directions of
// a nonempty answer are a kernel basis of a.
// ---------------------------------------------------------------------------

inline AffineSubspace solve(const Matrix& a, const Vector& b) {
    if (a.row_count() != b.size())
        throw DimensionMismatch("solve: " + std::to_string(a.row_count()) + " rows vs rhs dim " +
                                std::to_string(b.size()));
    Matrix aug(a.cols + 1);
    for (std::size_t i = 0; i < a.row_count(); ++i) {
        Vector row = a.rows[i];
        row.push_back(b[i]);
        aug.append_row(std::move(row));
    }
    Echelon e = reduce(aug);
    for (std::size_t c : e.pivots)
        if (c == a.cols) return AffineSubspace::empty(a.cols);

    Vector x(a.cols, Rational(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rows[i][a.cols];

    std::vector<bool> is_pivot(a.cols, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<Vector> dirs;
    for (std::size_t fc = 0; fc < a.cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vector v(a.cols, Rational(0));
        v[fc] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][fc];
        dirs.push_back(std::move(v));
    }
    return AffineSubspace::subspace(std::move(x), std::move(dirs));
}

// a basis of { x : m . x = 0 }.
inline std::vector<Vector> kernel(const Matrix& m) {
    return solve(m, Vector(m.row_count(), Rational(0))).directions();
}

inline AffineSubspace intersect(const AffineSubspace& s1, const AffineSubspace& s2) {
    if (s1.ambient_dim() != s2.ambient_dim())
        throw DimensionMismatch("intersect: ambient dims " + std::to_string(s1.ambient_dim()) +
                                " vs " + std::to_string(s2.ambient_dim()));
    if (s1.is_empty() || s2.is_empty()) return AffineSubspace::empty(s1.ambient_dim());
    auto [a1, b1] = s1.equations();
    auto [a2, b2] = s2.equations();
    Matrix a(a1.cols);
    Vector b;
    for (std::size_t i = 0; i < a1.row_count(); ++i) {
        a.append_row(a1.rows[i]);
        b.push_back(b1[i]);
    }
    for (std::size_t i = 0; i < a2.row_count(); ++i) {
        a.append_row(a2.rows[i]);
        b.push_back(b2[i]);
    }
    return solve(a, b);
}

} // namespace pytharr

#endif // PYTHARR_EXACTLA_HPP
