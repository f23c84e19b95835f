#pragma once

#include <sympow/numberfield.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace sympow {

namespace detail {

// block-partitioned parallel loop; writes must be disjoint per index, so the
// result is identical for every thread count
template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 16) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t t = std::min<size_t>(static_cast<size_t>(threads), n);
    size_t chunk = (n + t - 1) / t;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (size_t w = 0; w < t; ++w) {
        size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

struct RrefOptions {
    int threads = 1;
    // optional pivot-size heuristic; the default rule (first candidate row)
    // is the deterministic baseline and both rules yield the same RREF
    bool size_heuristic = false;
};

class DenseMatrix {
public:
    DenseMatrix(const FieldSpec& spec, size_t rows, size_t cols)
        : spec_(&spec), cols_(cols), rows_(rows, std::vector<FieldElement>(cols, FieldElement(spec))) {}

    static DenseMatrix from_rows(const FieldSpec& spec, std::vector<std::vector<FieldElement>> rows, size_t cols) {
        DenseMatrix m(spec, 0, cols);
        m.rows_ = std::move(rows);
        for (const auto& r : m.rows_)
            if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
        return m;
    }

    const FieldSpec& spec() const { return *spec_; }
    size_t rows() const { return rows_.size(); }
    size_t cols() const { return cols_; }

    FieldElement& at(size_t i, size_t j) { return rows_[i][j]; }
    const FieldElement& at(size_t i, size_t j) const { return rows_[i][j]; }
    const std::vector<FieldElement>& row(size_t i) const { return rows_[i]; }

    void append_row(std::vector<FieldElement> r) {
        if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
        rows_.push_back(std::move(r));
    }

    DenseMatrix transpose() const {
        DenseMatrix t(*spec_, cols_, rows());
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols_; ++j) t.rows_[j][i] = rows_[i][j];
        return t;
    }

    // A * v for a column vector v of length cols()
    std::vector<FieldElement> apply(std::span<const FieldElement> v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<FieldElement> out(rows(), FieldElement(*spec_));
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!rows_[i][j].is_zero() && !v[j].is_zero()) out[i] += rows_[i][j] * v[j];
        return out;
    }

private:
    friend std::pair<struct Subspace, size_t> rref(DenseMatrix, const RrefOptions&);

    const FieldSpec* spec_;
    size_t cols_;
    std::vector<std::vector<FieldElement>> rows_;
};

// Vector subspace given by a canonical basis: rows of an RREF matrix with
// strictly increasing pivot columns. Two subspaces are equal iff the bases
// are structurally equal.
struct Subspace {
    size_t ambient;
    DenseMatrix basis;
    std::vector<size_t> pivots;

    size_t dim() const { return basis.rows(); }
    const FieldSpec& spec() const { return basis.spec(); }
};

inline Subspace zero_subspace(const FieldSpec& spec, size_t ambient) {
    return Subspace{ambient, DenseMatrix(spec, 0, ambient), {}};
}

inline Subspace full_subspace(const FieldSpec& spec, size_t ambient) {
    DenseMatrix m(spec, ambient, ambient);
    std::vector<size_t> piv(ambient);
    for (size_t i = 0; i < ambient; ++i) {
        m.at(i, i) = FieldElement(spec, Rational(1));
        piv[i] = i;
    }
    return Subspace{ambient, std::move(m), std::move(piv)};
}

// Canonical reduced row echelon form of the row space. Pivot rule: rows are
// pre-sorted by leading-entry position, then the first candidate row with a
// nonzero entry in the leftmost unfinished column wins (or the smallest row
// by coefficient size when the heuristic is enabled). The pivot sequence is
// fixed, so the output is identical for every thread count.
inline std::pair<Subspace, size_t> rref(DenseMatrix m, const RrefOptions& opts = {}) {
    const size_t ncols = m.cols();
    auto& rows = m.rows_;

    auto leading = [&](const std::vector<FieldElement>& r) {
        for (size_t j = 0; j < r.size(); ++j)
            if (!r[j].is_zero()) return j;
        return r.size();
    };
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const auto& a, const auto& b) { return leading(a) < leading(b); });

    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < ncols && r < rows.size(); ++col) {
        size_t sel = rows.size();
        if (!opts.size_heuristic) {
            for (size_t i = r; i < rows.size(); ++i)
                if (!rows[i][col].is_zero()) { sel = i; break; }
        } else {
            size_t best_size = 0;
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                size_t sz = 0;
                for (const auto& x : rows[i]) sz += x.bit_size();
                if (sel == rows.size() || sz < best_size) { sel = i; best_size = sz; }
            }
        }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);

        FieldElement inv = rows[r][col].inverse();
        for (size_t j = col; j < ncols; ++j)
            if (!rows[r][j].is_zero()) rows[r][j] = inv * rows[r][j];

        const auto& prow = rows[r];
        detail::parallel_for(rows.size(), opts.threads, [&](size_t i) {
            if (i == r || rows[i][col].is_zero()) return;
            FieldElement f = rows[i][col];
            for (size_t j = col; j < ncols; ++j)
                if (!prow[j].is_zero()) rows[i][j].sub_mul(f, prow[j]);
        });

        pivots.push_back(col);
        ++r;
    }

    rows.resize(r, std::vector<FieldElement>(ncols, FieldElement(m.spec())));
    size_t rank = r;
    Subspace s{ncols, std::move(m), std::move(pivots)};
    return {std::move(s), rank};
}

// Basis of { v : m * v = 0 }, canonicalized. dim = cols - rank, verified.
inline Subspace nullspace(const DenseMatrix& m, const RrefOptions& opts = {}) {
    const FieldSpec& spec = m.spec();
    const size_t n = m.cols();
    auto [rs, rank] = rref(m, opts);

    std::vector<bool> is_pivot(n, false);
    for (size_t p : rs.pivots) is_pivot[p] = true;

    std::vector<std::vector<FieldElement>> vecs;
    for (size_t fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<FieldElement> v(n, FieldElement(spec));
        v[fc] = FieldElement(spec, Rational(1));
        for (size_t ri = 0; ri < rs.pivots.size(); ++ri) v[rs.pivots[ri]] = -rs.basis.at(ri, fc);
        vecs.push_back(std::move(v));
    }
    auto [ns, nrank] = rref(DenseMatrix::from_rows(spec, std::move(vecs), n), opts);
    if (nrank != n - rank) throw std::logic_error("rank-nullity violated in nullspace computation");
    return std::move(ns);
}

// Coordinates of v in the subspace basis, or nullopt when v is outside.
inline std::optional<std::vector<FieldElement>> in_span(const Subspace& s, std::span<const FieldElement> v) {
    if (v.size() != s.ambient) throw std::invalid_argument("vector length != ambient dimension");
    std::vector<FieldElement> w(v.begin(), v.end());
    std::vector<FieldElement> coords;
    coords.reserve(s.dim());
    for (size_t i = 0; i < s.dim(); ++i) {
        FieldElement c = w[s.pivots[i]];
        coords.push_back(c);
        if (c.is_zero()) continue;
        for (size_t j = s.pivots[i]; j < s.ambient; ++j)
            if (!s.basis.at(i, j).is_zero()) w[j].sub_mul(c, s.basis.at(i, j));
    }
    for (const auto& x : w)
        if (!x.is_zero()) return std::nullopt;
    return coords;
}

inline Subspace subspace_sum(const FieldSpec& spec, std::span<const Subspace> parts, const RrefOptions& opts = {}) {
    if (parts.empty()) throw std::invalid_argument("empty subspace sum");
    size_t ambient = parts[0].ambient;
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& p : parts) {
        if (p.ambient != ambient) throw std::invalid_argument("ambient dimension mismatch in sum");
        for (size_t i = 0; i < p.dim(); ++i) rows.push_back(p.basis.row(i));
    }
    auto [s, rank] = rref(DenseMatrix::from_rows(spec, std::move(rows), ambient), opts);
    (void)rank;
    return std::move(s);
}

inline bool contains(const Subspace& s, const Subspace& t) {
    if (s.ambient != t.ambient) throw std::invalid_argument("ambient dimension mismatch");
    for (size_t i = 0; i < t.dim(); ++i)
        if (!in_span(s, t.basis.row(i))) return false;
    return true;
}

}  // namespace sympow
