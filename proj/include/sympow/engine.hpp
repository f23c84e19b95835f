#pragma once

#include <sympow/geometry.hpp>
#include <sympow/linalg.hpp>
#include <sympow/polyring.hpp>

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympow {

struct FatPoint {
    ProjPoint point;
    int multiplicity;  // >= 1
};

// Finite set of distinct points with assigned multiplicities. The radical
// ideal of the point set is the all-ones case; the m-th symbolic power
// corresponds to scaling every multiplicity by m.
class FatPointScheme {
public:
    FatPointScheme(const FieldSpec& spec, std::vector<FatPoint> points, std::string label = "")
        : spec_(&spec), pts_(std::move(points)), label_(std::move(label)) {
        std::set<ProjPoint> seen;
        for (const auto& fp : pts_) {
            if (fp.multiplicity < 1) throw std::invalid_argument("point multiplicity must be >= 1");
            if (!seen.insert(fp.point).second) throw std::invalid_argument("duplicate point in scheme");
        }
    }

    static FatPointScheme radical(const FieldSpec& spec, const std::vector<ProjPoint>& points,
                                  std::string label = "") {
        std::vector<FatPoint> fps;
        fps.reserve(points.size());
        for (const auto& p : points) fps.push_back(FatPoint{p, 1});
        return FatPointScheme(spec, std::move(fps), std::move(label));
    }

    FatPointScheme scaled(int m) const {
        if (m < 1) throw std::invalid_argument("scaling factor must be >= 1");
        std::vector<FatPoint> fps = pts_;
        for (auto& fp : fps) fp.multiplicity *= m;
        return FatPointScheme(*spec_, std::move(fps), label_);
    }

    const FieldSpec& spec() const { return *spec_; }
    const std::vector<FatPoint>& points() const { return pts_; }
    size_t size() const { return pts_.size(); }
    const std::string& label() const { return label_; }

    bool is_radical() const {
        for (const auto& fp : pts_)
            if (fp.multiplicity != 1) return false;
        return true;
    }

    int max_multiplicity() const {
        int m = 0;
        for (const auto& fp : pts_) m = std::max(m, fp.multiplicity);
        return m;
    }

    // number of linear conditions imposed in any single degree
    size_t condition_count() const {
        size_t n = 0;
        for (const auto& fp : pts_) n += static_cast<size_t>(fp.multiplicity) * (fp.multiplicity + 1) / 2;
        return n;
    }

private:
    const FieldSpec* spec_;
    std::vector<FatPoint> pts_;
    std::string label_;
};

// Exact basis of a degree-d slice of an ideal, in monomial_basis(d)
// coordinates.
struct GradedPiece {
    int degree;
    Subspace space;
    std::string provenance;

    size_t dim() const { return space.dim(); }
};

namespace detail {

// one condition row per order-(m-1) partial: entries are the partials of the
// basis monomials evaluated at the point
inline void append_condition_rows(std::vector<std::vector<FieldElement>>& rows, const FieldSpec& spec,
                                  const std::vector<Monomial>& basis, const ProjPoint& p, int mult, int d) {
    auto pw = point_powers(spec, p.coords(), d);
    const int k = mult - 1;
    for (int dx = k; dx >= 0; --dx) {
        for (int dy = k - dx; dy >= 0; --dy) {
            const int dz = k - dx - dy;
            std::vector<FieldElement> row;
            row.reserve(basis.size());
            for (const auto& m : basis) {
                if (m.e[0] < dx || m.e[1] < dy || m.e[2] < dz) {
                    row.push_back(FieldElement(spec));
                    continue;
                }
                long scale = falling_factorial(m.e[0], dx) * falling_factorial(m.e[1], dy) *
                             falling_factorial(m.e[2], dz);
                FieldElement v = FieldElement(spec, Rational(scale));
                v *= pw[0][m.e[0] - dx];
                v *= pw[1][m.e[1] - dy];
                v *= pw[2][m.e[2] - dz];
                row.push_back(std::move(v));
            }
            rows.push_back(std::move(row));
        }
    }
}

}  // namespace detail

// Degree-d forms vanishing at every point of the scheme with at least its
// multiplicity: the nullspace of the interpolation condition matrix. Every
// basis element is re-verified against vanishes_to_order before returning.
inline GradedPiece fat_graded_piece(const FatPointScheme& s, int d, const RrefOptions& opts = {}) {
    if (d < 0) throw std::invalid_argument("negative degree");
    const FieldSpec& spec = s.spec();
    const size_t ambient = graded_dimension(d);
    std::string provenance = "fat-piece(d=" + std::to_string(d) + ", points=" + std::to_string(s.size()) + ")";

    // a nonzero form of degree d has multiplicity at most d at any point
    if (s.max_multiplicity() > d) return GradedPiece{d, zero_subspace(spec, ambient), provenance};

    if (s.size() == 0) return GradedPiece{d, full_subspace(spec, ambient), provenance};

    auto basis = monomial_basis(d);
    std::vector<std::vector<FieldElement>> rows;
    rows.reserve(s.condition_count());
    for (const auto& fp : s.points())
        detail::append_condition_rows(rows, spec, basis, fp.point, fp.multiplicity, d);

    Subspace space = nullspace(DenseMatrix::from_rows(spec, std::move(rows), ambient), opts);

    for (size_t i = 0; i < space.dim(); ++i) {
        HomogeneousForm f = form_from_vector(spec, d, space.basis.row(i));
        for (const auto& fp : s.points())
            if (!vanishes_to_order(f, fp.point.coords(), fp.multiplicity))
                throw std::logic_error("fat piece basis element fails multiplicity re-verification");
    }
    return GradedPiece{d, std::move(space), provenance};
}

// Least degree with a nonzero piece; computed by searching upward, never
// assumed from expected dimension counts.
inline int alpha(const FatPointScheme& s, const RrefOptions& opts = {}) {
    if (s.size() == 0) throw std::invalid_argument("alpha of empty scheme");
    const int hard_cap = static_cast<int>(2 * s.condition_count() + 2);
    for (int d = 1; d <= hard_cap; ++d)
        if (fat_graded_piece(s, d, opts).dim() > 0) return d;
    throw std::logic_error("alpha search exceeded its bound");
}

namespace detail {

// nondecreasing compositions of total into r parts, each >= min_part
inline void compositions(int total, int r, int min_part, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (r == 1) {
        if (total >= min_part) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = min_part; first * r <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, r - 1, first, cur, out);
        cur.pop_back();
    }
}

// all products of one basis form per factor; indices are nondecreasing
// within runs of equal degree, since those products coincide up to order
inline void split_products(const std::vector<int>& split,
                           const std::map<int, std::vector<HomogeneousForm>>& piece_forms, size_t pos,
                           size_t min_index, const HomogeneousForm& acc,
                           std::vector<std::vector<FieldElement>>& rows) {
    if (pos == split.size()) {
        rows.push_back(coefficient_vector(acc));
        return;
    }
    const auto& forms = piece_forms.at(split[pos]);
    size_t start = (pos > 0 && split[pos] == split[pos - 1]) ? min_index : 0;
    for (size_t i = start; i < forms.size(); ++i) split_products(split, piece_forms, pos + 1, i, acc * forms[i], rows);
}

}  // namespace detail

// Degree-d slice of the r-th ordinary power of the radical ideal of the
// scheme: the sum over splits d_1 <= ... <= d_r (each >= alpha) of the spans
// of products of basis elements of the factor slices. Any degree-d element
// of I^r is a combination of h*g_1*...*g_r; absorbing h into one factor puts
// it in such a split, so no generator computation is needed.
inline GradedPiece ordinary_power_piece(const FatPointScheme& s, int r, int d, const RrefOptions& opts = {}) {
    if (!s.is_radical()) throw std::invalid_argument("ordinary power piece expects a radical scheme");
    if (r < 1) throw std::invalid_argument("power must be >= 1");
    if (d < 0) throw std::invalid_argument("negative degree");
    const FieldSpec& spec = s.spec();
    std::string provenance =
        "ordinary-power-piece(r=" + std::to_string(r) + ", d=" + std::to_string(d) + ", points=" + std::to_string(s.size()) + ")";

    if (r == 1) {
        GradedPiece p = fat_graded_piece(s, d, opts);
        p.provenance = provenance;
        return p;
    }

    const size_t ambient = graded_dimension(d);
    const int a = alpha(s, opts);
    if (d < r * a) return GradedPiece{d, zero_subspace(spec, ambient), provenance};

    std::vector<std::vector<int>> splits;
    std::vector<int> cur;
    detail::compositions(d, r, a, cur, splits);

    // factor slices, skipping splits with an empty factor
    std::map<int, std::vector<HomogeneousForm>> piece_forms;
    for (const auto& split : splits)
        for (int e : split)
            if (!piece_forms.count(e)) {
                GradedPiece piece = fat_graded_piece(s, e, opts);
                std::vector<HomogeneousForm> forms;
                forms.reserve(piece.dim());
                for (size_t i = 0; i < piece.dim(); ++i) forms.push_back(form_from_vector(spec, e, piece.space.basis.row(i)));
                piece_forms.emplace(e, std::move(forms));
            }

    std::vector<std::vector<FieldElement>> rows;
    HomogeneousForm one = HomogeneousForm::constant(spec, FieldElement(spec, Rational(1)));
    for (const auto& split : splits) {
        bool nonzero = true;
        for (int e : split)
            if (piece_forms.at(e).empty()) { nonzero = false; break; }
        if (!nonzero) continue;
        detail::split_products(split, piece_forms, 0, 0, one, rows);
    }
    if (rows.empty()) return GradedPiece{d, zero_subspace(spec, ambient), provenance};

    auto [space, rank] = rref(DenseMatrix::from_rows(spec, std::move(rows), ambient), opts);
    (void)rank;
    return GradedPiece{d, std::move(space), provenance};
}

struct PointCertificate {
    size_t point_index;
    int required_order;
    bool ok;
    std::array<int, 3> first_failing_partial{0, 0, 0};
    std::string failing_value;  // empty when ok
};

struct MembershipResult {
    bool holds = true;
    std::vector<PointCertificate> certificates;
};

// f in I^(m) of the scheme: vanishing to order m * multiplicity at every
// point, with a certificate per point naming the first failing partial.
inline MembershipResult symbolic_membership(const HomogeneousForm& f, const FatPointScheme& s, int m) {
    if (m < 1) throw std::invalid_argument("symbolic power must be >= 1");
    MembershipResult res;
    for (size_t idx = 0; idx < s.size(); ++idx) {
        const auto& fp = s.points()[idx];
        const int required = m * fp.multiplicity;
        PointCertificate cert{idx, required, true, {0, 0, 0}, ""};
        auto pw = detail::point_powers(f.spec(), fp.point.coords(), f.degree());
        for (int total = 0; total < required && cert.ok; ++total) {
            for (int dx = total; dx >= 0 && cert.ok; --dx) {
                for (int dy = total - dx; dy >= 0; --dy) {
                    const std::array<int, 3> order{dx, dy, total - dx - dy};
                    FieldElement v = detail::derivative_value_at(f, order, pw);
                    if (!v.is_zero()) {
                        cert.ok = false;
                        cert.first_failing_partial = order;
                        cert.failing_value = format_element(v);
                        break;
                    }
                }
            }
        }
        if (!cert.ok) res.holds = false;
        res.certificates.push_back(std::move(cert));
    }
    return res;
}

// Certified outcome of one containment check. Non-membership of the witness
// in the degree-d slice lifts to the full ideal because I^r is homogeneous.
struct WitnessReport {
    std::string scheme_label;
    size_t point_count = 0;
    int m = 0;
    int r = 0;
    int degree = 0;
    MembershipResult symbolic;
    bool symbolic_membership_holds = false;
    bool ordinary_membership = false;
    size_t dim_symbolic_piece = 0;
    size_t dim_ordinary_piece = 0;
    std::string verdict;  // "non-containment" | "not-established"
};

// Variant taking a precomputed ordinary slice (it must be
// ordinary_power_piece(s, r, deg witness)); callers running several checks
// against one scheme and degree reuse the expensive slice this way.
inline WitnessReport check_noncontainment_with(const FatPointScheme& s, int m, int r,
                                               const HomogeneousForm& witness, const GradedPiece& ordinary,
                                               const RrefOptions& opts = {}) {
    if (ordinary.degree != witness.degree()) throw std::invalid_argument("ordinary piece degree != witness degree");
    WitnessReport rep;
    rep.scheme_label = s.label();
    rep.point_count = s.size();
    rep.m = m;
    rep.r = r;
    rep.degree = witness.degree();

    rep.symbolic = symbolic_membership(witness, s, m);
    rep.symbolic_membership_holds = rep.symbolic.holds;

    std::vector<FieldElement> wvec = coefficient_vector(witness);

    GradedPiece fat = fat_graded_piece(s.scaled(m), witness.degree(), opts);
    rep.dim_symbolic_piece = fat.dim();
    // the derivative route and the interpolation route must agree
    if (in_span(fat.space, wvec).has_value() != rep.symbolic.holds)
        throw std::logic_error("membership routes disagree on the witness");

    rep.dim_ordinary_piece = ordinary.dim();
    rep.ordinary_membership = in_span(ordinary.space, wvec).has_value();

    rep.verdict = (rep.symbolic.holds && !rep.ordinary_membership) ? "non-containment" : "not-established";
    return rep;
}

inline WitnessReport check_noncontainment(const FatPointScheme& s, int m, int r, const HomogeneousForm& witness,
                                          const RrefOptions& opts = {}) {
    GradedPiece ord = ordinary_power_piece(s, r, witness.degree(), opts);
    return check_noncontainment_with(s, m, r, witness, ord, opts);
}

// I^(m) inside I^r in degree d, decided on the graded slices.
inline bool graded_containment(const FatPointScheme& s, int m, int r, int d, const RrefOptions& opts = {}) {
    GradedPiece ord = ordinary_power_piece(s, r, d, opts);
    GradedPiece fat = fat_graded_piece(s.scaled(m), d, opts);
    return contains(ord.space, fat.space);
}

// Basis of a complement of (I^r)_d inside I^(m)_d: elements whose reduction
// against the ordinary slice is nonzero. Empty iff graded containment holds.
inline std::vector<HomogeneousForm> witness_search(const FatPointScheme& s, int m, int r, int d,
                                                   const RrefOptions& opts = {}) {
    const FieldSpec& spec = s.spec();
    GradedPiece fat = fat_graded_piece(s.scaled(m), d, opts);
    GradedPiece ord = ordinary_power_piece(s, r, d, opts);

    std::vector<HomogeneousForm> out;
    Subspace acc = std::move(ord.space);
    for (size_t i = 0; i < fat.dim(); ++i) {
        const auto& v = fat.space.basis.row(i);
        if (in_span(acc, v)) continue;
        out.push_back(form_from_vector(spec, d, v));
        std::vector<std::vector<FieldElement>> rows;
        for (size_t k = 0; k < acc.dim(); ++k) rows.push_back(acc.basis.row(k));
        rows.push_back(v);
        auto [next, rank] = rref(DenseMatrix::from_rows(spec, std::move(rows), acc.ambient), opts);
        (void)rank;
        acc = std::move(next);
    }
    return out;
}

}  // namespace sympow
