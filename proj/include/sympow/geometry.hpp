#pragma once

#include <sympow/polyring.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympow {

namespace detail {

// scale so the first nonzero coordinate is 1; canonical representative
inline std::array<FieldElement, 3> normalize_triple(std::array<FieldElement, 3> c) {
    for (auto& x : c) {
        if (x.is_zero()) continue;
        FieldElement inv = x.inverse();
        for (auto& y : c) y = inv * y;
        return c;
    }
    throw std::invalid_argument("zero coordinate triple");
}

inline std::strong_ordering compare_triple(const std::array<FieldElement, 3>& a,
                                           const std::array<FieldElement, 3>& b) {
    for (int i = 0; i < 3; ++i) {
        auto c = a[i].compare(b[i]);
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

inline std::array<FieldElement, 3> cross_triple(const std::array<FieldElement, 3>& u,
                                                const std::array<FieldElement, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

}  // namespace detail

// Point of P^2 in canonical coordinates (first nonzero coordinate = 1), so
// structural equality decides projective equality.
class ProjPoint {
public:
    ProjPoint(FieldElement x, FieldElement y, FieldElement z)
        : c_(detail::normalize_triple({std::move(x), std::move(y), std::move(z)})) {}

    explicit ProjPoint(std::array<FieldElement, 3> c) : c_(detail::normalize_triple(std::move(c))) {}

    const std::array<FieldElement, 3>& coords() const { return c_; }
    const FieldElement& operator[](int i) const { return c_[i]; }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return detail::compare_triple(a.c_, b.c_) == std::strong_ordering::equal;
    }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        return detail::compare_triple(a.c_, b.c_) == std::strong_ordering::less;
    }

    std::string str() const {
        return "(" + format_element(c_[0]) + " : " + format_element(c_[1]) + " : " + format_element(c_[2]) + ")";
    }

private:
    std::array<FieldElement, 3> c_;
};

// Line u*x + v*y + w*z = 0, same canonical normalization as points.
class ProjLine {
public:
    ProjLine(FieldElement u, FieldElement v, FieldElement w)
        : c_(detail::normalize_triple({std::move(u), std::move(v), std::move(w)})) {}

    explicit ProjLine(std::array<FieldElement, 3> c) : c_(detail::normalize_triple(std::move(c))) {}

    const std::array<FieldElement, 3>& coeffs() const { return c_; }
    const FieldElement& operator[](int i) const { return c_[i]; }

    HomogeneousForm form(const FieldSpec& spec) const { return HomogeneousForm::linear(spec, c_[0], c_[1], c_[2]); }

    friend bool operator==(const ProjLine& a, const ProjLine& b) {
        return detail::compare_triple(a.c_, b.c_) == std::strong_ordering::equal;
    }
    friend bool operator<(const ProjLine& a, const ProjLine& b) {
        return detail::compare_triple(a.c_, b.c_) == std::strong_ordering::less;
    }

    std::string str() const {
        return "[" + format_element(c_[0]) + " : " + format_element(c_[1]) + " : " + format_element(c_[2]) + "]";
    }

private:
    std::array<FieldElement, 3> c_;
};

inline bool incident(const ProjPoint& p, const ProjLine& l) {
    FieldElement dot = p[0] * l[0];
    dot += p[1] * l[1];
    dot += p[2] * l[2];
    return dot.is_zero();
}

inline ProjPoint meet(const ProjLine& l1, const ProjLine& l2) {
    if (l1 == l2) throw std::invalid_argument("meet of equal lines");
    return ProjPoint(detail::cross_triple(l1.coeffs(), l2.coeffs()));
}

inline ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
    if (p == q) throw std::invalid_argument("line through equal points");
    return ProjLine(detail::cross_triple(p.coords(), q.coords()));
}

struct SingularPoint {
    ProjPoint point;
    int multiplicity;             // = number of incident input lines, always >= 2
    std::vector<size_t> lines;    // sorted indices into the input line list
};

// Intersection points of >= 2 lines, deduplicated by canonical coordinates
// and sorted; multiplicity is recomputed as the count of incident lines.
class SingularLocus {
public:
    SingularLocus() = default;
    explicit SingularLocus(std::vector<SingularPoint> pts) : pts_(std::move(pts)) {}

    const std::vector<SingularPoint>& points() const { return pts_; }
    size_t size() const { return pts_.size(); }

    std::map<int, size_t> profile() const {
        std::map<int, size_t> prof;
        for (const auto& sp : pts_) ++prof[sp.multiplicity];
        return prof;
    }

    std::vector<SingularPoint> with_multiplicity(int m) const {
        std::vector<SingularPoint> out;
        for (const auto& sp : pts_)
            if (sp.multiplicity == m) out.push_back(sp);
        return out;
    }

private:
    std::vector<SingularPoint> pts_;
};

inline SingularLocus singular_locus(std::span<const ProjLine> lines) {
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] == lines[j])
                throw std::invalid_argument("duplicate line at indices " + std::to_string(i) + ", " +
                                            std::to_string(j));
    std::map<ProjPoint, std::vector<size_t>> found;
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j)
            found.emplace(meet(lines[i], lines[j]), std::vector<size_t>{});
    std::vector<SingularPoint> pts;
    pts.reserve(found.size());
    size_t pair_count = 0;
    for (auto& [p, idx] : found) {
        for (size_t i = 0; i < lines.size(); ++i)
            if (incident(p, lines[i])) idx.push_back(i);
        if (idx.size() < 2) throw std::logic_error("intersection point incident to < 2 lines");
        pair_count += idx.size() * (idx.size() - 1) / 2;
        pts.push_back(SingularPoint{p, static_cast<int>(idx.size()), idx});
    }
    // every unordered pair of lines meets in exactly one stored point
    if (pair_count != lines.size() * (lines.size() - 1) / 2)
        throw std::logic_error("incidence pair count mismatch; deduplication is broken");
    return SingularLocus(std::move(pts));
}

inline SingularLocus singular_locus(const std::vector<ProjLine>& lines) {
    return singular_locus(std::span<const ProjLine>(lines));
}

struct IncidenceTable {
    int multiplicity_filter;
    size_t line_count;
    std::vector<SingularPoint> rows;  // sorted by canonical point coordinates

    // one column per line; rows marked '+' where incident
    void write_csv(std::ostream& os) const {
        os << "point";
        for (size_t i = 1; i <= line_count; ++i) os << ",l" << i;
        os << "\n";
        size_t n = 1;
        for (const auto& sp : rows) {
            os << "P" << n++;
            std::set<size_t> inc(sp.lines.begin(), sp.lines.end());
            for (size_t i = 0; i < line_count; ++i) os << (inc.count(i) ? ",+" : ",");
            os << "\n";
        }
    }
};

inline IncidenceTable incidence_table(const SingularLocus& locus, int multiplicity_filter, size_t line_count) {
    IncidenceTable t{multiplicity_filter, line_count, locus.with_multiplicity(multiplicity_filter)};
    return t;
}

}  // namespace sympow
