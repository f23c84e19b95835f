#pragma once

#include <sympow/numberfield.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympow {

// Exponent triple (i, j, k) for x^i y^j z^k. The global term order is graded
// lexicographic with x > y > z; maps iterate leading term first.
struct Monomial {
    std::array<int, 3> e{0, 0, 0};

    int degree() const { return e[0] + e[1] + e[2]; }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    // grlex descending: higher degree first, then lex with x > y > z
    friend bool grlex_before(const Monomial& a, const Monomial& b) {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
        if (a.e[1] != b.e[1]) return a.e[1] > b.e[1];
        return a.e[2] > b.e[2];
    }

    std::string str() const {
        static const char* names[3] = {"x", "y", "z"};
        std::string out;
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            if (!out.empty()) out += "*";
            out += names[v];
            if (e[v] > 1) out += "^" + std::to_string(e[v]);
        }
        return out.empty() ? "1" : out;
    }
};

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_before(a, b); }
};

// All C(d+2, 2) degree-d monomials in descending grlex order; this fixes the
// coordinate system used by coefficient vectors and graded pieces.
inline std::vector<Monomial> monomial_basis(int d) {
    if (d < 0) throw std::invalid_argument("negative degree");
    std::vector<Monomial> out;
    out.reserve(static_cast<size_t>(d + 2) * (d + 1) / 2);
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
            out.push_back(Monomial{{i, j, d - i - j}});
    return out;
}

inline size_t graded_dimension(int d) { return static_cast<size_t>(d + 2) * (d + 1) / 2; }

// Homogeneous polynomial in x, y, z of fixed degree over a cyclotomic field.
// Sparse storage: only nonzero terms are kept, all of degree exactly deg().
class HomogeneousForm {
public:
    using TermMap = std::map<Monomial, FieldElement, MonomialOrder>;

    HomogeneousForm(const FieldSpec& spec, int degree) : spec_(&spec), deg_(degree) {
        if (degree < 0) throw std::invalid_argument("negative degree");
    }

    static HomogeneousForm zero(const FieldSpec& spec, int degree) { return HomogeneousForm(spec, degree); }

    static HomogeneousForm constant(const FieldSpec& spec, FieldElement c) {
        HomogeneousForm f(spec, 0);
        f.set_coeff(Monomial{{0, 0, 0}}, std::move(c));
        return f;
    }

    // var: 0 = x, 1 = y, 2 = z
    static HomogeneousForm variable(const FieldSpec& spec, int var) {
        HomogeneousForm f(spec, 1);
        Monomial m;
        m.e[var] = 1;
        f.set_coeff(m, FieldElement(spec, Rational(1)));
        return f;
    }

    // u*x + v*y + w*z
    static HomogeneousForm linear(const FieldSpec& spec, const FieldElement& u, const FieldElement& v,
                                  const FieldElement& w) {
        HomogeneousForm f(spec, 1);
        f.set_coeff(Monomial{{1, 0, 0}}, u);
        f.set_coeff(Monomial{{0, 1, 0}}, v);
        f.set_coeff(Monomial{{0, 0, 1}}, w);
        return f;
    }

    const FieldSpec& spec() const { return *spec_; }
    int degree() const { return deg_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    FieldElement coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? FieldElement(*spec_) : it->second;
    }

    void set_coeff(const Monomial& m, FieldElement c) {
        if (m.degree() != deg_) throw std::invalid_argument("monomial degree != form degree");
        if (c.is_zero())
            terms_.erase(m);
        else
            terms_.insert_or_assign(m, std::move(c));
    }

    void add_to_coeff(const Monomial& m, const FieldElement& c) {
        if (m.degree() != deg_) throw std::invalid_argument("monomial degree != form degree");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    HomogeneousForm& operator+=(const HomogeneousForm& o) {
        check_compatible(o);
        if (deg_ != o.deg_) throw std::invalid_argument("degree mismatch in form addition");
        for (const auto& [m, c] : o.terms_) add_to_coeff(m, c);
        return *this;
    }

    HomogeneousForm& operator-=(const HomogeneousForm& o) {
        check_compatible(o);
        if (deg_ != o.deg_) throw std::invalid_argument("degree mismatch in form subtraction");
        for (const auto& [m, c] : o.terms_) add_to_coeff(m, -c);
        return *this;
    }

    friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { a += b; return a; }
    friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { a -= b; return a; }

    friend HomogeneousForm operator*(const FieldElement& c, const HomogeneousForm& f) {
        HomogeneousForm out(*f.spec_, f.deg_);
        if (c.is_zero()) return out;
        for (const auto& [m, v] : f.terms_) out.terms_.emplace(m, c * v);
        return out;
    }

    friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
        a.check_compatible(b);
        HomogeneousForm out(*a.spec_, a.deg_ + b.deg_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m{{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2]}};
                out.add_to_coeff(m, ca * cb);
            }
        }
        return out;
    }

    HomogeneousForm operator-() const {
        HomogeneousForm out(*spec_, deg_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
        a.check_compatible(b);
        return a.deg_ == b.deg_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            std::string cs = format_element(c);
            std::string body;
            if (m.degree() == 0) {
                body = cs;
            } else if (cs == "1") {
                body = m.str();
            } else if (cs == "-1") {
                body = "-" + m.str();
            } else {
                bool simple = cs.find(' ') == std::string::npos;
                body = (simple ? cs : "(" + cs + ")") + "*" + m.str();
            }
            if (out.empty()) {
                out = body;
            } else if (!body.empty() && body[0] == '-') {
                out += " - " + body.substr(1);
            } else {
                out += " + " + body;
            }
        }
        return out;
    }

private:
    void check_compatible(const HomogeneousForm& o) const {
        if (spec_ != o.spec_) throw std::invalid_argument("field spec mismatch between forms");
    }

    const FieldSpec* spec_;
    int deg_;
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const HomogeneousForm& f) { return os << f.str(); }

// Product of a list of forms; the empty product is the constant 1 (degree 0).
inline HomogeneousForm expand_product(const FieldSpec& spec, std::span<const HomogeneousForm> factors) {
    HomogeneousForm acc = HomogeneousForm::constant(spec, FieldElement(spec, Rational(1)));
    for (const auto& f : factors) acc = acc * f;
    return acc;
}

inline HomogeneousForm expand_product(const FieldSpec& spec, const std::vector<HomogeneousForm>& factors) {
    return expand_product(spec, std::span<const HomogeneousForm>(factors));
}

inline HomogeneousForm partial_derivative(const HomogeneousForm& f, int var) {
    if (var < 0 || var > 2) throw std::invalid_argument("variable index out of range");
    const FieldSpec& spec = f.spec();
    if (f.degree() == 0) return HomogeneousForm::zero(spec, 0);
    HomogeneousForm out(spec, f.degree() - 1);
    for (const auto& [m, c] : f.terms()) {
        if (m.e[var] == 0) continue;
        Monomial dm = m;
        dm.e[var] -= 1;
        out.add_to_coeff(dm, FieldElement(spec, Rational(m.e[var])) * c);
    }
    return out;
}

namespace detail {

// coordinate powers 0..max_pow for each of the three coordinates
inline std::array<std::vector<FieldElement>, 3> point_powers(const FieldSpec& spec,
                                                             const std::array<FieldElement, 3>& p, int max_pow) {
    std::array<std::vector<FieldElement>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        pw[v].reserve(max_pow + 1);
        pw[v].push_back(FieldElement(spec, Rational(1)));
        for (int k = 1; k <= max_pow; ++k) pw[v].push_back(pw[v].back() * p[v]);
    }
    return pw;
}

inline long falling_factorial(int n, int k) {
    long r = 1;
    for (int t = 0; t < k; ++t) r *= (n - t);
    return r;
}

// value of the (dx, dy, dz)-th partial of f at p, using precomputed powers
inline FieldElement derivative_value_at(const HomogeneousForm& f, const std::array<int, 3>& order,
                                        const std::array<std::vector<FieldElement>, 3>& pw) {
    const FieldSpec& spec = f.spec();
    FieldElement acc(spec);
    for (const auto& [m, c] : f.terms()) {
        if (m.e[0] < order[0] || m.e[1] < order[1] || m.e[2] < order[2]) continue;
        long scale = falling_factorial(m.e[0], order[0]) * falling_factorial(m.e[1], order[1]) *
                     falling_factorial(m.e[2], order[2]);
        FieldElement t = FieldElement(spec, Rational(scale)) * c;
        t *= pw[0][m.e[0] - order[0]];
        t *= pw[1][m.e[1] - order[1]];
        t *= pw[2][m.e[2] - order[2]];
        acc += t;
    }
    return acc;
}

}  // namespace detail

// Exact value of f on the given representative coordinates. Homogeneity
// makes vanishing well defined: f(lambda p) = lambda^d f(p).
inline FieldElement evaluate(const HomogeneousForm& f, const std::array<FieldElement, 3>& p) {
    auto pw = detail::point_powers(f.spec(), p, f.degree());
    return detail::derivative_value_at(f, {0, 0, 0}, pw);
}

// True iff every partial of every order 0 .. m-1 vanishes at p.
inline bool vanishes_to_order(const HomogeneousForm& f, const std::array<FieldElement, 3>& p, int m) {
    if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    auto pw = detail::point_powers(f.spec(), p, f.degree());
    for (int total = 0; total < m; ++total)
        for (int dx = total; dx >= 0; --dx)
            for (int dy = total - dx; dy >= 0; --dy)
                if (!detail::derivative_value_at(f, {dx, dy, total - dx - dy}, pw).is_zero()) return false;
    return true;
}

// Coefficients of f in monomial_basis(deg f) order.
inline std::vector<FieldElement> coefficient_vector(const HomogeneousForm& f) {
    auto basis = monomial_basis(f.degree());
    std::vector<FieldElement> out;
    out.reserve(basis.size());
    for (const auto& m : basis) out.push_back(f.coeff(m));
    return out;
}

inline HomogeneousForm form_from_vector(const FieldSpec& spec, int degree, std::span<const FieldElement> v) {
    auto basis = monomial_basis(degree);
    if (v.size() != basis.size()) throw std::invalid_argument("coefficient vector length mismatch");
    HomogeneousForm f(spec, degree);
    for (size_t i = 0; i < basis.size(); ++i)
        if (!v[i].is_zero()) f.set_coeff(basis[i], v[i]);
    return f;
}

}  // namespace sympow
