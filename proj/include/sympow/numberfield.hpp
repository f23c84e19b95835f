#pragma once

#include <sympow/rational.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sympow {

namespace detail {

// Dense univariate polynomials over Q, ascending coefficients, no trailing zeros.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    qpoly_trim(out);
    return out;
}

// quotient and remainder of a / b, exact rational arithmetic
inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    qpoly_trim(a);
    if (a.size() < b.size()) return {{}, a};
    QPoly q(a.size() - b.size() + 1);
    const Rational lead_inv = b.back().inverse();
    for (size_t i = a.size(); i-- > 0 && i + 1 >= b.size();) {
        if (a[i].is_zero()) continue;
        Rational f = a[i] * lead_inv;
        size_t shift = i - (b.size() - 1);
        q[shift] = f;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    }
    qpoly_trim(a);
    qpoly_trim(q);
    return {q, a};
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// n-th cyclotomic polynomial via Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
inline QPoly cyclotomic_poly(unsigned n) {
    QPoly tn_minus_1(n + 1);
    tn_minus_1[0] = Rational(-1);
    tn_minus_1[n] = Rational(1);
    if (n == 1) return tn_minus_1;
    QPoly divisor{Rational(1)};
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) divisor = qpoly_mul(divisor, cyclotomic_poly(d));
    auto [q, r] = qpoly_divmod(tn_minus_1, divisor);
    if (!r.empty()) throw std::logic_error("cyclotomic division not exact");
    return q;
}

}  // namespace detail

// The ambient cyclotomic field Q(zeta_n), defined by the n-th cyclotomic
// polynomial. Specs are interned and immortal: elements hold plain pointers
// and spec identity is pointer identity.
class FieldSpec {
public:
    static const FieldSpec& of(unsigned conductor) {
        static std::mutex mu;
        static std::map<unsigned, std::unique_ptr<FieldSpec>> cache;
        if (conductor < 1) throw std::invalid_argument("conductor must be >= 1");
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(conductor);
        if (it == cache.end())
            it = cache.emplace(conductor, std::unique_ptr<FieldSpec>(new FieldSpec(conductor))).first;
        return *it->second;
    }

    unsigned conductor() const { return conductor_; }
    unsigned degree() const { return degree_; }  // phi(conductor)

    // monic, length degree()+1
    const std::vector<Rational>& modulus() const { return modulus_; }

    // t^k reduced mod modulus, for k in [degree, 2*degree-2]
    const std::vector<std::vector<Rational>>& power_table() const { return power_table_; }

    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

private:
    explicit FieldSpec(unsigned n) : conductor_(n) {
        modulus_ = detail::cyclotomic_poly(n);
        degree_ = static_cast<unsigned>(modulus_.size()) - 1;
        if (degree_ != detail::euler_phi(n)) throw std::logic_error("cyclotomic degree != phi(n)");
        // t^degree = -(low part of modulus), then successive shifts
        std::vector<Rational> cur(degree_);
        for (unsigned i = 0; i < degree_; ++i) cur[i] = -modulus_[i];
        for (unsigned k = degree_; degree_ >= 2 && k <= 2 * degree_ - 2; ++k) {
            power_table_.push_back(cur);
            // multiply by t: shift up, fold the overflowing top coefficient
            std::vector<Rational> next(degree_);
            Rational top = cur[degree_ - 1];
            for (unsigned i = degree_ - 1; i >= 1; --i) next[i] = cur[i - 1];
            next[0] = Rational(0);
            if (!top.is_zero())
                for (unsigned i = 0; i < degree_; ++i) next[i] += top * power_table_[0][i];
            cur = std::move(next);
        }
    }

    unsigned conductor_;
    unsigned degree_;
    std::vector<Rational> modulus_;
    std::vector<std::vector<Rational>> power_table_;
};

inline const FieldSpec& cyclotomic_spec(unsigned n) { return FieldSpec::of(n); }

// An element of Q(zeta_n): rational coefficient vector of fixed length phi(n),
// position k holding the coefficient of a^k. Immutable value semantics;
// equality is componentwise on the canonical representation.
class FieldElement {
public:
    explicit FieldElement(const FieldSpec& spec) : spec_(&spec), c_(spec.degree()) {}

    FieldElement(const FieldSpec& spec, Rational constant) : spec_(&spec), c_(spec.degree()) {
        c_[0] = std::move(constant);
    }

    FieldElement(const FieldSpec& spec, std::vector<Rational> coeffs) : spec_(&spec), c_(std::move(coeffs)) {
        if (c_.size() != spec.degree()) throw std::invalid_argument("coefficient vector length != phi(n)");
    }

    static FieldElement generator(const FieldSpec& spec) {
        FieldElement g(spec);
        if (spec.degree() >= 2) {
            g.c_[1] = Rational(1);
        } else {
            // phi(n) = 1: a is the rational root of the modulus (n = 1 or 2)
            g.c_[0] = -spec.modulus()[0];
        }
        return g;
    }

    const FieldSpec& spec() const { return *spec_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_one() const {
        if (!(c_[0] == Rational(1))) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    // only valid when is_rational()
    const Rational& rational_value() const {
        if (!is_rational()) throw std::logic_error("element is not rational");
        return c_[0];
    }

    FieldElement& operator+=(const FieldElement& o) {
        check_spec(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    FieldElement& operator-=(const FieldElement& o) {
        check_spec(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    FieldElement operator-() const {
        FieldElement r(*spec_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { a += b; return a; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { a -= b; return a; }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_spec(b);
        const unsigned d = a.spec_->degree();
        FieldElement r(*a.spec_);
        if (d == 1) {
            r.c_[0] = a.c_[0] * b.c_[0];
            return r;
        }
        // convolve, then fold degrees >= d through the power table
        std::vector<Rational> conv(2 * d - 1);
        for (unsigned i = 0; i < d; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (unsigned j = 0; j < d; ++j) {
                if (b.c_[j].is_zero()) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        for (unsigned i = 0; i < d; ++i) r.c_[i] = std::move(conv[i]);
        const auto& table = a.spec_->power_table();
        for (unsigned k = d; k <= 2 * d - 2; ++k) {
            if (conv[k].is_zero()) continue;
            const auto& row = table[k - d];
            for (unsigned i = 0; i < d; ++i)
                if (!row[i].is_zero()) r.c_[i] += conv[k] * row[i];
        }
        return r;
    }

    FieldElement& operator*=(const FieldElement& o) { *this = *this * o; return *this; }

    // this -= a * b, reusing storage (elimination inner loop)
    void sub_mul(const FieldElement& a, const FieldElement& b) {
        FieldElement p = a * b;
        *this -= p;
    }

    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero field element");
        const unsigned d = spec_->degree();
        if (d == 1) return FieldElement(*spec_, c_[0].inverse());
        // extended Euclid on (representative, modulus): s*u + t*Phi = g
        detail::QPoly r0(c_.begin(), c_.end());
        detail::qpoly_trim(r0);
        detail::QPoly r1 = spec_->modulus();
        detail::QPoly s0{Rational(1)}, s1{};
        while (!r1.empty()) {
            auto [q, rem] = detail::qpoly_divmod(r0, r1);
            // s_next = s0 - q * s1
            detail::QPoly qs = detail::qpoly_mul(q, s1);
            detail::QPoly s_next = s0;
            if (s_next.size() < qs.size()) s_next.resize(qs.size());
            for (size_t i = 0; i < qs.size(); ++i) s_next[i] -= qs[i];
            detail::qpoly_trim(s_next);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s_next);
        }
        // r0 is a nonzero constant (modulus is irreducible over Q)
        if (r0.size() != 1) throw std::logic_error("gcd with cyclotomic modulus not constant");
        Rational ginv = r0[0].inverse();
        FieldElement out(*spec_);
        for (size_t i = 0; i < s0.size() && i < d; ++i) out.c_[i] = s0[i] * ginv;
        // bezout coefficient degree < phi(n), no further reduction needed
        if (s0.size() > d) throw std::logic_error("bezout coefficient degree too large");
        return out;
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    FieldElement pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        FieldElement base = *this;
        FieldElement acc(*spec_, Rational(1));
        unsigned long e = static_cast<unsigned long>(k);
        while (e > 0) {
            if (e & 1) acc *= base;
            if (e >>= 1) base = base * base;
        }
        return acc;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_spec(b);
        return a.c_ == b.c_;
    }

    // arbitrary total order (lexicographic on coefficients); used for
    // canonical sorting and deduplication, carries no algebraic meaning
    std::strong_ordering compare(const FieldElement& o) const {
        check_spec(o);
        for (size_t i = 0; i < c_.size(); ++i) {
            auto c = c_[i] <=> o.c_[i];
            if (c != std::strong_ordering::equal) return c;
        }
        return std::strong_ordering::equal;
    }

    size_t bit_size() const {
        size_t s = 0;
        for (const auto& c : c_) s += c.bit_size();
        return s;
    }

    std::string str() const;

private:
    void check_spec(const FieldElement& o) const {
        if (spec_ != o.spec_) throw std::invalid_argument("field spec mismatch");
    }

    const FieldSpec* spec_;
    std::vector<Rational> c_;
};

inline FieldElement power_of_generator(const FieldSpec& spec, long k) {
    return FieldElement::generator(spec).pow(k);
}

// ---------------------------------------------------------------------------
// element expression parser / formatter

struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

namespace detail {

// Grammar: expr := ['-'|'+'] term (('+'|'-') term)*
//          term := factor ( '*' factor | factor-if-'a'-or-'(' )*
//          factor := primary ['^' uint]
//          primary := rational | 'a' | '(' expr ')'
// Rationals are integer or integer/integer literals.
class ElementParser {
public:
    ElementParser(std::string_view text, const FieldSpec& spec) : text_(text), spec_(spec) {}

    FieldElement parse() {
        FieldElement v = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        return v;
    }

private:
    FieldElement expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') { neg = true; ++pos_; }
        else if (peek() == '+') ++pos_;
        FieldElement v = term();
        if (neg) v = -v;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') { ++pos_; v += term(); }
            else if (c == '-') { ++pos_; v -= term(); }
            else break;
        }
        return v;
    }

    FieldElement term() {
        FieldElement v = factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                v *= factor();
            } else if (c == 'a' || c == '(') {
                v *= factor();  // implicit multiplication, e.g. "15a"
            } else {
                break;
            }
        }
        return v;
    }

    FieldElement factor() {
        FieldElement base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t start = pos_;
            mpz_class e = integer_token();
            if (e < 0 || !e.fits_ulong_p() || e.get_ui() > 1000000UL)
                throw parse_error("exponent out of range", start);
            base = base.pow(static_cast<long>(e.get_ui()));
        }
        return base;
    }

    FieldElement primary() {
        skip_ws();
        char c = peek();
        if (c == 'a') {
            ++pos_;
            return FieldElement::generator(spec_);
        }
        if (c == '(') {
            ++pos_;
            FieldElement v = expr();
            skip_ws();
            if (peek() != ')') throw parse_error("expected ')'", pos_);
            ++pos_;
            return v;
        }
        if (c >= '0' && c <= '9') {
            mpz_class num = integer_token();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                size_t dstart = pos_;
                mpz_class den = integer_token();
                if (den == 0) throw parse_error("zero denominator", dstart);
                return FieldElement(spec_, Rational(num, den));
            }
            return FieldElement(spec_, Rational(num));
        }
        throw parse_error(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'", pos_);
    }

    mpz_class integer_token() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (pos_ == start) throw parse_error("expected integer", start);
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    std::string_view text_;
    const FieldSpec& spec_;
    size_t pos_ = 0;
};

}  // namespace detail

inline FieldElement parse_element(std::string_view text, const FieldSpec& spec) {
    return detail::ElementParser(text, spec).parse();
}

// Canonical text: terms in decreasing power of a, round-trips through
// parse_element. Examples: "0", "-a + 1", "-1/15*a + 1/15".
inline std::string format_element(const FieldElement& u) {
    if (u.is_zero()) return "0";
    std::string out;
    bool first = true;
    const auto& c = u.coeffs();
    for (size_t idx = c.size(); idx-- > 0;) {
        if (c[idx].is_zero()) continue;
        bool neg = c[idx].sign() < 0;
        Rational mag = neg ? -c[idx] : c[idx];
        std::string body;
        if (idx == 0) {
            body = mag.str();
        } else {
            std::string apow = idx == 1 ? "a" : "a^" + std::to_string(idx);
            body = (mag == Rational(1)) ? apow : mag.str() + "*" + apow;
        }
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

inline std::string FieldElement::str() const { return format_element(*this); }

inline std::ostream& operator<<(std::ostream& os, const FieldElement& u) { return os << format_element(u); }

}  // namespace sympow
