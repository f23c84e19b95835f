#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sympow {

// Arbitrary-precision rational, always canonical: gcd(|num|, den) = 1,
// den >= 1, zero stored as 0/1. All arithmetic is exact.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(const mpz_class& n) : q_(n) {}
    Rational(long num, long den) : q_(num, den) { canonicalize_checked(); }
    Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) { canonicalize_checked(); }

    // Accepts "n" or "n/d", optional leading '-'.
    static Rational parse(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw std::invalid_argument("empty rational literal");
        try {
            Rational r;
            r.q_ = mpq_class(s, 10);
            if (r.q_.get_den() == 0) throw std::invalid_argument("zero denominator");
            r.q_.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("malformed rational literal: '" + s + "'");
        }
    }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    Rational operator-() const { Rational r; r.q_ = -q_; return r; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        Rational r;
        r.q_ = 1 / q_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    // "p" when integral, "p/q" otherwise
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    // rough operand size, used only by the optional pivot heuristic
    size_t bit_size() const {
        return mpz_sizeinbase(q_.get_num().get_mpz_t(), 2) + mpz_sizeinbase(q_.get_den().get_mpz_t(), 2);
    }

private:
    void canonicalize_checked() {
        if (q_.get_den() == 0) throw std::domain_error("zero denominator");
        q_.canonicalize();
    }

    mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace sympow
