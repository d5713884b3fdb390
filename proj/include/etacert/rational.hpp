#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace etacert {

// Exact rational number, always in lowest terms with a positive
// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : value_(mpz_class(static_cast<long>(n))) {}
    Rational(long long num, long long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    // Parses "a", "-a" or "a/b".
    static Rational parse(const std::string& text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    // floor(x) and {x} = x - floor(x), the latter in [0, 1) for all x.
    mpz_class floor() const;
    Rational frac() const;

    // Numerator and denominator as machine integers; throws if they do
    // not fit.
    long long num_ll() const;
    long long den_ll() const;
    long long to_ll() const;  // requires is_integer()

    double to_double() const { return value_.get_d(); }
    std::string str() const;

    const mpq_class& raw() const { return value_; }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

} // namespace etacert
