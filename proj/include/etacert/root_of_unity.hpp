#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "etacert/rational.hpp"

namespace etacert {

// The root of unity exp(2*pi*i * exponent / order), kept symbolic.
// Always normalized: order minimal, exponent in [0, order).
class RootOfUnity {
public:
    RootOfUnity() = default;  // 1
    RootOfUnity(long long order, long long exponent);

    // exp(2*pi*i * t) for a rational number of turns t.
    static RootOfUnity from_turns(const Rational& t);
    // exp(pi*i * t), i.e. half-turns.
    static RootOfUnity from_half_turns(const Rational& t) { return from_turns(t / Rational(2)); }
    static RootOfUnity minus_one() { return RootOfUnity(2, 1); }
    static RootOfUnity from_sign(int s);

    long long order() const { return order_; }
    long long exponent() const { return exponent_; }
    Rational turns() const { return Rational(exponent_, order_); }

    bool is_one() const { return order_ == 1; }
    // +1 or -1 if the value is real, 0 otherwise.
    int as_sign() const;

    RootOfUnity pow(long long n) const;
    RootOfUnity inverse() const { return pow(-1); }
    std::complex<double> value() const;

    // Canonical text form: e^(2*pi*i*n/M)
    std::string str() const;

    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) = default;
    friend auto operator<=>(const RootOfUnity& a, const RootOfUnity& b) = default;

private:
    long long order_ = 1;
    long long exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const RootOfUnity& z);

} // namespace etacert
