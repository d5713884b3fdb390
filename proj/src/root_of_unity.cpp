#include "etacert/root_of_unity.hpp"

#include <numbers>
#include <ostream>

#include "etacert/arith.hpp"
#include "etacert/error.hpp"

namespace etacert {

RootOfUnity::RootOfUnity(long long order, long long exponent)
{
    if (order <= 0) {
        throw invalid_input("root of unity needs a positive order");
    }
    exponent = mod_ll(exponent, order);
    const long long g = gcd_ll(exponent, order);  // gcd(0, M) = M
    order_ = order / g;
    exponent_ = exponent / g;
}

RootOfUnity RootOfUnity::from_turns(const Rational& t)
{
    const Rational f = t.frac();
    return RootOfUnity(f.den_ll(), f.num_ll());
}

RootOfUnity RootOfUnity::from_sign(int s)
{
    if (s != 1 && s != -1) {
        throw invalid_input("sign must be +1 or -1");
    }
    return s == 1 ? RootOfUnity() : minus_one();
}

int RootOfUnity::as_sign() const
{
    if (order_ == 1) return 1;
    if (order_ == 2) return -1;
    return 0;
}

RootOfUnity RootOfUnity::pow(long long n) const
{
    // exponent * n may overflow for huge n; reduce n first.
    return RootOfUnity(order_, mod_ll(exponent_ * mod_ll(n, order_), order_));
}

std::complex<double> RootOfUnity::value() const
{
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent_) /
                         static_cast<double>(order_);
    return std::polar(1.0, angle);
}

std::string RootOfUnity::str() const
{
    return "e^(2*pi*i*" + std::to_string(exponent_) + "/" + std::to_string(order_) + ")";
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b)
{
    const long long m = lcm_ll(a.order_, b.order_);
    return RootOfUnity(m, a.exponent_ * (m / a.order_) + b.exponent_ * (m / b.order_));
}

std::ostream& operator<<(std::ostream& os, const RootOfUnity& z) { return os << z.str(); }

} // namespace etacert
