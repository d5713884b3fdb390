#include "etacert/arith.hpp"

#include <numeric>
#include <string>

#include "etacert/error.hpp"

namespace etacert {

Rational bernoulli_B(const Rational& x)
{
    return x * x - x + Rational(1, 6);
}

Rational sawtooth_P2(const Rational& x)
{
    return bernoulli_B(x.frac());
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

long long lcm_ll(long long a, long long b)
{
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

long long mod_ll(long long a, long long m)
{
    const long long r = a % m;
    return r < 0 ? r + m : r;
}

long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long pow_mod(long long base, long long exp, long long m)
{
    if (exp < 0) {
        return pow_mod(inv_mod(base, m), -exp, m);
    }
    __int128 result = 1 % m;
    __int128 b = mod_ll(base, m);
    while (exp > 0) {
        if (exp & 1) result = (result * b) % m;
        b = (b * b) % m;
        exp >>= 1;
    }
    return static_cast<long long>(result);
}

ExtendedGcd extended_gcd(long long a, long long b)
{
    long long old_r = a, r = b;
    long long old_s = 1, s = 0;
    long long old_t = 0, t = 1;
    while (r != 0) {
        const long long q = old_r / r;
        long long tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r; old_s = -old_s; old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

long long inv_mod(long long a, long long m)
{
    const auto e = extended_gcd(mod_ll(a, m), m);
    if (e.g != 1) {
        throw invalid_input(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    }
    return mod_ll(e.x, m);
}

bool is_prime(long long n)
{
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (long long i = 5; i * i <= n; i += 6) {
        if (n % i == 0 || n % (i + 2) == 0) return false;
    }
    return true;
}

long long multiplicative_order(long long a, long long p)
{
    a = mod_ll(a, p);
    if (a == 0) {
        throw invalid_input("0 has no multiplicative order");
    }
    long long x = a;
    long long n = 1;
    while (x != 1) {
        x = static_cast<long long>((static_cast<__int128>(x) * a) % p);
        ++n;
    }
    return n;
}

namespace {

void require_prime_ge5(long long p)
{
    if (p < 5) {
        throw invalid_input("prime must be at least 5, got " + std::to_string(p));
    }
    if (!is_prime(p)) {
        throw invalid_input(std::to_string(p) + " is not prime");
    }
}

bool is_primitive_root(long long a, long long p)
{
    // a generates iff a^((p-1)/q) != 1 for every prime q | p-1.
    long long m = p - 1;
    for (long long q = 2; q * q <= m; ++q) {
        if (m % q != 0) continue;
        if (pow_mod(a, (p - 1) / q, p) == 1) return false;
        while (m % q == 0) m /= q;
    }
    if (m > 1 && pow_mod(a, (p - 1) / m, p) == 1) return false;
    return true;
}

} // namespace

long long odd_primitive_root(long long p)
{
    require_prime_ge5(p);
    for (long long a = 2; a < p; ++a) {
        if (is_primitive_root(a, p)) {
            return (a % 2 == 1) ? a : a + p;
        }
    }
    throw computation_error("no primitive root found for " + std::to_string(p));
}

PrimeContext::PrimeContext(long long p, long long g)
    : p_(p), g_(g)
{
    require_prime_ge5(p);
    if (g % 2 == 0) {
        throw invalid_input("generator must be odd");
    }
    if (multiplicative_order(g, p) != p - 1) {
        throw invalid_input(std::to_string(g) + " does not generate (Z/" + std::to_string(p) + ")^x");
    }
    const long long d = gcd_ll(p - 1, 12);
    k_ = (p - 1) / d;
    ell_ = d / 2;

    auto table = std::make_shared<std::vector<int>>(static_cast<std::size_t>(p), -1);
    long long x = 1;
    for (long long e = 0; e < p - 1; ++e) {
        (*table)[static_cast<std::size_t>(x)] = static_cast<int>(e);
        x = (x * mod_ll(g, p)) % p;
    }
    dlog_ = std::move(table);
}

long long PrimeContext::dlog(long long a) const
{
    const long long r = mod_ll(a, p_);
    if (r == 0) {
        throw invalid_input("discrete log of a multiple of p");
    }
    return (*dlog_)[static_cast<std::size_t>(r)];
}

PrimeContext make_context(long long p)
{
    require_prime_ge5(p);
    return PrimeContext(p, odd_primitive_root(p));
}

} // namespace etacert
