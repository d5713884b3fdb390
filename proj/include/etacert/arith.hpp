#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "etacert/rational.hpp"

namespace etacert {

/// Second Bernoulli polynomial B(x) = x^2 - x + 1/6.
Rational bernoulli_B(const Rational& x);

/// Second Bernoulli function P2(x) = {x}^2 - {x} + 1/6, with {x} taken
/// by the floor convention so that P2 has period 1 on all of Q.
Rational sawtooth_P2(const Rational& x);

// Small integer helpers. All of these work on machine integers; the
// moduli in this library are primes of desk scale.
long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
// Mathematical modulus, result in [0, m).
long long mod_ll(long long a, long long m);
long long floor_div(long long a, long long b);
long long pow_mod(long long base, long long exp, long long m);
// Inverse of a modulo m; throws invalid_input if gcd(a, m) != 1.
long long inv_mod(long long a, long long m);

struct ExtendedGcd {
    long long g;
    long long x;
    long long y;  // a*x + b*y == g
};
ExtendedGcd extended_gcd(long long a, long long b);

bool is_prime(long long n);
long long multiplicative_order(long long a, long long p);

/// Smallest primitive root mod p if it is odd, otherwise that root plus
/// p. The result is odd and generates (Z/pZ)^x. Requires prime p >= 5.
long long odd_primitive_root(long long p);

/// Per-prime constants for the level-p constructions: the odd generator
/// g, k = (p-1)/gcd(p-1,12), ell = gcd(p-1,12)/2 and a discrete-log
/// table in base g.
class PrimeContext {
public:
    PrimeContext(long long p, long long g);

    long long p() const { return p_; }
    long long g() const { return g_; }
    long long k() const { return k_; }
    long long ell() const { return ell_; }
    long long Np() const { return k_; }

    // log_g(a mod p) in [0, p-1); a must be prime to p.
    long long dlog(long long a) const;

    bool p_is_1_mod_4() const { return p_ % 4 == 1; }
    bool g_branch() const { return p_ % 12 == 11; }

private:
    long long p_;
    long long g_;
    long long k_;
    long long ell_;
    std::shared_ptr<const std::vector<int>> dlog_;
};

/// Builds the context for a prime p >= 5 using odd_primitive_root.
PrimeContext make_context(long long p);

} // namespace etacert
