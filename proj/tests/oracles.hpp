#pragma once

// Brute-force reference computations for the tests. Nothing here calls
// into the library; each routine is written from the definitions alone.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

inline long long mod(long long a, long long m)
{
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// Leading exponent of prod (1 - q^{N(m-1)+g})(1 - q^{Nm-g}) times the
// prefactor, expanded by hand: N/2 * ((g/N)^2 - g/N + 1/6).
inline mpq_class leading_exponent_E(long long g, long long N)
{
    mpq_class e(static_cast<long>(6 * g * g - 6 * g * N + N * N), static_cast<long>(12 * N));
    e.canonicalize();
    return e;
}

// Coefficients c_0..c_{steps-1} of prod_{m>=1} (1 - q^{N(m-1)+g})(1 - q^{Nm-g})
// in integer powers of q, by multiplying one binomial at a time.
inline std::vector<mpz_class> product_E(long long g, long long N, long long steps)
{
    std::vector<mpz_class> c(steps, 0);
    c[0] = 1;
    auto times_one_minus = [&](long long e) {
        if (e <= 0 || e >= steps) return;
        for (long long i = steps - 1; i >= e; --i) c[i] -= c[i - e];
    };
    for (long long m = 1; N * (m - 1) + g < steps || N * m - g < steps; ++m) {
        times_one_minus(N * (m - 1) + g);
        times_one_minus(N * m - g);
    }
    return c;
}

// prod_{m>=1} (1 - q^m) via Euler's pentagonal numbers.
inline std::vector<long long> euler_product(long long steps)
{
    std::vector<long long> c(steps, 0);
    for (long long k = -steps; k <= steps; ++k) {
        const long long n = k * (3 * k - 1) / 2;
        if (n >= 0 && n < steps) c[n] += (k % 2 == 0) ? 1 : -1;
    }
    return c;
}

inline bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Smallest r in [1, p) whose powers cover every nonzero residue.
inline long long smallest_primitive_root(long long p)
{
    for (long long r = 1; r < p; ++r) {
        std::set<long long> seen;
        long long x = 1;
        for (long long i = 0; i < p - 1; ++i) {
            seen.insert(x);
            x = x * r % p;
        }
        if (static_cast<long long>(seen.size()) == p - 1) return r;
    }
    return 0;
}

inline long long order_mod(long long a, long long p)
{
    long long x = mod(a, p);
    for (long long n = 1; n < p; ++n) {
        if (x == 1) return n;
        x = x * mod(a, p) % p;
    }
    return 0;
}

inline std::array<long long, 3> first_triplet(long long p)
{
    const long long half = (p - 1) / 2;
    for (long long a = 1; a <= half; ++a)
        for (long long b = a; b <= half; ++b)
            for (long long c = b; c <= half; ++c)
                if ((a * a + b * b + c * c) % p == 0) return {a, b, c};
    return {0, 0, 0};
}

// B(x) = x^2 - x + 1/6 and its periodic version.
inline mpq_class bernoulli(const mpq_class& x) { return x * x - x + mpq_class(1, 6); }

inline mpq_class periodic_bernoulli(const mpq_class& x)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return bernoulli(x - mpq_class(fl));
}

// 2x2 matrices over Z/p, row major.
using Mat = std::array<long long, 4>;

inline std::vector<Mat> sl2_mod(long long n)
{
    std::vector<Mat> out;
    for (long long a = 0; a < n; ++a)
        for (long long b = 0; b < n; ++b)
            for (long long c = 0; c < n; ++c)
                for (long long d = 0; d < n; ++d)
                    if (mod(a * d - b * c, n) == 1) out.push_back({a, b, c, d});
    return out;
}

// Upper triangular images mod p with diagonal entry a in the given set.
inline std::vector<Mat> borel_image(long long p, const std::set<long long>& diag)
{
    std::vector<Mat> out;
    for (long long a : diag) {
        long long inv = 1;
        while (inv * a % p != 1) ++inv;
        for (long long b = 0; b < p; ++b) out.push_back({a, b, 0, inv});
    }
    return out;
}

// Subgroup <u, -1> of (Z/p)^x.
inline std::set<long long> generated_with_minus_one(long long u, long long p)
{
    std::set<long long> s;
    long long x = 1;
    do {
        s.insert(x);
        s.insert(p - x);
        x = x * mod(u, p) % p;
    } while (x != 1);
    return s;
}

struct CuspOrbit {
    std::set<std::pair<long long, long long>> vectors;  // column vectors (x, y) mod p
    long long width = 0;
};

// Cusps of a subgroup Gamma with Gamma(p) <= Gamma are the orbits of its
// image H (together with -1) on nonzero column vectors mod p. The width
// of the orbit is p * |orbit| / |+-H|.
inline std::vector<CuspOrbit> cusp_orbits(long long p, const std::vector<Mat>& h)
{
    std::set<Mat> pm(h.begin(), h.end());
    for (const auto& m : h) pm.insert({mod(-m[0], p), mod(-m[1], p), mod(-m[2], p), mod(-m[3], p)});
    std::vector<CuspOrbit> orbits;
    std::set<std::pair<long long, long long>> done;
    for (long long x = 0; x < p; ++x) {
        for (long long y = 0; y < p; ++y) {
            if ((x == 0 && y == 0) || done.count({x, y})) continue;
            CuspOrbit o;
            for (const auto& m : pm) o.vectors.insert({mod(m[0] * x + m[1] * y, p), mod(m[2] * x + m[3] * y, p)});
            done.insert(o.vectors.begin(), o.vectors.end());
            o.width = p * static_cast<long long>(o.vectors.size()) / static_cast<long long>(pm.size());
            orbits.push_back(std::move(o));
        }
    }
    return orbits;
}

// Sign of the permutation a matrix mod 2 induces on the three nonzero
// vectors of F_2^2.
inline int sign_mod2(long long a, long long b, long long c, long long d)
{
    const std::array<std::pair<int, int>, 3> v = {{{1, 0}, {0, 1}, {1, 1}}};
    std::array<int, 3> img{};
    for (int i = 0; i < 3; ++i) {
        const int x = static_cast<int>(mod(a * v[i].first + b * v[i].second, 2));
        const int y = static_cast<int>(mod(c * v[i].first + d * v[i].second, 2));
        for (int j = 0; j < 3; ++j)
            if (v[j] == std::pair<int, int>{x, y}) img[i] = j;
    }
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (img[i] > img[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

} // namespace oracle
