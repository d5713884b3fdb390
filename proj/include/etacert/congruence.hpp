#pragma once

#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "etacert/arith.hpp"
#include "etacert/root_of_unity.hpp"

namespace etacert {

// Integer matrix (a b; c d) with ad - bc = 1.
class SL2Matrix {
public:
    SL2Matrix() = default;  // identity
    SL2Matrix(long long a, long long b, long long c, long long d);

    // Parses "a,b,c,d".
    static SL2Matrix parse(const std::string& text);
    static SL2Matrix T(long long n = 1) { return SL2Matrix(1, n, 0, 1); }
    static SL2Matrix S() { return SL2Matrix(0, -1, 1, 0); }

    long long a() const { return a_; }
    long long b() const { return b_; }
    long long c() const { return c_; }
    long long d() const { return d_; }

    SL2Matrix inverse() const { return SL2Matrix(d_, -b_, -c_, a_); }
    SL2Matrix operator-() const { return SL2Matrix(-a_, -b_, -c_, -d_); }
    std::complex<double> apply(std::complex<double> tau) const;

    friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
    friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;

    std::string str() const;

private:
    long long a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

// A cusp a/c in lowest terms with c >= 0; infinity is 1/0.
class Cusp {
public:
    Cusp() = default;  // infinity
    Cusp(long long a, long long c);

    static Cusp infinity() { return Cusp(); }

    long long a() const { return a_; }
    long long c() const { return c_; }
    bool is_infinity() const { return c_ == 0; }

    // A matrix in SL(2,Z) sending infinity to this cusp.
    SL2Matrix scaling_matrix() const;

    friend bool operator==(const Cusp&, const Cusp&) = default;
    std::string str() const;

private:
    long long a_ = 1;
    long long c_ = 0;
};

enum class Subgroup { gamma0, gamma1, gamma2, gamma2_prime };

std::string to_string(Subgroup s);

struct SubgroupTag {
    Subgroup kind;
    PrimeContext ctx;
};

/// The 12th-root-of-unity factor of the eta multiplier, two-case form:
/// c odd uses the first branch, otherwise the d-odd branch.
RootOfUnity epsilon(long long a, long long b, long long c, long long d);
// The individual branches; nullopt when the branch's parity condition fails.
std::optional<RootOfUnity> epsilon_c_odd_branch(long long a, long long b, long long c, long long d);
std::optional<RootOfUnity> epsilon_d_odd_branch(long long a, long long b, long long c, long long d);

/// Order-2 character of SL(2,Z): (-1)^{a+d-1} if c odd, (-1)^b if c even.
int psi(const SL2Matrix& gamma);

/// chi(gamma) = (-1)^n where a = g^{nk} mod p. Requires p = 1 mod 4 and
/// gamma in Gamma_2(p).
int chi(const SL2Matrix& gamma, const PrimeContext& ctx);

/// Legendre symbol (a/p).
int legendre(long long a, long long p);

bool membership(const SL2Matrix& gamma, const SubgroupTag& tag);

/// Residues modulo p that a (lower-right d likewise) may take in Gamma_2(p):
/// the subgroup <g^k, -1> of (Z/pZ)^x.
std::vector<long long> gamma2_residues(const PrimeContext& ctx);

/// Multiplier relating E_g(gamma tau) to E_{new_index}(tau) for gamma in Gamma_0(N):
/// E_g(gamma tau) = factor * E_{new_index}(tau). new_index is the literal
/// integer (g for c = 0, a*g otherwise); callers reduce it.
struct EtaMultiplier {
    RootOfUnity factor;
    long long new_index;
};
EtaMultiplier multiplier_E(long long g, long long N, const SL2Matrix& gamma);

/// The character rho on Gamma_0(p) of order (p-1)/2 with kernel +-Gamma_1(p):
/// rho(gamma) = exp(2 pi i log_g(a) / ((p-1)/2)).
RootOfUnity rho(const SL2Matrix& gamma, const PrimeContext& ctx);

/// Character on Gamma_0(p) whose kernel is Gamma_2'(p):
/// rho^ell psi for ell odd, rho^{ell/2} psi for ell even.
RootOfUnity gamma2_prime_character(const SL2Matrix& gamma, const PrimeContext& ctx);

struct QuotientReport {
    long long index_gamma0_gamma2 = 0;    // [Gamma_0 : Gamma_2]
    long long index_gamma2_gamma1 = 0;    // [Gamma_2 : +-Gamma_1]
    long long image_order = 0;            // order of the character image
    bool image_cyclic = false;
    long long expected_order = 0;         // 2k
    bool kernel_matches = false;          // kernel == Gamma_2' on coset data
    bool restriction_matches = false;     // equals psi*chi (resp. psi) on Gamma_2
    long long cosets_checked = 0;

    bool ok(const PrimeContext& ctx) const;
};

/// Enumerates coset data of Gamma_1(p) in Gamma_0(p) (one lift per residue
/// of a, times {I, T} to cover psi) and evaluates the Gamma_2' character.
QuotientReport quotient_structure(const PrimeContext& ctx);

/// Level at which membership in the subgroup is decided: p, or 2p for
/// Gamma_2' (psi sees the matrix mod 2).
long long subgroup_level(const SubgroupTag& tag);

/// Smallest w > 0 with sigma T^w sigma^{-1} in the subgroup.
long long cusp_width(const Cusp& x, const SubgroupTag& tag);

/// True iff some gamma in the subgroup maps x to y.
bool cusps_equivalent(const Cusp& x, const Cusp& y, const SubgroupTag& tag);

struct CuspEntry {
    Cusp cusp;
    long long width;
};

/// Complete, duplicate-free list of cusp orbit representatives.
std::vector<CuspEntry> cusp_set(const SubgroupTag& tag);

/// [SL(2,Z) : Gamma] counted from the residues mod p (and mod 2 for Gamma_2').
long long subgroup_index(const SubgroupTag& tag);
bool contains_minus_identity(const SubgroupTag& tag);

/// Random element of the subgroup with lower-left entry p*t, |t| <= max_c_multiple.
SL2Matrix random_element(const SubgroupTag& tag, std::mt19937_64& rng, long long max_c_multiple = 2);

} // namespace etacert
