#pragma once

#include <array>
#include <map>
#include <string>

#include "etacert/arith.hpp"
#include "etacert/error.hpp"
#include "etacert/qseries.hpp"

namespace etacert {

class SL2Matrix;

// E_g at level N written as sign * E_{g_reduced} with 1 <= g_reduced < N.
struct EtaIndex {
    long long level = 1;
    long long g_reduced = 1;
    int sign = 1;

    friend bool operator==(const EtaIndex&, const EtaIndex&) = default;
};

// Uses E_{g+N} = -E_g and E_{-g} = -E_g; only g mod 2N matters.
EtaIndex reduce_index(long long g, long long N);

// Leading exponent N*B(g/N)/2 of E_g, for any g not divisible by N.
Rational eta_leading_exponent(long long g, long long N);

// Formal symbol sign * prod_g E_g^{e_g} at a fixed level, with reduced
// indices as keys. Zero exponents are never stored.
class EtaProduct {
public:
    EtaProduct() = default;
    explicit EtaProduct(long long level, std::string label = {});

    long long level() const { return level_; }
    int sign() const { return sign_; }
    const std::map<long long, long long>& exponents() const { return exponents_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    // Multiplies in E_g^e for an arbitrary (unreduced) index g.
    void multiply_by(long long g, long long e);
    // Multiplies the global sign by s (+1 or -1).
    void flip_sign(int s);

    long long weight() const;  // sum of e_g
    Rational leading_exponent() const;

    EtaProduct pow(long long n) const;
    friend EtaProduct operator*(const EtaProduct& a, const EtaProduct& b);
    friend bool operator==(const EtaProduct& a, const EtaProduct& b);

    std::string str() const;

private:
    long long level_ = 1;
    std::map<long long, long long> exponents_;
    int sign_ = 1;
    std::string label_;
};

/// Exact expansion of E_g (1 <= g <= N-1) up to the absolute exponent
/// bound. Lattice 1/(24N).
QSeries expand_E(long long g, long long N, const Rational& bound);

/// Expansion of eta(s*tau) = q^{s/24} prod_{m>=1} (1 - q^{s m}) up to the
/// absolute exponent bound.
QSeries expand_eta(long long scale, const Rational& bound);

/// F_h = (prod_{j<ell} E_{g^{jk} h})^{6/ell} with literal integer indices.
EtaProduct build_F(long long h, const PrimeContext& ctx);

using Triplet = std::array<long long, 3>;

/// Why a triplet was rejected by build_G.
enum class TripletFault { wrong_branch, index_divisible_by_p, not_isotropic };

class triplet_error : public invalid_input {
public:
    triplet_error(TripletFault fault, const std::string& what) : invalid_input(what), fault_(fault) {}
    TripletFault fault() const { return fault_; }

private:
    TripletFault fault_;
};

/// G_h = (E_{h1} E_{h2} E_{h3})^2 for p = 11 mod 12 and h1^2+h2^2+h3^2 = 0 mod p.
EtaProduct build_G(const Triplet& h, long long p);

/// Lexicographically smallest 1 <= h1 <= h2 <= h3 <= (p-1)/2 with
/// h1^2+h2^2+h3^2 = 0 mod p. Requires p = 11 mod 12.
Triplet find_triplet(long long p);

/// Sufficient condition for prod E_g^{e_g} to be a modular function on
/// Gamma_1(N).
bool modularity_criterion(const EtaProduct& prod);

/// Exponent delta of the first term of E_g(gamma tau):
/// (c,N)^2/(2N) * P2(a g / (c,N)).
Rational leading_delta(long long g, long long N, const SL2Matrix& gamma);

/// Exact expansion of the product, global sign included, up to the
/// absolute exponent bound.
QSeries expand_product(const EtaProduct& prod, const Rational& bound);

/// Exponent 12/gcd(p-1, 12) used in z.
long long z_exponent(long long p);

/// Leading exponent of z, i.e. z_exponent(p) * (1 - p) / 24.
Rational z_leading_exponent(long long p);

/// Exact expansion of z = (eta(tau)/eta(p tau))^{12/gcd(p-1,12)}.
QSeries build_z(const PrimeContext& ctx, const Rational& bound);

/// prod_{j=0}^{k-1} F_{g^j}, the eta product compared against z.
EtaProduct z_product(const PrimeContext& ctx);

} // namespace etacert
