#include "etacert/eta.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

#include "etacert/congruence.hpp"
#include "etacert/error.hpp"

namespace etacert {

namespace {

// q^lead * prod_{n in factors} (1 - q^n), expanded densely in integer
// steps and placed on the given lattice. Factors at or beyond the
// relative precision bound - lead contribute nothing below the bound.
QSeries dense_product(const Rational& lead, const std::vector<long long>& factors, const Rational& bound,
                      long long lattice)
{
    QSeries out(lattice, bound);
    const Rational rel = bound - lead;
    if (rel.sign() <= 0) return out;
    mpz_class ceil_rel;
    mpz_cdiv_q(ceil_rel.get_mpz_t(), rel.raw().get_num_mpz_t(), rel.raw().get_den_mpz_t());
    const long long count = ceil_rel.get_si();  // steps n with n < rel

    std::vector<mpz_class> coef(static_cast<std::size_t>(count));
    coef[0] = 1;
    for (const long long n : factors) {
        if (n >= count) continue;
        for (long long i = count - 1; i >= n; --i) {
            coef[static_cast<std::size_t>(i)] -= coef[static_cast<std::size_t>(i - n)];
        }
    }
    for (long long n = 0; n < count; ++n) {
        const mpz_class& c = coef[static_cast<std::size_t>(n)];
        if (c != 0) out.add_term(lead + Rational(n), Rational(c, mpz_class(1)));
    }
    return out;
}

long long relative_steps(const Rational& lead, const Rational& bound)
{
    const Rational rel = bound - lead;
    if (rel.sign() <= 0) return 0;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), rel.raw().get_num_mpz_t(), rel.raw().get_den_mpz_t());
    return c.get_si();
}

void require_level(long long N)
{
    if (N < 2) {
        throw invalid_input("level must be at least 2, got " + std::to_string(N));
    }
}

} // namespace

EtaIndex reduce_index(long long g, long long N)
{
    require_level(N);
    const long long r = mod_ll(g, 2 * N);
    if (r == 0 || r == N) {
        throw invalid_input("index " + std::to_string(g) + " is divisible by the level " + std::to_string(N));
    }
    if (r < N) return {N, r, 1};
    return {N, r - N, -1};
}

Rational eta_leading_exponent(long long g, long long N)
{
    require_level(N);
    if (mod_ll(g, N) == 0) {
        throw invalid_input("index " + std::to_string(g) + " is divisible by the level " + std::to_string(N));
    }
    return Rational(N) * bernoulli_B(Rational(g, N)) / Rational(2);
}

EtaProduct::EtaProduct(long long level, std::string label)
    : level_(level), label_(std::move(label))
{
    require_level(level);
}

void EtaProduct::multiply_by(long long g, long long e)
{
    if (e == 0) return;
    const EtaIndex idx = reduce_index(g, level_);
    if (idx.sign < 0 && (e % 2 != 0)) sign_ = -sign_;
    auto& slot = exponents_[idx.g_reduced];
    slot += e;
    if (slot == 0) exponents_.erase(idx.g_reduced);
}

void EtaProduct::flip_sign(int s)
{
    if (s != 1 && s != -1) throw invalid_input("sign must be +1 or -1");
    sign_ *= s;
}

long long EtaProduct::weight() const
{
    long long w = 0;
    for (const auto& [g, e] : exponents_) w += e;
    return w;
}

Rational EtaProduct::leading_exponent() const
{
    Rational total;
    for (const auto& [g, e] : exponents_) total += Rational(e) * eta_leading_exponent(g, level_);
    return total;
}

EtaProduct EtaProduct::pow(long long n) const
{
    EtaProduct out(level_, label_);
    if (n == 0) return out;
    for (const auto& [g, e] : exponents_) out.exponents_[g] = e * n;
    out.sign_ = (sign_ < 0 && (n % 2 != 0)) ? -1 : 1;
    return out;
}

EtaProduct operator*(const EtaProduct& a, const EtaProduct& b)
{
    if (a.level_ != b.level_) {
        throw invalid_input("eta products at different levels");
    }
    EtaProduct out = a;
    for (const auto& [g, e] : b.exponents_) out.multiply_by(g, e);
    out.sign_ *= b.sign_;
    return out;
}

bool operator==(const EtaProduct& a, const EtaProduct& b)
{
    return a.level_ == b.level_ && a.sign_ == b.sign_ && a.exponents_ == b.exponents_;
}

std::string EtaProduct::str() const
{
    std::ostringstream os;
    os << (sign_ < 0 ? "-" : "");
    if (exponents_.empty()) {
        os << "1";
        return os.str();
    }
    bool first = true;
    for (const auto& [g, e] : exponents_) {
        if (!first) os << "*";
        os << "E" << g;
        if (e != 1) os << "^" << e;
        first = false;
    }
    os << " (N=" << level_ << ")";
    return os.str();
}

QSeries expand_E(long long g, long long N, const Rational& bound)
{
    require_level(N);
    if (g < 1 || g > N - 1) {
        throw invalid_input("expand_E needs a reduced index 1 <= g <= N-1, got g=" + std::to_string(g));
    }
    const Rational lead = eta_leading_exponent(g, N);
    const long long steps = relative_steps(lead, bound);
    std::vector<long long> factors;
    for (long long m = 1;; ++m) {
        const long long first = N * (m - 1) + g;
        const long long second = N * m - g;
        if (first >= steps && second >= steps) break;
        factors.push_back(first);
        factors.push_back(second);
    }
    return dense_product(lead, factors, bound, 24 * N);
}

QSeries expand_eta(long long scale, const Rational& bound)
{
    if (scale <= 0) {
        throw invalid_input("eta scale must be positive");
    }
    const Rational lead(scale, 24);
    const long long steps = relative_steps(lead, bound);
    std::vector<long long> factors;
    for (long long n = scale; n < steps; n += scale) factors.push_back(n);
    return dense_product(lead, factors, bound, 24);
}

EtaProduct build_F(long long h, const PrimeContext& ctx)
{
    const long long p = ctx.p();
    if (mod_ll(h, p) == 0) {
        throw invalid_input("F_h needs h not divisible by p (h=" + std::to_string(h) + ")");
    }
    const long long ell = ctx.ell();
    if (6 % ell != 0) {
        throw computation_error("6/ell is not an integer");
    }
    const long long e = 6 / ell;
    EtaProduct prod(p, "F_" + std::to_string(h));
    // Only the index mod 2p affects reduction, so g^{jk} h is taken mod 2p.
    const long long hh = mod_ll(h, 2 * p);
    for (long long j = 0; j < ell; ++j) {
        const long long gj = pow_mod(ctx.g(), j * ctx.k(), 2 * p);
        prod.multiply_by(mod_ll(gj * hh, 2 * p), e);
    }
    return prod;
}

EtaProduct build_G(const Triplet& h, long long p)
{
    if (!is_prime(p) || p % 12 != 11) {
        throw triplet_error(TripletFault::wrong_branch,
                            "G_h is only defined for primes p = 11 mod 12 (p=" + std::to_string(p) + ")");
    }
    long long sum = 0;
    for (const long long x : h) {
        if (mod_ll(x, p) == 0) {
            throw triplet_error(TripletFault::index_divisible_by_p,
                                "triplet entry " + std::to_string(x) + " is divisible by p");
        }
        const long long r = mod_ll(x, p);
        sum = (sum + r * r) % p;
    }
    if (sum != 0) {
        throw triplet_error(TripletFault::not_isotropic, "h1^2 + h2^2 + h3^2 is not 0 mod p");
    }
    EtaProduct prod(p, "G_(" + std::to_string(h[0]) + "," + std::to_string(h[1]) + "," +
                           std::to_string(h[2]) + ")");
    for (const long long x : h) prod.multiply_by(x, 2);
    return prod;
}

Triplet find_triplet(long long p)
{
    if (!is_prime(p) || p % 12 != 11) {
        throw triplet_error(TripletFault::wrong_branch,
                            "triplet search needs a prime p = 11 mod 12 (p=" + std::to_string(p) + ")");
    }
    const long long half = (p - 1) / 2;
    for (long long a = 1; a <= half; ++a) {
        for (long long b = a; b <= half; ++b) {
            for (long long c = b; c <= half; ++c) {
                if ((a * a + b * b + c * c) % p == 0) return {a, b, c};
            }
        }
    }
    throw computation_error("no isotropic triplet for p=" + std::to_string(p));
}

bool modularity_criterion(const EtaProduct& prod)
{
    const long long N = prod.level();
    long long s0 = 0, s1 = 0, s2 = 0;
    for (const auto& [g, e] : prod.exponents()) {
        s0 += e;
        s1 += g * e;
        s2 = mod_ll(s2 + mod_ll(g * g, 2 * N) * mod_ll(e, 2 * N), 2 * N);
    }
    if (N % 2 == 1) {
        return mod_ll(s0, 12) == 0 && s2 % N == 0;
    }
    return mod_ll(s0, 12) == 0 && mod_ll(s1, 2) == 0 && s2 == 0;
}

Rational leading_delta(long long g, long long N, const SL2Matrix& gamma)
{
    require_level(N);
    const long long cn = gcd_ll(std::llabs(gamma.c()), N);
    return Rational(cn * cn, 2 * N) * sawtooth_P2(Rational(gamma.a() * g, cn));
}

QSeries expand_product(const EtaProduct& prod, const Rational& bound)
{
    const long long N = prod.level();
    const Rational lead = prod.leading_exponent();
    const Rational rel = bound - lead;
    if (prod.exponents().empty()) {
        return QSeries::constant(Rational(prod.sign()), 1, bound);
    }
    if (rel.sign() <= 0) return QSeries(24 * N, bound);

    QSeries result = QSeries::constant(Rational(prod.sign()), 24 * N);
    for (const auto& [g, e] : prod.exponents()) {
        const QSeries factor = expand_E(g, N, eta_leading_exponent(g, N) + rel);
        result = result * qs_pow(factor, e);
    }
    return result;
}

long long z_exponent(long long p) { return 12 / gcd_ll(p - 1, 12); }

Rational z_leading_exponent(long long p) { return Rational(z_exponent(p) * (1 - p), 24); }

QSeries build_z(const PrimeContext& ctx, const Rational& bound)
{
    const long long p = ctx.p();
    const long long e = z_exponent(p);
    const Rational rel = bound - z_leading_exponent(p);
    if (rel.sign() <= 0) return QSeries(24 * p, bound);
    const QSeries top = expand_eta(1, Rational(1, 24) + rel);
    const QSeries bottom = expand_eta(p, Rational(p, 24) + rel);
    return qs_pow(top, e) * qs_pow(bottom, -e);
}

EtaProduct z_product(const PrimeContext& ctx)
{
    const long long p = ctx.p();
    EtaProduct prod(p, "prod_j F_{g^j}");
    for (long long j = 0; j < ctx.k(); ++j) {
        prod = prod * build_F(pow_mod(ctx.g(), j, 2 * p), ctx);
    }
    prod.set_label("prod_j F_{g^j}");
    return prod;
}

} // namespace etacert
