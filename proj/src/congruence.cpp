#include "etacert/congruence.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "etacert/error.hpp"

namespace etacert {

namespace {

long long narrow(__int128 v)
{
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
        throw computation_error("matrix entry overflow");
    }
    return static_cast<long long>(v);
}

long long mulmod(long long x, long long y, long long m)
{
    return static_cast<long long>(mod_ll(static_cast<long long>((static_cast<__int128>(mod_ll(x, m)) *
                                                                mod_ll(y, m)) % m), m));
}

bool odd(long long x) { return (x % 2) != 0; }

} // namespace

SL2Matrix::SL2Matrix(long long a, long long b, long long c, long long d)
    : a_(a), b_(b), c_(c), d_(d)
{
    const __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
    if (det != 1) {
        throw invalid_input("matrix " + str() + " does not have determinant 1");
    }
}

SL2Matrix SL2Matrix::parse(const std::string& text)
{
    std::vector<long long> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw invalid_input("bad matrix entry '" + item + "'");
        }
        if (used != item.size()) {
            throw invalid_input("bad matrix entry '" + item + "'");
        }
        v.push_back(x);
    }
    if (v.size() != 4) {
        throw invalid_input("matrix must be given as a,b,c,d");
    }
    return SL2Matrix(v[0], v[1], v[2], v[3]);
}

std::complex<double> SL2Matrix::apply(std::complex<double> tau) const
{
    return (static_cast<double>(a_) * tau + static_cast<double>(b_)) /
           (static_cast<double>(c_) * tau + static_cast<double>(d_));
}

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y)
{
    using W = __int128;
    return SL2Matrix(narrow(W(x.a_) * y.a_ + W(x.b_) * y.c_), narrow(W(x.a_) * y.b_ + W(x.b_) * y.d_),
                     narrow(W(x.c_) * y.a_ + W(x.d_) * y.c_), narrow(W(x.c_) * y.b_ + W(x.d_) * y.d_));
}

std::string SL2Matrix::str() const
{
    return std::to_string(a_) + "," + std::to_string(b_) + "," + std::to_string(c_) + "," + std::to_string(d_);
}

Cusp::Cusp(long long a, long long c)
{
    if (a == 0 && c == 0) {
        throw invalid_input("0/0 is not a cusp");
    }
    const long long g = gcd_ll(a, c);
    a /= g;
    c /= g;
    if (c < 0) {
        a = -a;
        c = -c;
    }
    if (c == 0) a = 1;
    a_ = a;
    c_ = c;
}

SL2Matrix Cusp::scaling_matrix() const
{
    if (c_ == 0) return SL2Matrix();
    const auto e = extended_gcd(a_, c_);  // a x + c y = 1
    return SL2Matrix(a_, -e.y, c_, e.x);
}

std::string Cusp::str() const
{
    if (c_ == 0) return "oo";
    return std::to_string(a_) + "/" + std::to_string(c_);
}

std::string to_string(Subgroup s)
{
    switch (s) {
    case Subgroup::gamma0: return "Gamma0";
    case Subgroup::gamma1: return "Gamma1";
    case Subgroup::gamma2: return "Gamma2";
    case Subgroup::gamma2_prime: return "Gamma2'";
    }
    return "?";
}

std::optional<RootOfUnity> epsilon_c_odd_branch(long long a, long long b, long long c, long long d)
{
    if (!odd(c)) return std::nullopt;
    const long long t = mulmod(mulmod(b, d, 12), 1 - mulmod(c, c, 12), 12) + mulmod(c, a + d - 3, 12);
    return RootOfUnity(12, t);
}

std::optional<RootOfUnity> epsilon_d_odd_branch(long long a, long long b, long long c, long long d)
{
    if (!odd(d)) return std::nullopt;
    // -i = exp(2 pi i * (-3)/12)
    const long long t = mulmod(mulmod(a, c, 12), 1 - mulmod(d, d, 12), 12) + mulmod(d, b - c + 3, 12);
    return RootOfUnity(12, t - 3);
}

RootOfUnity epsilon(long long a, long long b, long long c, long long d)
{
    SL2Matrix(a, b, c, d);  // determinant check
    if (auto v = epsilon_c_odd_branch(a, b, c, d)) return *v;
    if (auto v = epsilon_d_odd_branch(a, b, c, d)) return *v;
    throw invalid_input("epsilon needs c or d odd");
}

int psi(const SL2Matrix& gamma)
{
    if (odd(gamma.c())) {
        return odd(gamma.a() + gamma.d() - 1) ? -1 : 1;
    }
    return odd(gamma.b()) ? -1 : 1;
}

int chi(const SL2Matrix& gamma, const PrimeContext& ctx)
{
    if (!ctx.p_is_1_mod_4()) {
        throw invalid_input("chi is only defined for p = 1 mod 4");
    }
    if (!membership(gamma, {Subgroup::gamma2, ctx})) {
        throw invalid_input("chi needs a matrix in Gamma_2(p), got " + gamma.str());
    }
    const long long n = ctx.dlog(gamma.a()) / ctx.k();
    return odd(n) ? -1 : 1;
}

int legendre(long long a, long long p)
{
    const long long r = mod_ll(a, p);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool membership(const SL2Matrix& gamma, const SubgroupTag& tag)
{
    const PrimeContext& ctx = tag.ctx;
    const long long p = ctx.p();
    if (mod_ll(gamma.c(), p) != 0) return false;
    switch (tag.kind) {
    case Subgroup::gamma0:
        return true;
    case Subgroup::gamma1:
        return mod_ll(gamma.a(), p) == 1 && mod_ll(gamma.d(), p) == 1;
    case Subgroup::gamma2:
        return ctx.dlog(gamma.a()) % ctx.k() == 0;
    case Subgroup::gamma2_prime: {
        if (ctx.dlog(gamma.a()) % ctx.k() != 0) return false;
        const int s = ctx.p_is_1_mod_4() ? psi(gamma) * chi(gamma, ctx) : psi(gamma);
        return s == 1;
    }
    }
    return false;
}

std::vector<long long> gamma2_residues(const PrimeContext& ctx)
{
    const long long p = ctx.p();
    const long long gk = pow_mod(ctx.g(), ctx.k(), p);
    std::set<long long> seen;
    long long x = 1;
    do {
        seen.insert(x);
        seen.insert(p - x);
        x = (x * gk) % p;
    } while (x != 1);
    return {seen.begin(), seen.end()};
}

EtaMultiplier multiplier_E(long long g, long long N, const SL2Matrix& gamma)
{
    if (mod_ll(gamma.c(), N) != 0) {
        throw invalid_input("matrix " + gamma.str() + " is not in Gamma_0(" + std::to_string(N) + ")");
    }
    if (mod_ll(g, N) == 0) {
        throw invalid_input("index divisible by the level");
    }
    const long long a = gamma.a(), b = gamma.b(), d = gamma.d();
    if (gamma.c() == 0) {
        // gamma tau = tau + b*d, since a = d = +-1.
        const Rational shift(b * d);
        return {RootOfUnity::from_half_turns(shift * Rational(N) * bernoulli_B(Rational(g, N))), g};
    }
    const long long c = gamma.c() / N;
    const RootOfUnity eps = epsilon(a, b * N, c, d);
    const Rational gg(g);
    const Rational half_turns = gg * gg * Rational(a) * Rational(b) / Rational(N) - gg * Rational(b);
    return {eps * RootOfUnity::from_half_turns(half_turns), a * g};
}

RootOfUnity rho(const SL2Matrix& gamma, const PrimeContext& ctx)
{
    if (mod_ll(gamma.c(), ctx.p()) != 0) {
        throw invalid_input("rho needs a matrix in Gamma_0(p)");
    }
    return RootOfUnity((ctx.p() - 1) / 2, ctx.dlog(gamma.a()));
}

RootOfUnity gamma2_prime_character(const SL2Matrix& gamma, const PrimeContext& ctx)
{
    const long long ell = ctx.ell();
    const RootOfUnity r = rho(gamma, ctx).pow(ell % 2 == 1 ? ell : ell / 2);
    return r * RootOfUnity::from_sign(psi(gamma));
}

bool QuotientReport::ok(const PrimeContext& ctx) const
{
    return index_gamma0_gamma2 == ctx.k() && index_gamma2_gamma1 == ctx.ell() &&
           image_order == 2 * ctx.k() && image_cyclic && kernel_matches && restriction_matches;
}

QuotientReport quotient_structure(const PrimeContext& ctx)
{
    const long long p = ctx.p();
    QuotientReport rep;
    rep.expected_order = 2 * ctx.k();

    // Cosets of <g^k, -1> in (Z/pZ)^x.
    const auto h = gamma2_residues(ctx);
    std::vector<bool> covered(static_cast<std::size_t>(p), false);
    long long classes = 0;
    for (long long u = 1; u < p; ++u) {
        if (covered[static_cast<std::size_t>(u)]) continue;
        ++classes;
        for (const long long x : h) covered[static_cast<std::size_t>(mulmod(u, x, p))] = true;
    }
    rep.index_gamma0_gamma2 = classes;
    rep.index_gamma2_gamma1 = static_cast<long long>(h.size()) / 2;

    const SubgroupTag g2{Subgroup::gamma2, ctx};
    const SubgroupTag g2p{Subgroup::gamma2_prime, ctx};
    std::set<RootOfUnity> image;
    rep.kernel_matches = true;
    rep.restriction_matches = true;
    for (long long u = 1; u < p; ++u) {
        const auto e = extended_gcd(u, p);  // u x + p y = 1
        const SL2Matrix lift(u, -e.y, p, e.x);
        for (const SL2Matrix& gamma : {lift, lift * SL2Matrix::T()}) {
            const RootOfUnity value = gamma2_prime_character(gamma, ctx);
            image.insert(value);
            ++rep.cosets_checked;
            if (value.is_one() != membership(gamma, g2p)) rep.kernel_matches = false;
            if (membership(gamma, g2)) {
                const int expected = ctx.p_is_1_mod_4() ? psi(gamma) * chi(gamma, ctx) : psi(gamma);
                if (value.as_sign() != expected) rep.restriction_matches = false;
            }
        }
    }
    rep.image_order = static_cast<long long>(image.size());
    rep.image_cyclic = std::any_of(image.begin(), image.end(),
                                   [&](const RootOfUnity& z) { return z.order() == rep.image_order; });
    return rep;
}

long long subgroup_level(const SubgroupTag& tag)
{
    return tag.kind == Subgroup::gamma2_prime ? 2 * tag.ctx.p() : tag.ctx.p();
}

long long cusp_width(const Cusp& x, const SubgroupTag& tag)
{
    const SL2Matrix sigma = x.scaling_matrix();
    const SL2Matrix sigma_inv = sigma.inverse();
    const long long level = subgroup_level(tag);
    for (long long w = 1; w <= level; ++w) {
        if (membership(sigma * SL2Matrix::T(w) * sigma_inv, tag)) return w;
    }
    throw computation_error("no width found for cusp " + x.str());
}

bool cusps_equivalent(const Cusp& x, const Cusp& y, const SubgroupTag& tag)
{
    const SL2Matrix sx_inv = x.scaling_matrix().inverse();
    const SL2Matrix sy = y.scaling_matrix();
    const long long level = subgroup_level(tag);
    for (long long n = 0; n < level; ++n) {
        const SL2Matrix t = sy * SL2Matrix::T(n) * sx_inv;
        if (membership(t, tag) || membership(-t, tag)) return true;
    }
    return false;
}

std::vector<CuspEntry> cusp_set(const SubgroupTag& tag)
{
    const long long p = tag.ctx.p();
    // Every subgroup here contains Gamma_1(p) or (for Gamma_2') the kernel
    // of psi on it; orbit representatives of those are complete candidates.
    std::vector<Cusp> candidates;
    candidates.push_back(Cusp::infinity());
    for (long long a = 2; a <= (p - 1) / 2; ++a) candidates.emplace_back(a, p);
    candidates.emplace_back(0, 1);
    for (long long c = 2; c <= (p - 1) / 2; ++c) candidates.emplace_back(1, c);
    if (tag.kind == Subgroup::gamma2_prime) {
        const std::size_t n = candidates.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Cusp& x = candidates[i];
            if (!x.is_infinity()) candidates.emplace_back(x.a() + x.c(), x.c());
        }
    }

    std::vector<CuspEntry> reps;
    for (const Cusp& x : candidates) {
        const bool known = std::any_of(reps.begin(), reps.end(),
                                       [&](const CuspEntry& r) { return cusps_equivalent(x, r.cusp, tag); });
        if (!known) reps.push_back({x, cusp_width(x, tag)});
    }
    return reps;
}

bool contains_minus_identity(const SubgroupTag& tag)
{
    return membership(SL2Matrix(-1, 0, 0, -1), tag);
}

long long subgroup_index(const SubgroupTag& tag)
{
    const long long p = tag.ctx.p();
    const long long base = p + 1;  // [SL(2,Z) : Gamma_0(p)]
    switch (tag.kind) {
    case Subgroup::gamma0: return base;
    case Subgroup::gamma1: return base * (p - 1);
    case Subgroup::gamma2:
        return base * (p - 1) / static_cast<long long>(gamma2_residues(tag.ctx).size());
    case Subgroup::gamma2_prime:
        return 2 * base * (p - 1) / static_cast<long long>(gamma2_residues(tag.ctx).size());
    }
    return 0;
}

SL2Matrix random_element(const SubgroupTag& tag, std::mt19937_64& rng, long long max_c_multiple)
{
    const PrimeContext& ctx = tag.ctx;
    const long long p = ctx.p();
    std::uniform_int_distribution<long long> tdist(-max_c_multiple, max_c_multiple);
    std::uniform_int_distribution<long long> shift(-3, 3);
    std::vector<long long> residues;
    switch (tag.kind) {
    case Subgroup::gamma0:
        for (long long u = 1; u < p; ++u) residues.push_back(u);
        break;
    case Subgroup::gamma1:
        residues.push_back(1);
        break;
    case Subgroup::gamma2:
    case Subgroup::gamma2_prime:
        residues = gamma2_residues(ctx);
        break;
    }
    std::uniform_int_distribution<std::size_t> pick(0, residues.size() - 1);

    for (;;) {
        const long long c = p * tdist(rng);
        long long d = 0;
        if (c == 0) {
            // Only d = +-1 is possible; keep the ones allowed by the residue set.
            d = (rng() & 1) ? 1 : -1;
            if (std::find(residues.begin(), residues.end(), mod_ll(d, p)) == residues.end()) continue;
        } else {
            d = residues[pick(rng)] + p * shift(rng);
            if (gcd_ll(c, d) != 1) continue;
        }
        SL2Matrix gamma;
        if (c == 0) {
            gamma = SL2Matrix(d, shift(rng), 0, d);
        } else {
            const auto e = extended_gcd(d, c);  // d x + c y = 1
            gamma = SL2Matrix::T(shift(rng)) * SL2Matrix(e.x, -e.y, c, d);
        }
        if (tag.kind == Subgroup::gamma2_prime && !membership(gamma, tag)) {
            gamma = gamma * SL2Matrix::T();
        }
        if (!membership(gamma, tag)) {
            throw computation_error("random element generation left the subgroup");
        }
        return gamma;
    }
}

} // namespace etacert
