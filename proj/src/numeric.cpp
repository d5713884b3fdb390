#include "etacert/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "etacert/error.hpp"

namespace etacert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI(0.0, 1.0);

// q^n for q = exp(2 pi i tau)
std::complex<double> q_pow(std::complex<double> tau, double n)
{
    return std::exp(kTwoPi * kI * tau * n);
}

long long factors_needed(double step, const UpperHalfPoint& tau)
{
    // smallest exponent n with |q|^n < 1e-18, expressed in units of step
    const double n = 18.0 * std::log(10.0) / (kTwoPi * tau.im());
    return static_cast<long long>(std::ceil(n / step)) + 1;
}

} // namespace

UpperHalfPoint::UpperHalfPoint(double re, double im, double floor)
    : tau_(re, im)
{
    if (!(im > 0.0)) {
        throw invalid_input("point is not in the upper half-plane");
    }
    if (im < floor) {
        throw invalid_input("imaginary part " + std::to_string(im) + " below the floor " + std::to_string(floor));
    }
}

std::vector<UpperHalfPoint> default_samples()
{
    return {UpperHalfPoint(0.0, 1.0), UpperHalfPoint(0.25, 1.0), UpperHalfPoint(-1.0 / 3.0, 2.0),
            UpperHalfPoint(0.1, 0.8)};
}

long long auto_term_bound(long long N, const UpperHalfPoint& tau)
{
    return factors_needed(static_cast<double>(N), tau);
}

LogValue log_E(long long g, long long N, const UpperHalfPoint& tau, long long term_bound)
{
    if (N < 2 || g < 1 || g > N - 1) {
        throw invalid_input("log_E needs 1 <= g <= N-1");
    }
    if (term_bound < 1) {
        throw invalid_input("term bound must be at least 1");
    }
    const std::complex<double> t = tau.tau();
    const double lead = eta_leading_exponent(g, N).to_double();
    std::complex<double> acc = kTwoPi * kI * t * lead;
    for (long long m = 1; m <= term_bound; ++m) {
        acc += std::log(1.0 - q_pow(t, static_cast<double>(N * (m - 1) + g)));
        acc += std::log(1.0 - q_pow(t, static_cast<double>(N * m - g)));
    }
    return {acc, 1};
}

std::complex<double> eval_E(long long g, long long N, const UpperHalfPoint& tau, long long term_bound)
{
    return log_E(g, N, tau, term_bound).value();
}

LogValue log_eta(long long scale, const UpperHalfPoint& tau)
{
    if (scale <= 0) {
        throw invalid_input("eta scale must be positive");
    }
    const std::complex<double> t = tau.tau();
    std::complex<double> acc = kTwoPi * kI * t * (static_cast<double>(scale) / 24.0);
    const long long m_max = factors_needed(static_cast<double>(scale), tau);
    for (long long m = 1; m <= m_max; ++m) {
        acc += std::log(1.0 - q_pow(t, static_cast<double>(scale * m)));
    }
    return {acc, 1};
}

std::complex<double> eval_eta(long long scale, const UpperHalfPoint& tau) { return log_eta(scale, tau).value(); }

LogValue log_product(const EtaProduct& prod, const UpperHalfPoint& tau, long long term_bound)
{
    const long long N = prod.level();
    const long long bound = term_bound > 0 ? term_bound : auto_term_bound(N, tau);
    LogValue out{0.0, prod.sign()};
    for (const auto& [g, e] : prod.exponents()) {
        out.log += static_cast<double>(e) * log_E(g, N, tau, bound).log;
    }
    return out;
}

std::complex<double> eval_product(const EtaProduct& prod, const UpperHalfPoint& tau, long long term_bound)
{
    return log_product(prod, tau, term_bound).value();
}

std::complex<double> eval_z(long long p, const UpperHalfPoint& tau)
{
    const double e = static_cast<double>(z_exponent(p));
    return std::exp(e * (log_eta(1, tau).log - log_eta(p, tau).log));
}

std::complex<double> eval_series(const QSeries& s, const UpperHalfPoint& tau)
{
    if (s.truncation()) {
        const Rational rel = *s.truncation() - s.valuation();
        const double err = std::exp(-kTwoPi * tau.im() * rel.to_double());
        if (!(err < 1e-15)) {
            throw precision_error("series truncated too early for evaluation at this point (|q|^" + rel.str() +
                                  " = " + std::to_string(err) + ")");
        }
    }
    const std::complex<double> t = tau.tau();
    std::complex<double> sum = 0.0;
    for (const auto& [n, c] : s.terms()) {
        sum += c.to_double() * q_pow(t, static_cast<double>(n) / static_cast<double>(s.lattice()));
    }
    return sum;
}

double relative_residual(const LogValue& a, const LogValue& b, std::complex<double> factor)
{
    const double sign = static_cast<double>(a.sign * b.sign);
    return std::abs(1.0 - factor * sign * std::exp(b.log - a.log));
}

UpperHalfPoint transported_point(const SL2Matrix& gamma, const UpperHalfPoint& sample)
{
    if (gamma.c() == 0) return sample;
    const double c = static_cast<double>(gamma.c());
    const double d = static_cast<double>(gamma.d());
    return UpperHalfPoint(-d / c + sample.tau() / std::abs(c), 0.0);
}

double check_multiplier(long long g, long long N, const SL2Matrix& gamma, const std::vector<UpperHalfPoint>& samples)
{
    const EtaMultiplier mult = multiplier_E(g, N, gamma);
    const EtaIndex lhs = reduce_index(g, N);
    const EtaIndex rhs = reduce_index(mult.new_index, N);
    double worst = 0.0;
    for (const auto& s : samples) {
        const UpperHalfPoint tau = transported_point(gamma, s);
        const UpperHalfPoint gtau(gamma.apply(tau.tau()), 0.0);
        LogValue a = log_E(lhs.g_reduced, N, gtau, auto_term_bound(N, gtau));
        a.sign = lhs.sign;
        LogValue b = log_E(rhs.g_reduced, N, tau, auto_term_bound(N, tau));
        b.sign = rhs.sign;
        worst = std::max(worst, relative_residual(a, b, mult.factor.value()));
    }
    return worst;
}

TransformCheck check_F_transform(const PrimeContext& ctx, long long h, const SL2Matrix& gamma,
                                 const std::vector<UpperHalfPoint>& samples, double tol)
{
    if (ctx.ell() == 1) {
        throw invalid_input("F-branch transformation needs ell != 1 (p = 11 mod 12 uses check_G_transform)");
    }
    if (!membership(gamma, {Subgroup::gamma0, ctx})) {
        throw invalid_input("matrix " + gamma.str() + " is not in Gamma_0(p)");
    }
    const long long p = ctx.p();
    const EtaProduct f = build_F(h, ctx);
    const EtaProduct f_ah = build_F(mod_ll(mod_ll(gamma.a(), 2 * p) * mod_ll(h, 2 * p), 2 * p), ctx);
    const int ps = psi(gamma);
    TransformCheck out;
    out.checked_gamma2 = membership(gamma, {Subgroup::gamma2, ctx});
    const int character = out.checked_gamma2 ? (ctx.p_is_1_mod_4() ? ps * chi(gamma, ctx) : ps) : 0;
    for (const auto& s : samples) {
        const UpperHalfPoint tau = transported_point(gamma, s);
        const UpperHalfPoint gtau(gamma.apply(tau.tau()), 0.0);
        const LogValue lhs = log_product(f, gtau);
        out.max_residual = std::max(out.max_residual, relative_residual(lhs, log_product(f_ah, tau), ps));
        if (out.checked_gamma2) {
            out.max_residual_gamma2 =
                std::max(out.max_residual_gamma2, relative_residual(lhs, log_product(f, tau), character));
        }
    }
    out.within_tol = out.max_residual < tol && out.max_residual_gamma2 < tol;
    return out;
}

TransformCheck check_G_transform(long long p, const Triplet& h, const SL2Matrix& gamma,
                                 const std::vector<UpperHalfPoint>& samples, double tol)
{
    const EtaProduct gh = build_G(h, p);
    const PrimeContext ctx = make_context(p);
    if (!membership(gamma, {Subgroup::gamma1, ctx})) {
        throw invalid_input("matrix " + gamma.str() + " is not in Gamma_1(p)");
    }
    const int ps = psi(gamma);
    TransformCheck out;
    for (const auto& s : samples) {
        const UpperHalfPoint tau = transported_point(gamma, s);
        const UpperHalfPoint gtau(gamma.apply(tau.tau()), 0.0);
        out.max_residual =
            std::max(out.max_residual, relative_residual(log_product(gh, gtau), log_product(gh, tau), ps));
    }
    out.within_tol = out.max_residual < tol;
    return out;
}

double check_invariance(const EtaProduct& prod, const SL2Matrix& gamma, const std::vector<UpperHalfPoint>& samples)
{
    double worst = 0.0;
    for (const auto& s : samples) {
        const UpperHalfPoint tau = transported_point(gamma, s);
        const UpperHalfPoint gtau(gamma.apply(tau.tau()), 0.0);
        worst = std::max(worst, relative_residual(log_product(prod, gtau), log_product(prod, tau)));
    }
    return worst;
}

} // namespace etacert
