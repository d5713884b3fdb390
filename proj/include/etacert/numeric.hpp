#pragma once

#include <complex>
#include <vector>

#include "etacert/congruence.hpp"
#include "etacert/eta.hpp"
#include "etacert/qseries.hpp"

namespace etacert {

inline constexpr double kDefaultImFloor = 0.5;

// A point of the upper half-plane with Im(tau) >= floor.
class UpperHalfPoint {
public:
    UpperHalfPoint(double re, double im, double floor = kDefaultImFloor);
    explicit UpperHalfPoint(std::complex<double> tau, double floor = kDefaultImFloor)
        : UpperHalfPoint(tau.real(), tau.imag(), floor) {}

    std::complex<double> tau() const { return tau_; }
    double im() const { return tau_.imag(); }

private:
    std::complex<double> tau_;
};

/// {i, 1/4 + i, -1/3 + 2i, 0.1 + 0.8i}
std::vector<UpperHalfPoint> default_samples();

// Complex value stored as sign * exp(log_abs_arg) so that products of
// many small or large factors never overflow.
struct LogValue {
    std::complex<double> log;  // any branch
    int sign = 1;

    std::complex<double> value() const { return static_cast<double>(sign) * std::exp(log); }
};

/// Number of factors m needed so that |q|^(N m) < 1e-18 at tau.
long long auto_term_bound(long long N, const UpperHalfPoint& tau);

/// Truncated product for E_g (1 <= g <= N-1): q^{N B(g/N)/2} prod_{m<=term_bound}(...).
LogValue log_E(long long g, long long N, const UpperHalfPoint& tau, long long term_bound);
std::complex<double> eval_E(long long g, long long N, const UpperHalfPoint& tau, long long term_bound);

/// eta(s tau), with the number of Euler factors chosen automatically.
LogValue log_eta(long long scale, const UpperHalfPoint& tau);
std::complex<double> eval_eta(long long scale, const UpperHalfPoint& tau);

/// Direct product evaluation of sign * prod E_g^{e_g}.
LogValue log_product(const EtaProduct& prod, const UpperHalfPoint& tau, long long term_bound = 0);
std::complex<double> eval_product(const EtaProduct& prod, const UpperHalfPoint& tau, long long term_bound = 0);

/// Direct evaluation of z = (eta(tau)/eta(p tau))^{12/gcd(p-1,12)}.
std::complex<double> eval_z(long long p, const UpperHalfPoint& tau);

/// Sum of c q^e over the series terms. Requires |q|^(trunc - lead) < 1e-15
/// (relative truncation error); throws precision_error otherwise.
std::complex<double> eval_series(const QSeries& s, const UpperHalfPoint& tau);

/// |1 - b/a| computed from logs.
double relative_residual(const LogValue& a, const LogValue& b, std::complex<double> factor = 1.0);

/// A point tau with both tau and gamma tau at imaginary part about
/// Im(sample)/|c|: tau = -d/c + sample/|c| (or the sample itself when c = 0).
UpperHalfPoint transported_point(const SL2Matrix& gamma, const UpperHalfPoint& sample);

/// max over samples of |E_g(gamma tau) - mult * E_{ag}(tau)| / |E_g(gamma tau)|.
double check_multiplier(long long g, long long N, const SL2Matrix& gamma,
                        const std::vector<UpperHalfPoint>& samples);

struct TransformCheck {
    double max_residual = 0.0;           // F_h(gamma tau) vs psi F_{ah}(tau)
    double max_residual_gamma2 = 0.0;    // F_h(gamma tau) vs (psi chi) F_h(tau), gamma in Gamma_2
    bool checked_gamma2 = false;
    bool within_tol = false;
};

/// Transformation of F_h under Gamma_0(p) and, for gamma in Gamma_2(p),
/// under the character psi*chi (p = 1 mod 4) or psi (p = 3 mod 4).
/// Rejects ell = 1 (p = 11 mod 12): use check_G_transform there.
TransformCheck check_F_transform(const PrimeContext& ctx, long long h, const SL2Matrix& gamma,
                                 const std::vector<UpperHalfPoint>& samples, double tol);

/// G_h(gamma tau) vs psi(gamma) G_h(tau) for gamma in Gamma_1(p).
TransformCheck check_G_transform(long long p, const Triplet& h, const SL2Matrix& gamma,
                                 const std::vector<UpperHalfPoint>& samples, double tol);

/// |f(gamma tau)/f(tau) - 1| for an eta product f and gamma expected to fix it.
double check_invariance(const EtaProduct& prod, const SL2Matrix& gamma, const std::vector<UpperHalfPoint>& samples);

} // namespace etacert
