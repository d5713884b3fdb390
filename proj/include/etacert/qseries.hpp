#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "etacert/rational.hpp"

namespace etacert {

// Truncated formal series sum_n c_n q^(n/D) with exponents on the
// lattice (1/D)Z and exact rational coefficients.
//
// Terms are stored sparsely by lattice numerator n. The truncation
// order is an exponent bound: everything at or above it is unknown. A
// series without a truncation order is exact (a finite sum).
//
// Invariants: no stored coefficient is zero; every stored exponent is
// strictly below the truncation order.
class QSeries {
public:
    using Terms = std::map<long long, Rational>;

    QSeries() = default;  // exact zero on lattice 1
    QSeries(long long lattice, std::optional<Rational> truncation);

    static QSeries constant(const Rational& c, long long lattice = 1,
                            std::optional<Rational> truncation = std::nullopt);
    static QSeries monomial(const Rational& c, const Rational& exponent,
                            std::optional<Rational> truncation = std::nullopt);
    static QSeries one() { return constant(Rational(1)); }

    long long lattice() const { return lattice_; }
    const std::optional<Rational>& truncation() const { return truncation_; }
    bool is_exact() const { return !truncation_.has_value(); }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational exponent_of(long long numerator) const { return Rational(numerator, lattice_); }
    // Coefficient at an exponent; throws precision_error at or above the
    // truncation order, and if the exponent is off-lattice returns 0.
    Rational coefficient(const Rational& exponent) const;

    // Adds c*q^exponent (exponent must lie on the lattice and below the
    // truncation order; terms beyond truncation are silently dropped).
    void add_term(const Rational& exponent, const Rational& c);

    // Same series on the finer lattice (1/new_lattice)Z.
    QSeries rescaled(long long new_lattice) const;
    // Drop everything at or above bound; truncation becomes
    // min(truncation, bound).
    QSeries truncated(const Rational& bound) const;

    // Smallest-exponent term. Throws on a series with no known nonzero
    // term.
    std::pair<Rational, Rational> leading() const;
    // Leading exponent if there is a term, otherwise the truncation order
    // (everything below it is known to vanish). Throws for exact zero.
    Rational valuation() const;

    QSeries operator-() const;
    QSeries& operator*=(const Rational& c);

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }

    // Structural equality: same terms, same truncation. Lattices may
    // differ.
    friend bool operator==(const QSeries& a, const QSeries& b);

    // c_1*q^(a_1/b_1) + c_2*q^(a_2/b_2) + ... + O(q^(a/b))
    std::string str() const;

private:
    long long lattice_ = 1;
    Terms terms_;
    std::optional<Rational> truncation_;

    long long numerator_on_lattice(const Rational& exponent) const;
    bool below_truncation(long long numerator) const;
};

QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_mul(const QSeries& a, const QSeries& b);

// Power by repeated squaring. Negative n inverts first; inverting a
// series whose lowest coefficient is unknown or zero is rejected, as is
// inverting an exact non-monomial (its inverse has no finite form).
QSeries qs_pow(const QSeries& a, long long n);
QSeries qs_inverse(const QSeries& a);

// True iff every coefficient with exponent < bound agrees. Throws
// precision_error if bound exceeds either truncation order.
bool qs_equal_upto(const QSeries& a, const QSeries& b, const Rational& bound);

std::pair<Rational, Rational> qs_leading(const QSeries& a);

} // namespace etacert
