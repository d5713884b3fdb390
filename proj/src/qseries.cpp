#include "etacert/qseries.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "etacert/arith.hpp"
#include "etacert/error.hpp"

namespace etacert {

namespace {

std::optional<Rational> min_trunc(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
    if (!a) return b;
    if (!b) return a;
    return min(*a, *b);
}

// Smallest lattice numerator n with n/lattice >= bound.
long long cutoff_numerator(const Rational& bound, long long lattice)
{
    const Rational scaled = bound * Rational(lattice);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.raw().get_num_mpz_t(), scaled.raw().get_den_mpz_t());
    if (!c.fits_slong_p()) {
        throw computation_error("truncation order out of range");
    }
    return c.get_si();
}

std::string exponent_text(const Rational& e)
{
    return "q^(" + e.numerator().get_str() + "/" + e.denominator().get_str() + ")";
}

} // namespace

QSeries::QSeries(long long lattice, std::optional<Rational> truncation)
    : lattice_(lattice), truncation_(std::move(truncation))
{
    if (lattice <= 0) {
        throw invalid_input("lattice denominator must be positive");
    }
}

QSeries QSeries::constant(const Rational& c, long long lattice, std::optional<Rational> truncation)
{
    QSeries s(lattice, std::move(truncation));
    s.add_term(Rational(0), c);
    return s;
}

QSeries QSeries::monomial(const Rational& c, const Rational& exponent, std::optional<Rational> truncation)
{
    QSeries s(exponent.den_ll(), std::move(truncation));
    s.add_term(exponent, c);
    return s;
}

long long QSeries::numerator_on_lattice(const Rational& exponent) const
{
    const Rational scaled = exponent * Rational(lattice_);
    if (!scaled.is_integer()) {
        throw invalid_input("exponent " + exponent.str() + " is not on the lattice 1/" +
                            std::to_string(lattice_));
    }
    return scaled.num_ll();
}

bool QSeries::below_truncation(long long numerator) const
{
    return !truncation_ || Rational(numerator, lattice_) < *truncation_;
}

Rational QSeries::coefficient(const Rational& exponent) const
{
    if (truncation_ && exponent >= *truncation_) {
        throw precision_error("coefficient of q^" + exponent.str() + " lies beyond the truncation order " +
                              truncation_->str());
    }
    const Rational scaled = exponent * Rational(lattice_);
    if (!scaled.is_integer()) return Rational(0);
    const auto it = terms_.find(scaled.num_ll());
    return it == terms_.end() ? Rational(0) : it->second;
}

void QSeries::add_term(const Rational& exponent, const Rational& c)
{
    if (c.is_zero()) return;
    const long long n = numerator_on_lattice(exponent);
    if (!below_truncation(n)) return;
    auto [it, inserted] = terms_.try_emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QSeries QSeries::rescaled(long long new_lattice) const
{
    if (new_lattice == lattice_) return *this;
    if (new_lattice % lattice_ != 0) {
        throw invalid_input("lattice 1/" + std::to_string(new_lattice) + " does not refine 1/" +
                            std::to_string(lattice_));
    }
    const long long factor = new_lattice / lattice_;
    QSeries out(new_lattice, truncation_);
    for (const auto& [n, c] : terms_) {
        out.terms_.emplace_hint(out.terms_.end(), n * factor, c);
    }
    return out;
}

QSeries QSeries::truncated(const Rational& bound) const
{
    QSeries out(lattice_, min_trunc(truncation_, bound));
    const long long cut = cutoff_numerator(*out.truncation_, lattice_);
    for (const auto& [n, c] : terms_) {
        if (n >= cut) break;
        out.terms_.emplace_hint(out.terms_.end(), n, c);
    }
    return out;
}

std::pair<Rational, Rational> QSeries::leading() const
{
    if (terms_.empty()) {
        if (is_exact()) {
            throw invalid_input("the zero series has no leading term");
        }
        throw precision_error("series vanishes up to O(q^" + truncation_->str() + "); no leading term known");
    }
    const auto& [n, c] = *terms_.begin();
    return {Rational(n, lattice_), c};
}

Rational QSeries::valuation() const
{
    if (!terms_.empty()) return Rational(terms_.begin()->first, lattice_);
    if (truncation_) return *truncation_;
    throw invalid_input("the exact zero series has infinite valuation");
}

QSeries QSeries::operator-() const
{
    QSeries out = *this;
    for (auto& [n, c] : out.terms_) c = -c;
    return out;
}

QSeries& QSeries::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [n, v] : terms_) v *= c;
    return *this;
}

QSeries operator+(const QSeries& a, const QSeries& b)
{
    const long long lattice = lcm_ll(a.lattice_, b.lattice_);
    QSeries out = a.rescaled(lattice);
    out.truncation_ = min_trunc(a.truncation_, b.truncation_);
    const QSeries bb = b.rescaled(lattice);
    for (const auto& [n, c] : bb.terms_) {
        auto [it, inserted] = out.terms_.try_emplace(n, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    if (out.truncation_) {
        const long long cut = cutoff_numerator(*out.truncation_, lattice);
        out.terms_.erase(out.terms_.lower_bound(cut), out.terms_.end());
    }
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b)
{
    const long long lattice = lcm_ll(a.lattice_, b.lattice_);
    const bool a_zero = a.is_exact() && a.empty();
    const bool b_zero = b.is_exact() && b.empty();
    if (a_zero || b_zero) return QSeries(lattice, std::nullopt);

    std::optional<Rational> trunc;
    if (a.truncation_ && b.truncation_) {
        trunc = min(*a.truncation_ + b.valuation(), *b.truncation_ + a.valuation());
    } else if (a.truncation_) {
        trunc = *a.truncation_ + b.valuation();
    } else if (b.truncation_) {
        trunc = *b.truncation_ + a.valuation();
    }

    const QSeries ra = a.rescaled(lattice);
    const QSeries rb = b.rescaled(lattice);
    QSeries out(lattice, trunc);
    const long long cut = trunc ? cutoff_numerator(*trunc, lattice) : 0;
    for (const auto& [na, ca] : ra.terms_) {
        for (const auto& [nb, cb] : rb.terms_) {
            const long long n = na + nb;
            if (trunc && n >= cut) break;
            auto [it, inserted] = out.terms_.try_emplace(n, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

bool operator==(const QSeries& a, const QSeries& b)
{
    if (a.truncation_ != b.truncation_) return false;
    const long long lattice = lcm_ll(a.lattice_, b.lattice_);
    return a.rescaled(lattice).terms_ == b.rescaled(lattice).terms_;
}

std::string QSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, c] : terms_) {
        if (!first) os << " + ";
        os << c.str() << "*" << exponent_text(Rational(n, lattice_));
        first = false;
    }
    if (truncation_) {
        if (!first) os << " + ";
        os << "O(" << exponent_text(*truncation_) << ")";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

QSeries qs_add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries qs_mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries qs_inverse(const QSeries& a)
{
    if (a.empty()) {
        throw invalid_input("cannot invert a series with zero (or unknown) leading coefficient");
    }
    const auto [lead, lead_coef] = a.leading();
    if (a.is_exact()) {
        if (a.size() != 1) {
            throw invalid_input("inverse of an exact non-monomial needs a truncation order");
        }
        return QSeries::monomial(Rational(1) / lead_coef, -lead);
    }

    // a = c q^e (1 + u); work in relative lattice units, compressed to
    // the step that actually occurs in u.
    const long long lattice = a.lattice();
    const long long base = a.terms().begin()->first;
    long long step = 0;
    for (const auto& [n, c] : a.terms()) step = std::gcd(step, n - base);
    const Rational rel_precision = *a.truncation() - lead;
    const long long cut = cutoff_numerator(rel_precision, lattice);
    if (step == 0) step = cut > 0 ? cut : 1;

    std::vector<std::pair<long long, Rational>> unit;  // (index, coeff) for index >= 1
    for (const auto& [n, c] : a.terms()) {
        if (n == base) continue;
        unit.emplace_back((n - base) / step, c);
    }
    const long long count = (cut + step - 1) / step;  // indices i with i*step < cut
    const Rational inv_c = Rational(1) / lead_coef;
    std::vector<Rational> b(static_cast<std::size_t>(count));
    if (count > 0) b[0] = inv_c;
    for (long long i = 1; i < count; ++i) {
        Rational acc;
        for (const auto& [j, u] : unit) {
            if (j > i) break;
            const Rational& prev = b[static_cast<std::size_t>(i - j)];
            if (!prev.is_zero()) acc += u * prev;
        }
        b[static_cast<std::size_t>(i)] = -(acc * inv_c);
    }

    QSeries out(lattice, *a.truncation() - lead - lead);
    for (long long i = 0; i < count; ++i) {
        const Rational& c = b[static_cast<std::size_t>(i)];
        if (!c.is_zero()) {
            out.add_term(Rational(i * step - base, lattice), c);
        }
    }
    return out;
}

QSeries qs_pow(const QSeries& a, long long n)
{
    if (n == 0) return QSeries::one();
    if (n < 0) return qs_pow(qs_inverse(a), -n);
    QSeries result;
    bool have = false;
    QSeries base = a;
    while (n > 0) {
        if (n & 1) {
            result = have ? result * base : base;
            have = true;
        }
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

bool qs_equal_upto(const QSeries& a, const QSeries& b, const Rational& bound)
{
    for (const auto* s : {&a, &b}) {
        if (s->truncation() && bound > *s->truncation()) {
            throw precision_error("comparison bound " + bound.str() + " exceeds truncation order " +
                                  s->truncation()->str());
        }
    }
    const long long lattice = lcm_ll(a.lattice(), b.lattice());
    const long long cut = cutoff_numerator(bound, lattice);
    const QSeries ra = a.rescaled(lattice);
    const QSeries rb = b.rescaled(lattice);
    auto ia = ra.terms().begin();
    auto ib = rb.terms().begin();
    const auto ea = ra.terms().lower_bound(cut);
    const auto eb = rb.terms().lower_bound(cut);
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return ia == ea && ib == eb;
}

std::pair<Rational, Rational> qs_leading(const QSeries& a) { return a.leading(); }

} // namespace etacert
