#include "etacert/rational.hpp"

#include <limits>
#include <ostream>

#include "etacert/error.hpp"

namespace etacert {

namespace {

long long checked_ll(const mpz_class& z)
{
    if (!z.fits_slong_p()) {
        throw computation_error("integer does not fit in 64 bits: " + z.get_str());
    }
    return z.get_si();
}

} // namespace

Rational::Rational(long long num, long long den)
    : value_(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)))
{
    if (den == 0) {
        throw invalid_input("rational with zero denominator");
    }
    value_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den)
    : value_(num, den)
{
    if (den == 0) {
        throw invalid_input("rational with zero denominator");
    }
    value_.canonicalize();
}

Rational Rational::parse(const std::string& text)
{
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) {
        throw invalid_input("not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw invalid_input("rational with zero denominator");
    }
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw invalid_input("division by zero");
    }
    value_ /= o.value_;
    return *this;
}

mpz_class Rational::floor() const
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return f;
}

Rational Rational::frac() const
{
    return *this - Rational(floor(), mpz_class(1));
}

long long Rational::num_ll() const { return checked_ll(value_.get_num()); }
long long Rational::den_ll() const { return checked_ll(value_.get_den()); }

long long Rational::to_ll() const
{
    if (!is_integer()) {
        throw computation_error("expected an integer, got " + str());
    }
    return num_ll();
}

std::string Rational::str() const { return value_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace etacert
