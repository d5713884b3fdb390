#include <doctest.h>

#include <random>

#include "etacert/arith.hpp"
#include "etacert/error.hpp"
#include "etacert/root_of_unity.hpp"
#include "oracles.hpp"

using namespace etacert;

TEST_CASE("rational basics")
{
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(4, -8) == Rational(-1, 2));
    CHECK(Rational(-1, 2).denominator() == 2);
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).frac() == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(a / Rational(0), invalid_input);
    CHECK_THROWS_AS(Rational(1, 0), invalid_input);
    CHECK_THROWS_AS(Rational::parse("1/x"), invalid_input);
    CHECK_THROWS_AS(Rational(1, 2).to_ll(), computation_error);
}

TEST_CASE("Bernoulli polynomial and sawtooth")
{
    CHECK(bernoulli_B(Rational(1, 5)) == Rational(1, 150));
    CHECK(bernoulli_B(Rational(0)) == Rational(1, 6));
    CHECK(sawtooth_P2(Rational(7, 3)) == Rational(-1, 18));
    CHECK(sawtooth_P2(Rational(-2, 3)) == Rational(-1, 18));
    CHECK(sawtooth_P2(Rational(5)) == Rational(1, 6));
}

TEST_CASE("property: P2 is periodic and even, B matches oracle")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-500, 500), den(1, 60), shift(-5, 5);
    for (int i = 0; i < 300; ++i) {
        const Rational x(num(rng), den(rng));
        const long long n = shift(rng);
        CHECK(sawtooth_P2(x + Rational(n)) == sawtooth_P2(x));
        CHECK(sawtooth_P2(-x) == sawtooth_P2(x));
        const mpq_class q(x.raw());
        CHECK(bernoulli_B(x).raw() == oracle::bernoulli(q));
        CHECK(sawtooth_P2(x).raw() == oracle::periodic_bernoulli(q));
    }
}

TEST_CASE("integer helpers")
{
    CHECK(gcd_ll(-12, 18) == 6);
    CHECK(lcm_ll(4, 6) == 12);
    CHECK(mod_ll(-7, 5) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(pow_mod(3, 4, 7) == 4);
    CHECK(pow_mod(3, -1, 7) == 5);
    CHECK(inv_mod(3, 7) == 5);
    CHECK_THROWS_AS(inv_mod(2, 4), invalid_input);
    const auto e = extended_gcd(240, 46);
    CHECK(e.g == 2);
    CHECK(240 * e.x + 46 * e.y == 2);
    CHECK(multiplicative_order(2, 7) == 3);
}

TEST_CASE("odd primitive root")
{
    CHECK(odd_primitive_root(5) == 7);
    CHECK(odd_primitive_root(7) == 3);
    CHECK(odd_primitive_root(13) == 15);
    CHECK(odd_primitive_root(11) == 13);
    CHECK(odd_primitive_root(23) == 5);
    CHECK_THROWS_AS(odd_primitive_root(9), invalid_input);
    CHECK_THROWS_AS(odd_primitive_root(3), invalid_input);
    for (long long p = 5; p < 300; ++p) {
        if (!oracle::is_prime(p)) continue;
        CAPTURE(p);
        CHECK(is_prime(p));
        const long long r = oracle::smallest_primitive_root(p);
        const long long g = odd_primitive_root(p);
        CHECK(g % 2 == 1);
        CHECK(g == (r % 2 == 1 ? r : r + p));
        CHECK(oracle::order_mod(g, p) == p - 1);
    }
}

TEST_CASE("prime context")
{
    const PrimeContext c13 = make_context(13);
    CHECK(c13.g() == 15);
    CHECK(c13.k() == 1);
    CHECK(c13.ell() == 6);
    CHECK(c13.Np() == 1);
    CHECK(c13.p_is_1_mod_4());
    const PrimeContext c11 = make_context(11);
    CHECK(c11.k() == 5);
    CHECK(c11.ell() == 1);
    CHECK(c11.g_branch());
    const PrimeContext c17 = make_context(17);
    CHECK(c17.k() == 4);
    CHECK(c17.ell() == 2);
    for (long long a = 1; a < 17; ++a) CHECK(pow_mod(c17.g(), c17.dlog(a), 17) == a);
    CHECK_THROWS_AS(PrimeContext(13, 3), invalid_input);  // 3 has order 3 mod 13
    CHECK_THROWS_AS(PrimeContext(13, 2), invalid_input);  // even
    CHECK_THROWS_AS(make_context(15), invalid_input);
}

TEST_CASE("root of unity")
{
    const RootOfUnity z(12, 11);
    CHECK(z.order() == 12);
    CHECK(z.exponent() == 11);
    CHECK(RootOfUnity(24, 6) == RootOfUnity(4, 1));
    CHECK(RootOfUnity(6, -1) == RootOfUnity(6, 5));
    CHECK(RootOfUnity::minus_one().as_sign() == -1);
    CHECK(RootOfUnity(1, 0).is_one());
    CHECK(RootOfUnity(3, 1).as_sign() == 0);
    CHECK(z.pow(12).is_one());
    CHECK((z * z.inverse()).is_one());
    CHECK(RootOfUnity::from_turns(Rational(-1, 24)) == RootOfUnity(24, 23));
    CHECK(RootOfUnity::from_half_turns(Rational(1, 2)) == RootOfUnity(4, 1));
    CHECK(z.str() == "e^(2*pi*i*11/12)");
    CHECK(std::abs(RootOfUnity(4, 1).value() - std::complex<double>(0, 1)) < 1e-15);
    CHECK_THROWS_AS(RootOfUnity(0, 1), invalid_input);
}
