#include <doctest.h>

#include <algorithm>
#include <random>

#include "etacert/congruence.hpp"
#include "etacert/error.hpp"
#include "oracles.hpp"

using namespace etacert;

namespace {

std::set<long long> gamma2_diagonal(const PrimeContext& ctx)
{
    return oracle::generated_with_minus_one(pow_mod(ctx.g(), ctx.k(), ctx.p()), ctx.p());
}

std::vector<oracle::Mat> image_of(Subgroup kind, const PrimeContext& ctx)
{
    const long long p = ctx.p();
    std::set<long long> diag;
    switch (kind) {
    case Subgroup::gamma0:
        for (long long a = 1; a < p; ++a) diag.insert(a);
        break;
    case Subgroup::gamma1:
        diag = {1};
        break;
    default:
        diag = gamma2_diagonal(ctx);
    }
    return oracle::borel_image(p, diag);
}

} // namespace

TEST_CASE("matrices")
{
    const SL2Matrix m = SL2Matrix::parse("2,1,5,3");
    CHECK(m == SL2Matrix(2, 1, 5, 3));
    CHECK(m * m.inverse() == SL2Matrix());
    CHECK(SL2Matrix::T(3) == SL2Matrix::T() * SL2Matrix::T() * SL2Matrix::T());
    CHECK(SL2Matrix::S() * SL2Matrix::S() == -SL2Matrix());
    CHECK(m.str() == "2,1,5,3");
    CHECK_THROWS_AS(SL2Matrix(1, 1, 1, 1), invalid_input);
    CHECK_THROWS_AS(SL2Matrix::parse("1,2,3"), invalid_input);
    CHECK_THROWS_AS(SL2Matrix::parse("a,b,c,d"), invalid_input);
    const auto t = m.apply({0.0, 1.0});
    CHECK(std::abs(t - std::complex<double>(1.0, 2.0) / std::complex<double>(3.0, 5.0)) < 1e-15);
}

TEST_CASE("cusps are canonical")
{
    CHECK(Cusp(2, 4) == Cusp(1, 2));
    CHECK(Cusp(-1, -3) == Cusp(1, 3));
    CHECK(Cusp(5, 0) == Cusp::infinity());
    CHECK(Cusp(3, 0).str() == "oo");
    CHECK(Cusp(2, 11).str() == "2/11");
    const SL2Matrix s = Cusp(2, 5).scaling_matrix();
    CHECK(s.a() == 2);
    CHECK(s.c() == 5);
}

TEST_CASE("eta multiplier epsilon")
{
    CHECK(epsilon(1, 0, 1, 1) == RootOfUnity(12, 11));
    CHECK(epsilon(1, 0, 0, 1).is_one());
    CHECK(epsilon(1, 1, 0, 1) == RootOfUnity(12, 1));
    // both branches agree where both apply
    for (long long a = -6; a <= 6; ++a)
        for (long long c = 1; c <= 9; c += 2)
            for (long long d = 1; d <= 9; d += 2) {
                if ((a * d - 1) % c != 0) continue;
                const long long b = (a * d - 1) / c;
                const auto x = epsilon_c_odd_branch(a, b, c, d);
                const auto y = epsilon_d_odd_branch(a, b, c, d);
                REQUIRE(x);
                REQUIRE(y);
                CHECK(*x == *y);
            }
    CHECK_FALSE(epsilon_c_odd_branch(1, 0, 2, 1));
    CHECK_THROWS_AS(epsilon(1, 1, 1, 1), invalid_input);
}

TEST_CASE("psi is the sign character mod 2")
{
    CHECK(psi(SL2Matrix::T()) == -1);
    CHECK(psi(SL2Matrix::S()) == -1);
    CHECK(psi(SL2Matrix()) == 1);
    std::mt19937_64 rng(3);
    const PrimeContext ctx = make_context(7);
    for (int i = 0; i < 200; ++i) {
        const SL2Matrix x = random_element({Subgroup::gamma0, ctx}, rng, 3);
        const SL2Matrix y = random_element({Subgroup::gamma0, ctx}, rng, 3);
        CHECK(psi(x * y) == psi(x) * psi(y));
        CHECK(psi(x) == oracle::sign_mod2(x.a(), x.b(), x.c(), x.d()));
    }
}

TEST_CASE("chi")
{
    const PrimeContext ctx = make_context(13);
    CHECK(chi(SL2Matrix(1, 0, 13, 1), ctx) == 1);
    CHECK(chi(SL2Matrix(-1, 0, 13, -1), ctx) == 1);
    // a = g^k = 15 = 2 mod 13
    const long long a = pow_mod(ctx.g(), ctx.k(), 13);
    const auto e = extended_gcd(a, 13);
    const SL2Matrix m(a, -e.y, 13, e.x);
    CHECK(chi(m, ctx) == -1);
    CHECK_THROWS_AS(chi(SL2Matrix(1, 0, 13, 1), make_context(7)), invalid_input);
    CHECK_THROWS_AS(chi(SL2Matrix::S(), ctx), invalid_input);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const SL2Matrix x = random_element({Subgroup::gamma2, ctx}, rng);
        const SL2Matrix y = random_element({Subgroup::gamma2, ctx}, rng);
        CHECK(chi(x * y, ctx) == chi(x, ctx) * chi(y, ctx));
        CHECK(chi(random_element({Subgroup::gamma1, ctx}, rng), ctx) == 1);
    }
}

TEST_CASE("legendre")
{
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(14, 7) == 0);
}

TEST_CASE("membership and random elements")
{
    for (long long p : {5, 7, 11, 13, 17}) {
        const PrimeContext ctx = make_context(p);
        std::mt19937_64 rng(static_cast<unsigned>(p));
        for (Subgroup kind : {Subgroup::gamma0, Subgroup::gamma1, Subgroup::gamma2, Subgroup::gamma2_prime}) {
            for (int i = 0; i < 40; ++i) {
                const SL2Matrix m = random_element({kind, ctx}, rng);
                CHECK(membership(m, {kind, ctx}));
                CHECK(membership(m, {Subgroup::gamma0, ctx}));
            }
        }
        CHECK_FALSE(membership(SL2Matrix::S(), {Subgroup::gamma0, ctx}));
        CHECK(membership(SL2Matrix::T(), {Subgroup::gamma1, ctx}));
        CHECK_FALSE(membership(-SL2Matrix(), {Subgroup::gamma1, ctx}));
        CHECK(membership(-SL2Matrix(), {Subgroup::gamma2, ctx}));
    }
}

TEST_CASE("rho and the Gamma_2' character")
{
    const PrimeContext ctx = make_context(13);
    CHECK(rho(SL2Matrix::T(), ctx).is_one());
    CHECK(rho(-SL2Matrix(), ctx).is_one());
    CHECK(gamma2_prime_character(SL2Matrix::T(), ctx).as_sign() == -1);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const SL2Matrix x = random_element({Subgroup::gamma0, ctx}, rng);
        const SL2Matrix y = random_element({Subgroup::gamma0, ctx}, rng);
        CHECK(gamma2_prime_character(x * y, ctx) == gamma2_prime_character(x, ctx) * gamma2_prime_character(y, ctx));
        const SL2Matrix z = random_element({Subgroup::gamma2_prime, ctx}, rng);
        CHECK(gamma2_prime_character(z, ctx).is_one());
    }
}

TEST_CASE("quotient structure has order 2k")
{
    for (long long p = 5; p < 100; ++p) {
        if (!oracle::is_prime(p)) continue;
        const PrimeContext ctx = make_context(p);
        const QuotientReport q = quotient_structure(ctx);
        CAPTURE(p);
        CHECK(q.ok(ctx));
        CHECK(q.image_order == 2 * ctx.k());
        CHECK(q.image_cyclic);
        CHECK(q.index_gamma0_gamma2 == ctx.k());
        CHECK(q.index_gamma2_gamma1 == ctx.ell());
    }
}

TEST_CASE("subgroup index against SL2(Z/p) counts")
{
    for (long long p : {5, 7, 11, 13}) {
        const PrimeContext ctx = make_context(p);
        const long long order = static_cast<long long>(oracle::sl2_mod(p).size());
        for (Subgroup kind : {Subgroup::gamma0, Subgroup::gamma1, Subgroup::gamma2}) {
            const long long h = static_cast<long long>(image_of(kind, ctx).size());
            CAPTURE(p);
            CAPTURE(to_string(kind));
            CHECK(subgroup_index({kind, ctx}) == order / h);
        }
        // Gamma_2': pairs (m mod 2, m mod p) in SL2(Z/2) x image(Gamma_2) with
        // sign(m mod 2) equal to chi (p = 1 mod 4) or to 1.
        const auto diag = gamma2_diagonal(ctx);
        long long members = 0;
        for (const auto& m2 : oracle::sl2_mod(2)) {
            for (long long a : diag) {
                const int want = ctx.p_is_1_mod_4() ? ((ctx.dlog(a) / ctx.k()) % 2 == 0 ? 1 : -1) : 1;
                if (oracle::sign_mod2(m2[0], m2[1], m2[2], m2[3]) == want) members += p;
            }
        }
        CHECK(subgroup_index({Subgroup::gamma2_prime, ctx}) == 6 * order / members);
    }
}

TEST_CASE("cusps against orbit enumeration")
{
    for (long long p = 5; p < 40; ++p) {
        if (!oracle::is_prime(p)) continue;
        const PrimeContext ctx = make_context(p);
        for (Subgroup kind : {Subgroup::gamma0, Subgroup::gamma1, Subgroup::gamma2}) {
            const auto orbits = oracle::cusp_orbits(p, image_of(kind, ctx));
            const auto cusps = cusp_set({kind, ctx});
            CAPTURE(p);
            CAPTURE(to_string(kind));
            REQUIRE(cusps.size() == orbits.size());
            std::vector<bool> hit(orbits.size(), false);
            for (const auto& e : cusps) {
                const std::pair<long long, long long> v{oracle::mod(e.cusp.a(), p), oracle::mod(e.cusp.c(), p)};
                for (std::size_t i = 0; i < orbits.size(); ++i) {
                    if (orbits[i].vectors.count(v)) {
                        CHECK_FALSE(hit[i]);
                        hit[i] = true;
                        CHECK(e.width == orbits[i].width);
                    }
                }
            }
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        }
    }
}

TEST_CASE("cusp counts and width sums")
{
    CHECK(cusp_set({Subgroup::gamma0, make_context(7)}).size() == 2);
    CHECK(cusp_set({Subgroup::gamma1, make_context(11)}).size() == 10);
    CHECK(cusp_set({Subgroup::gamma2, make_context(5)}).size() == 2);
    CHECK(cusp_set({Subgroup::gamma2, make_context(17)}).size() == 8);
    for (long long p : {5, 7, 13, 17, 19}) {
        const PrimeContext ctx = make_context(p);
        for (Subgroup kind : {Subgroup::gamma0, Subgroup::gamma1, Subgroup::gamma2, Subgroup::gamma2_prime}) {
            const SubgroupTag tag{kind, ctx};
            long long sum = 0;
            for (const auto& e : cusp_set(tag)) sum += e.width;
            const long long idx = subgroup_index(tag);
            CHECK(sum == (contains_minus_identity(tag) ? idx : idx / 2));
        }
    }
}

TEST_CASE("multiplier of E_g under translations")
{
    const EtaMultiplier m = multiplier_E(1, 5, SL2Matrix::T());
    CHECK(m.factor == RootOfUnity(60, 1));
    CHECK(m.new_index == 1);
    CHECK_THROWS_AS(multiplier_E(1, 5, SL2Matrix::S()), invalid_input);
}
