#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "etacert/certifier.hpp"
#include "etacert/error.hpp"
#include "oracles.hpp"

using namespace etacert;

TEST_CASE("shifting identities per branch")
{
    const CheckResult r5 = verify_shifting(make_context(5), 10);
    CHECK(r5.status == CheckStatus::pass);
    CHECK(r5.witness[0]["F_gk_h_sign"] == -1);
    const CheckResult r7 = verify_shifting(make_context(7), 10);
    CHECK(r7.status == CheckStatus::pass);
    CHECK(r7.witness[0]["F_gk_h_sign"] == 1);
    const CheckResult r11 = verify_shifting(make_context(11), 10);
    CHECK(r11.status == CheckStatus::skipped);
    CHECK(r11.reason == "ell=1: F-branch replaced by G-branch");
}

TEST_CASE("invariance")
{
    const CertConfig config;
    const CheckResult r13 = verify_invariance(make_context(13), config);
    CHECK(r13.status == CheckStatus::pass);
    CHECK(r13.witness["group"] == "Gamma2");
    const CheckResult r11 = verify_invariance(make_context(11), config);
    CHECK(r11.status == CheckStatus::pass);
    CHECK(r11.witness["group"] == "Gamma1");
    CHECK(r11.witness["function"] == "G_(1,1,3)");
}

TEST_CASE("cusp orders")
{
    const auto t5 = cusp_orders(make_context(5));
    REQUIRE(t5.size() == 2);
    CHECK(t5[0].cusp == Cusp::infinity());
    CHECK(t5[0].order == -1);
    CHECK(t5[1].order == 1);
    CHECK(t5[1].width == 5);

    const auto t11 = cusp_orders(make_context(11));
    REQUIRE(t11.size() == 10);
    const std::vector<long long> expected = {3, -1, -1, -1, -5, 1, 1, 1, 1, 1};
    for (std::size_t i = 0; i < t11.size(); ++i) CHECK(t11[i].order == expected[i]);

    for (long long p = 5; p < 100; ++p) {
        if (!oracle::is_prime(p)) continue;
        const PrimeContext ctx = make_context(p);
        const auto table = cusp_orders(ctx);
        CAPTURE(p);
        CHECK(check_cusp_orders(ctx, table).status == CheckStatus::pass);
        for (const auto& row : table) {
            CHECK(row.odd());
            if (row.cusp.c() % p != 0) CHECK(row.order == 1);
        }
    }
}

TEST_CASE("cusp order check catches an even order")
{
    const PrimeContext ctx = make_context(13);
    auto table = cusp_orders(ctx);
    table.front().order += 1;
    CHECK(check_cusp_orders(ctx, table).status == CheckStatus::fail);
}

TEST_CASE("z relation signs")
{
    const CheckResult r5 = verify_z_relation(make_context(5), 10);
    CHECK(r5.status == CheckStatus::pass);
    CHECK(r5.witness["sign"] == -1);
    const CheckResult r11 = verify_z_relation(make_context(11), 10);
    CHECK(r11.status == CheckStatus::pass);
    CHECK(r11.witness["sign"] == 1);
    const CheckResult r17 = verify_z_relation(make_context(17), 10);
    CHECK(r17.status == CheckStatus::skipped);
    CHECK_FALSE(r17.reason.empty());
}

TEST_CASE("certify examples")
{
    const CertReport r11 = certify(11);
    CHECK(r11.overall);
    CHECK(r11.degree == 10);
    CHECK(r11.branch == "G");
    CHECK(r11.find("transform_G") != nullptr);
    CHECK(r11.find("shifting")->status == CheckStatus::skipped);

    const CertReport r13 = certify(13);
    CHECK(r13.overall);
    CHECK(r13.degree == 2);
    CHECK(r13.branch == "F-chi");

    const CertReport r7 = certify(7);
    CHECK(r7.branch == "F-psi");

    const CertReport r3 = certify(3);
    CHECK(r3.overall);
    CHECK(r3.degree == 2);
    CHECK(r3.branch == "small-p");
    CHECK(r3.cusps.empty());

    CHECK_THROWS_AS(certify(4), invalid_input);
    CHECK_THROWS_AS(certify(1), invalid_input);
}

TEST_CASE("report JSON round trip and stable keys")
{
    for (long long p : {2, 5, 11, 17}) {
        const CertReport r = certify(p);
        const json j = to_json(r);
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
        CHECK(keys == std::vector<std::string>{"p", "g", "k", "ell", "Np", "degree", "branch", "checks", "cusps",
                                               "overall"});
        CHECK(report_from_json(json::parse(j.dump())) == r);
        CHECK(to_json(certify(p)).dump() == j.dump());
    }
    CHECK_THROWS_AS(check_status_from_string("maybe"), invalid_input);
}

TEST_CASE("reports are written per prime")
{
    const auto dir = std::filesystem::temp_directory_path() / "etacert_report_test";
    std::filesystem::remove_all(dir);
    const auto path = write_report(certify(5), dir);
    CHECK(path.filename() == "report_p5.json");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(report_from_json(json::parse(ss.str())) == certify(5));
    std::filesystem::remove_all(dir);
}

TEST_CASE("skipped and failed statuses survive a round trip")
{
    CertReport r = certify(17);
    CHECK(r.overall);
    CHECK(r.find("z_relation")->status == CheckStatus::skipped);
    r.checks.back().status = CheckStatus::fail;
    CHECK(report_from_json(to_json(r)).checks.back().status == CheckStatus::fail);
}

TEST_CASE("every prime up to 100 certifies, every branch exercised")
{
    std::map<std::string, int> per_branch;
    for (long long p = 2; p <= 100; ++p) {
        if (!oracle::is_prime(p)) continue;
        const CertReport r = certify(p);
        CAPTURE(p);
        CHECK(r.overall);
        CHECK(r.degree == 2 * r.Np);
        for (const auto& c : r.checks) {
            if (c.status == CheckStatus::skipped) CHECK_FALSE(c.reason.empty());
            CHECK(c.status != CheckStatus::fail);
        }
        for (const auto& row : r.cusps) CHECK(row.odd());
        ++per_branch[r.branch];
    }
    CHECK(per_branch["F-chi"] >= 2);
    CHECK(per_branch["F-psi"] >= 2);
    CHECK(per_branch["G"] >= 2);
    CHECK(per_branch["small-p"] == 2);
}
