#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "etacert/certifier.hpp"
#include "etacert/error.hpp"

using namespace etacert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

void require_prime(long long p, long long at_least)
{
    if (!is_prime(p)) {
        throw invalid_input(std::to_string(p) + " is not prime");
    }
    if (p < at_least) {
        throw invalid_input("p must be at least " + std::to_string(at_least));
    }
}

Triplet parse_triplet(const std::string& text)
{
    static const std::regex re(R"(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw invalid_input("triplet must look like h1,h2,h3");
    }
    return {std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3])};
}

std::string format_sign_or_root(const RootOfUnity& z)
{
    const int s = z.as_sign();
    return s != 0 ? std::to_string(s) : z.str();
}

// --- expand ---------------------------------------------------------------

struct ExpandArgs {
    long long p = 0;
    std::string function = "E";
    std::optional<long long> index;
    long long prec = 10;
    std::string triplet;
};

int run_expand(const ExpandArgs& args)
{
    if (args.prec < 0) {
        throw invalid_input("--prec must be non-negative");
    }
    const Rational steps(args.prec);
    QSeries series;
    if (args.function == "E") {
        if (args.p < 2) throw invalid_input("level must be at least 2");
        const EtaIndex idx = reduce_index(args.index.value_or(1), args.p);
        const Rational bound = eta_leading_exponent(idx.g_reduced, args.p) + steps;
        series = expand_E(idx.g_reduced, args.p, bound) * Rational(idx.sign);
    } else if (args.function == "eta") {
        const long long scale = args.index.value_or(1);
        if (scale <= 0) throw invalid_input("eta scale must be positive");
        series = expand_eta(scale, Rational(scale, 24) + steps);
    } else if (args.function == "F") {
        require_prime(args.p, 5);
        const PrimeContext ctx = make_context(args.p);
        if (ctx.ell() == 1) {
            throw invalid_input("F_h needs p != 11 mod 12; use --function G");
        }
        const EtaProduct f = build_F(args.index.value_or(1), ctx);
        series = expand_product(f, f.leading_exponent() + steps);
    } else if (args.function == "G") {
        require_prime(args.p, 5);
        const Triplet t = args.triplet.empty() ? find_triplet(args.p) : parse_triplet(args.triplet);
        const EtaProduct g = build_G(t, args.p);
        series = expand_product(g, g.leading_exponent() + steps);
    } else if (args.function == "z") {
        require_prime(args.p, 5);
        series = build_z(make_context(args.p), z_leading_exponent(args.p) + steps);
    } else {
        throw invalid_input("unknown function '" + args.function + "'");
    }
    std::cout << series.str() << "\n";
    return kExitOk;
}

// --- character ------------------------------------------------------------

struct CharacterArgs {
    std::optional<long long> p;
    std::string matrix;
    std::string which = "psi";
};

int run_character(const CharacterArgs& args)
{
    const SL2Matrix gamma = SL2Matrix::parse(args.matrix);
    if (args.which == "psi") {
        std::cout << psi(gamma) << "\n";
    } else if (args.which == "epsilon") {
        std::cout << format_sign_or_root(epsilon(gamma.a(), gamma.b(), gamma.c(), gamma.d())) << "\n";
    } else if (args.which == "chi") {
        if (!args.p) throw invalid_input("chi needs --p");
        require_prime(*args.p, 5);
        std::cout << chi(gamma, make_context(*args.p)) << "\n";
    } else {
        throw invalid_input("unknown character '" + args.which + "'");
    }
    return kExitOk;
}

// --- cusps ----------------------------------------------------------------

Subgroup parse_group(const std::string& name)
{
    if (name == "gamma0" || name == "Gamma0") return Subgroup::gamma0;
    if (name == "gamma1" || name == "Gamma1") return Subgroup::gamma1;
    if (name == "gamma2" || name == "Gamma2") return Subgroup::gamma2;
    if (name == "gamma2'" || name == "gamma2_prime" || name == "Gamma2'") return Subgroup::gamma2_prime;
    throw invalid_input("unknown group '" + name + "'");
}

int run_cusps(long long p, const std::string& group)
{
    require_prime(p, 5);
    const SubgroupTag tag{parse_group(group), make_context(p)};
    const auto cusps = cusp_set(tag);
    long long total = 0;
    std::cout << "# " << to_string(tag.kind) << "(" << p << "): " << cusps.size() << " cusps\n";
    std::cout << "cusp\twidth\n";
    for (const auto& e : cusps) {
        std::cout << e.cusp.str() << "\t" << e.width << "\n";
        total += e.width;
    }
    std::cout << "# width sum " << total << "\n";
    return kExitOk;
}

// --- certify --------------------------------------------------------------

std::vector<long long> parse_range(const std::string& text)
{
    static const std::regex re(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw invalid_input("range must look like A..B");
    }
    const long long lo = std::stoll(m[1]);
    const long long hi = std::stoll(m[2]);
    if (lo > hi) throw invalid_input("empty range " + text);
    std::vector<long long> primes;
    for (long long n = lo; n <= hi; ++n) {
        if (is_prime(n)) primes.push_back(n);
    }
    if (primes.empty()) throw invalid_input("no primes in range " + text);
    return primes;
}

std::vector<CertReport> certify_all(const std::vector<long long>& primes)
{
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<CertReport> reports;
    reports.reserve(primes.size());
    for (std::size_t start = 0; start < primes.size(); start += width) {
        std::vector<std::future<CertReport>> batch;
        for (std::size_t i = start; i < std::min(primes.size(), start + width); ++i) {
            batch.push_back(std::async(std::launch::async, [p = primes[i]] { return certify(p); }));
        }
        for (auto& f : batch) reports.push_back(f.get());
    }
    return reports;
}

void print_summary(const std::vector<CertReport>& reports)
{
    std::printf("%6s  %-8s %6s %6s %5s %5s %5s  %s\n", "p", "branch", "k", "degree", "pass", "fail", "skip",
                "overall");
    for (const auto& r : reports) {
        int counts[3] = {0, 0, 0};
        for (const auto& c : r.checks) ++counts[static_cast<int>(c.status)];
        std::printf("%6lld  %-8s %6lld %6lld %5d %5d %5d  %s\n", r.p, r.branch.c_str(), r.k, r.degree, counts[0],
                    counts[1], counts[2], r.overall ? "PASS" : "FAIL");
        for (const auto& c : r.checks) {
            if (c.status == CheckStatus::fail) std::printf("        %s: %s\n", c.name.c_str(), c.reason.c_str());
        }
    }
}

int run_certify(std::optional<long long> p, const std::string& range, const std::string& out, bool as_json)
{
    std::vector<long long> primes;
    if (p) {
        require_prime(*p, 2);
        primes.push_back(*p);
    } else {
        primes = parse_range(range);
    }
    const auto reports = certify_all(primes);
    for (const auto& r : reports) write_report(r, out);
    if (as_json) {
        if (reports.size() == 1) {
            std::cout << to_json(reports.front()).dump(2) << "\n";
        } else {
            json all = json::array();
            for (const auto& r : reports) all.push_back(to_json(r));
            std::cout << all.dump(2) << "\n";
        }
    } else {
        print_summary(reports);
    }
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const CertReport& r) { return r.overall; });
    return ok ? kExitOk : kExitFailure;
}

// --- z-relation -----------------------------------------------------------

int run_z_relation(long long p, long long prec)
{
    require_prime(p, 5);
    if (prec < 0) throw invalid_input("--prec must be non-negative");
    const PrimeContext ctx = make_context(p);
    const CheckResult r = verify_z_relation(ctx, prec);
    switch (r.status) {
    case CheckStatus::skipped:
        std::cout << "skipped: " << r.reason << "\n";
        return kExitOk;
    case CheckStatus::fail:
        std::cout << "fail: " << r.reason << "\n";
        return kExitFailure;
    case CheckStatus::pass:
        break;
    }
    const int sign = r.witness.at("sign").get<int>();
    std::cout << "z = " << (sign > 0 ? "+" : "-") << "prod_{j=0}^{" << ctx.k() - 1 << "} F_{" << ctx.g()
              << "^j}  (p = " << p << ", k = " << ctx.k() << ", up to q^(" << r.witness.at("bound").get<std::string>()
              << "))\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized eta products and per-prime covering certificates"};
    app.require_subcommand(1);

    ExpandArgs expand_args;
    auto* expand = app.add_subcommand("expand", "Print an exact q-expansion");
    expand->add_option("--p", expand_args.p, "Level (prime for F, G, z)")->required();
    expand->add_option("--function", expand_args.function, "E | F | G | z | eta")
        ->check(CLI::IsMember({"E", "F", "G", "z", "eta"}));
    expand->add_option("--index", expand_args.index, "g for E, h for F, scale for eta");
    expand->add_option("--prec", expand_args.prec, "Integer q-steps past the leading exponent");
    expand->add_option("--triplet", expand_args.triplet, "h1,h2,h3 for G");

    CharacterArgs char_args;
    auto* character = app.add_subcommand("character", "Evaluate psi, chi or the eta multiplier epsilon");
    character->add_option("--p", char_args.p, "Prime (needed for chi)");
    character->add_option("--matrix", char_args.matrix, "a,b,c,d")->required();
    character->add_option("--which", char_args.which, "psi | chi | epsilon")
        ->check(CLI::IsMember({"psi", "chi", "epsilon"}));

    long long cusps_p = 0;
    std::string cusps_group = "gamma2";
    auto* cusps = app.add_subcommand("cusps", "List cusp representatives and widths");
    cusps->add_option("--p", cusps_p, "Prime")->required();
    cusps->add_option("--group", cusps_group, "gamma0 | gamma1 | gamma2 | gamma2'");

    std::optional<long long> cert_p;
    std::string cert_range;
    std::string cert_out = "results";
    bool cert_json = false;
    auto* certify_cmd = app.add_subcommand("certify", "Certify one prime or a range of primes");
    auto* p_opt = certify_cmd->add_option("--p", cert_p, "Prime");
    auto* range_opt = certify_cmd->add_option("--range", cert_range, "A..B");
    p_opt->excludes(range_opt);
    certify_cmd->add_option("--out", cert_out, "Directory for report_p<p>.json files");
    certify_cmd->add_flag("--json", cert_json, "Print the JSON report instead of the summary table");

    long long z_p = 0;
    long long z_prec = 10;
    auto* zrel = app.add_subcommand("z-relation", "Compare z with the product of F_{g^j}");
    zrel->add_option("--p", z_p, "Prime")->required();
    zrel->add_option("--prec", z_prec, "Integer q-steps past the leading exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*expand) return run_expand(expand_args);
        if (*character) return run_character(char_args);
        if (*cusps) return run_cusps(cusps_p, cusps_group);
        if (*certify_cmd) {
            if (!cert_p && cert_range.empty()) throw invalid_input("certify needs --p or --range");
            return run_certify(cert_p, cert_range, cert_out, cert_json);
        }
        if (*zrel) return run_z_relation(z_p, z_prec);
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitInvalid;
}
