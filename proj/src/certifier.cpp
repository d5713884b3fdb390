#include "etacert/certifier.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>

#include "etacert/error.hpp"

namespace etacert {

namespace {

CheckResult passed_if(std::string name, bool ok, json witness, std::string reason = {})
{
    CheckResult r;
    r.name = std::move(name);
    r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    r.witness = std::move(witness);
    if (!ok) r.reason = std::move(reason);
    return r;
}

CheckResult skipped(std::string name, std::string reason)
{
    CheckResult r;
    r.name = std::move(name);
    r.status = CheckStatus::skipped;
    r.reason = std::move(reason);
    return r;
}

// Any exception inside a check is a failed check, not a crashed report.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        CheckResult r;
        r.name = name;
        r.status = CheckStatus::fail;
        r.reason = e.what();
        return r;
    }
}

std::mt19937_64 rng_for(const CertConfig& config, long long p, std::uint64_t salt)
{
    std::seed_seq seq{config.seed, static_cast<std::uint64_t>(p), salt};
    return std::mt19937_64(seq);
}

Subgroup certified_group(const PrimeContext& ctx)
{
    return ctx.g_branch() ? Subgroup::gamma1 : Subgroup::gamma2;
}

} // namespace

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    }
    return "fail";
}

CheckStatus check_status_from_string(const std::string& s)
{
    if (s == "pass") return CheckStatus::pass;
    if (s == "fail") return CheckStatus::fail;
    if (s == "skipped") return CheckStatus::skipped;
    throw invalid_input("unknown check status '" + s + "'");
}

const CheckResult* CertReport::find(const std::string& name) const
{
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

json to_json(const CertReport& r)
{
    json j;
    j["p"] = r.p;
    j["g"] = r.g;
    j["k"] = r.k;
    j["ell"] = r.ell;
    j["Np"] = r.Np;
    j["degree"] = r.degree;
    j["branch"] = r.branch;
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json cj;
        cj["name"] = c.name;
        cj["status"] = to_string(c.status);
        if (!c.reason.empty()) cj["reason"] = c.reason;
        if (!c.witness.is_null()) cj["witness"] = c.witness;
        j["checks"].push_back(std::move(cj));
    }
    j["cusps"] = json::array();
    for (const auto& c : r.cusps) {
        j["cusps"].push_back({{"a", c.cusp.a()}, {"c", c.cusp.c()}, {"width", c.width}, {"order", c.order}});
    }
    j["overall"] = r.overall;
    return j;
}

CertReport report_from_json(const json& j)
{
    CertReport r;
    r.p = j.at("p").get<long long>();
    r.g = j.at("g").get<long long>();
    r.k = j.at("k").get<long long>();
    r.ell = j.at("ell").get<long long>();
    r.Np = j.at("Np").get<long long>();
    r.degree = j.at("degree").get<long long>();
    r.branch = j.at("branch").get<std::string>();
    for (const auto& cj : j.at("checks")) {
        CheckResult c;
        c.name = cj.at("name").get<std::string>();
        c.status = check_status_from_string(cj.at("status").get<std::string>());
        if (cj.contains("reason")) c.reason = cj.at("reason").get<std::string>();
        if (cj.contains("witness")) c.witness = cj.at("witness");
        r.checks.push_back(std::move(c));
    }
    for (const auto& cj : j.at("cusps")) {
        r.cusps.push_back({Cusp(cj.at("a").get<long long>(), cj.at("c").get<long long>()),
                           cj.at("width").get<long long>(), cj.at("order").get<long long>()});
    }
    r.overall = j.at("overall").get<bool>();
    return r;
}

std::string branch_name(const PrimeContext& ctx)
{
    if (ctx.g_branch()) return "G";
    return ctx.p_is_1_mod_4() ? "F-chi" : "F-psi";
}

CheckResult verify_shifting(const PrimeContext& ctx, long long steps)
{
    if (ctx.g_branch()) {
        return skipped("shifting", "ell=1: F-branch replaced by G-branch");
    }
    const long long p = ctx.p();
    const long long gk = pow_mod(ctx.g(), ctx.k(), 2 * p);
    const int expected_sign = ctx.p_is_1_mod_4() ? -1 : 1;
    bool ok = true;
    json witness = json::array();
    for (const long long h : {1LL, 2LL, ctx.g()}) {
        const EtaProduct f = build_F(h, ctx);
        const Rational bound = f.leading_exponent() + Rational(steps);
        const QSeries base = expand_product(f, bound);
        const bool neg = qs_equal_upto(base, expand_product(build_F(-h, ctx), bound), bound);
        const bool shift = qs_equal_upto(base, expand_product(build_F(p + h, ctx), bound), bound);
        const QSeries twisted = expand_product(build_F(mod_ll(gk * h, 2 * p), ctx), bound);
        const bool gk_rule = qs_equal_upto(twisted, base * Rational(expected_sign), bound);
        ok = ok && neg && shift && gk_rule;
        witness.push_back({{"h", h},
                           {"bound", bound.str()},
                           {"F_minus_h", neg},
                           {"F_p_plus_h", shift},
                           {"F_gk_h_sign", expected_sign},
                           {"F_gk_h", gk_rule}});
    }
    return passed_if("shifting", ok, std::move(witness), "an F_h shifting identity failed");
}

EtaProduct certified_function(const PrimeContext& ctx, long long h)
{
    if (ctx.g_branch()) return build_G(find_triplet(ctx.p()), ctx.p());
    return build_F(h, ctx);
}

CheckResult verify_invariance(const PrimeContext& ctx, const CertConfig& config)
{
    const EtaProduct f = certified_function(ctx, config.h);
    const EtaProduct square = f.pow(2);
    const bool modular = modularity_criterion(square);

    const SubgroupTag tag{certified_group(ctx), ctx};
    auto rng = rng_for(config, ctx.p(), 2);
    double worst = 0.0;
    for (int i = 0; i < config.gammas_per_group; ++i) {
        const SL2Matrix gamma = random_element(tag, rng, config.max_c_multiple);
        worst = std::max(worst, check_invariance(square, gamma, config.samples));
    }
    const bool invariant = worst < config.tol;

    const Rational bound = f.leading_exponent() + Rational(config.steps);
    const QSeries series = expand_product(f, bound);
    const bool integral = std::all_of(series.terms().begin(), series.terms().end(),
                                      [](const auto& kv) { return kv.second.is_integer(); });
    const Rational square_lead = square.leading_exponent();
    const bool odd_lead = square_lead.is_integer() && (square_lead.numerator() % 2 != 0);

    json witness = {{"function", f.label()},
                    {"modularity_criterion", modular},
                    {"group", to_string(tag.kind)},
                    {"samples", config.gammas_per_group},
                    {"max_residual", worst},
                    {"integer_coefficients", integral},
                    {"square_leading_exponent", square_lead.str()},
                    {"odd_leading_exponent", odd_lead}};
    return passed_if("invariance", modular && invariant && integral && odd_lead, std::move(witness),
                     "square of the certified function is not invariant or not rational");
}

std::vector<CuspOrder> cusp_orders(const PrimeContext& ctx, long long h)
{
    const long long p = ctx.p();
    const EtaProduct square = certified_function(ctx, h).pow(2);
    std::vector<CuspOrder> table;
    for (const auto& entry : cusp_set({certified_group(ctx), ctx})) {
        const SL2Matrix sigma = entry.cusp.scaling_matrix();
        Rational order;
        for (const auto& [g, e] : square.exponents()) {
            order += Rational(e) * leading_delta(g, p, sigma);
        }
        order *= Rational(entry.width);
        if (!order.is_integer()) {
            throw computation_error("order at cusp " + entry.cusp.str() + " is not an integer: " + order.str());
        }
        table.push_back({entry.cusp, entry.width, order.to_ll()});
    }
    return table;
}

CheckResult check_cusp_orders(const PrimeContext& ctx, const std::vector<CuspOrder>& table)
{
    const long long p = ctx.p();
    const SubgroupTag tag{certified_group(ctx), ctx};
    bool all_odd = true;
    bool unit_at_width_p = true;
    long long width_sum = 0;
    for (const auto& row : table) {
        all_odd = all_odd && row.odd();
        if (row.cusp.c() % p != 0) unit_at_width_p = unit_at_width_p && row.order == 1 && row.width == p;
        width_sum += row.width;
    }
    const long long index = subgroup_index(tag);
    const long long expected_width_sum = contains_minus_identity(tag) ? index : index / 2;
    const bool widths_ok = width_sum == expected_width_sum;
    json witness = {{"group", to_string(tag.kind)},
                    {"cusps", static_cast<long long>(table.size())},
                    {"all_odd", all_odd},
                    {"order_at_p_not_dividing_c", unit_at_width_p ? 1 : 0},
                    {"width_sum", width_sum},
                    {"expected_width_sum", expected_width_sum},
                    {"ramification_index", all_odd ? 2 : 1}};
    return passed_if("cusp_orders", all_odd && unit_at_width_p && widths_ok && !table.empty(), std::move(witness),
                     "cusp order parity or width bookkeeping failed");
}

CheckResult verify_z_relation(const PrimeContext& ctx, long long steps)
{
    const long long p = ctx.p();
    if (p % 8 == 1) {
        return skipped("z_relation", "p = 1 mod 8: z is not a function on Gamma_2'(p)");
    }
    const Rational bound = z_leading_exponent(p) + Rational(steps);
    const QSeries z = build_z(ctx, bound);
    const EtaProduct prod = z_product(ctx);
    const QSeries rhs = expand_product(prod, bound);
    int sign = 0;
    if (qs_equal_upto(z, rhs, bound)) {
        sign = 1;
    } else if (qs_equal_upto(z, -rhs, bound)) {
        sign = -1;
    }
    json witness = {{"sign", sign},
                    {"k", ctx.k()},
                    {"z_exponent", z_exponent(p)},
                    {"leading_exponent", z_leading_exponent(p).str()},
                    {"bound", bound.str()}};
    return passed_if("z_relation", sign != 0, std::move(witness), "z matches neither sign of the F product");
}

CheckResult check_quotient(const PrimeContext& ctx)
{
    const QuotientReport q = quotient_structure(ctx);
    json witness = {{"index_gamma0_gamma2", q.index_gamma0_gamma2},
                    {"index_gamma2_gamma1", q.index_gamma2_gamma1},
                    {"image_order", q.image_order},
                    {"expected_order", q.expected_order},
                    {"cyclic", q.image_cyclic},
                    {"kernel_is_gamma2_prime", q.kernel_matches},
                    {"restricts_to_gamma2_character", q.restriction_matches},
                    {"cosets_checked", q.cosets_checked}};
    return passed_if("quotient_structure", q.ok(ctx), std::move(witness),
                     "Gamma_0(p)/Gamma_2'(p) is not cyclic of order 2k");
}

CheckResult check_multipliers(const PrimeContext& ctx, const CertConfig& config)
{
    const long long p = ctx.p();
    auto rng = rng_for(config, p, 3);
    const SubgroupTag tag{Subgroup::gamma0, ctx};
    double worst = 0.0;
    bool eps6 = true;
    for (int i = 0; i < config.gammas_per_group; ++i) {
        const SL2Matrix gamma = random_element(tag, rng, config.max_c_multiple);
        if (gamma.c() != 0) {
            const RootOfUnity e = epsilon(gamma.a(), gamma.b() * p, gamma.c() / p, gamma.d());
            eps6 = eps6 && e.pow(6) == RootOfUnity::from_sign(psi(gamma));
        }
        for (long long g = 1; g < p; ++g) {
            worst = std::max(worst, check_multiplier(g, p, gamma, config.samples));
        }
    }
    json witness = {{"matrices", config.gammas_per_group},
                    {"max_residual", worst},
                    {"epsilon6_is_psi", eps6}};
    return passed_if("multiplier_E", worst < config.tol && eps6, std::move(witness),
                     "E_g transformation law residual above tolerance");
}

CheckResult check_transform(const PrimeContext& ctx, const CertConfig& config)
{
    const long long p = ctx.p();
    auto rng = rng_for(config, p, 4);
    if (ctx.g_branch()) {
        const Triplet t = find_triplet(p);
        double worst = 0.0;
        for (int i = 0; i < config.gammas_per_group; ++i) {
            const SL2Matrix gamma = random_element({Subgroup::gamma1, ctx}, rng, config.max_c_multiple);
            worst = std::max(worst, check_G_transform(p, t, gamma, config.samples, config.tol).max_residual);
        }
        json witness = {{"triplet", {t[0], t[1], t[2]}}, {"group", "Gamma1"}, {"max_residual", worst}};
        return passed_if("transform_G", worst < config.tol, std::move(witness),
                         "G_h(gamma tau) != psi(gamma) G_h(tau)");
    }
    double worst0 = 0.0;
    double worst2 = 0.0;
    for (const Subgroup kind : {Subgroup::gamma0, Subgroup::gamma2}) {
        for (int i = 0; i < config.gammas_per_group; ++i) {
            const SL2Matrix gamma = random_element({kind, ctx}, rng, config.max_c_multiple);
            const TransformCheck r = check_F_transform(ctx, config.h, gamma, config.samples, config.tol);
            worst0 = std::max(worst0, r.max_residual);
            worst2 = std::max(worst2, r.max_residual_gamma2);
        }
    }
    json witness = {{"h", config.h},
                    {"max_residual_gamma0", worst0},
                    {"max_residual_gamma2", worst2},
                    {"character", ctx.p_is_1_mod_4() ? "psi*chi" : "psi"}};
    return passed_if("transform_F", worst0 < config.tol && worst2 < config.tol, std::move(witness),
                     "F_h transformation law residual above tolerance");
}

namespace {

CertReport small_prime_report(long long p)
{
    CertReport r;
    r.p = p;
    r.g = (p == 2) ? 1 : 5;
    r.k = 1;
    r.ell = 0;
    r.Np = 1;
    r.degree = 2;
    r.branch = "small-p";
    r.checks.push_back(passed_if("kummer_cover", true,
                                 {{"map", "x -> x^2"}, {"curve", "Y_0(p) = P^1 - {0, oo}"}, {"degree", 2}}));
    r.overall = true;
    return r;
}

} // namespace

CertReport certify(long long p, const CertConfig& config)
{
    if (!is_prime(p)) {
        throw invalid_input(std::to_string(p) + " is not prime");
    }
    if (p < 5) return small_prime_report(p);

    const PrimeContext ctx = make_context(p);
    CertReport r;
    r.p = p;
    r.g = ctx.g();
    r.k = ctx.k();
    r.ell = ctx.ell();
    r.Np = ctx.Np();
    r.degree = 2 * ctx.Np();
    r.branch = branch_name(ctx);

    r.checks.push_back(guarded("quotient_structure", [&] { return check_quotient(ctx); }));
    r.checks.push_back(guarded("shifting", [&] { return verify_shifting(ctx, config.steps); }));
    r.checks.push_back(guarded("invariance", [&] { return verify_invariance(ctx, config); }));
    r.checks.push_back(guarded("cusp_orders", [&] {
        r.cusps = cusp_orders(ctx, config.h);
        return check_cusp_orders(ctx, r.cusps);
    }));
    r.checks.push_back(guarded("z_relation", [&] { return verify_z_relation(ctx, config.steps); }));
    r.checks.push_back(guarded("multiplier_E", [&] { return check_multipliers(ctx, config); }));
    r.checks.push_back(guarded(ctx.g_branch() ? "transform_G" : "transform_F",
                               [&] { return check_transform(ctx, config); }));

    r.overall = std::none_of(r.checks.begin(), r.checks.end(),
                             [](const CheckResult& c) { return c.status == CheckStatus::fail; });
    return r;
}

std::filesystem::path write_report(const CertReport& r, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    const auto path = dir / ("report_p" + std::to_string(r.p) + ".json");
    std::ofstream out(path);
    if (!out) {
        throw computation_error("cannot write " + path.string());
    }
    out << to_json(r).dump(2) << "\n";
    return path;
}

} // namespace etacert
