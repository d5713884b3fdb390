#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "etacert/arith.hpp"
#include "etacert/congruence.hpp"
#include "etacert/eta.hpp"
#include "etacert/numeric.hpp"

namespace etacert {

using json = nlohmann::ordered_json;

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string reason;  // set for skipped (and failed) checks
    json witness;        // null when there is nothing to record

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct CuspOrder {
    Cusp cusp;
    long long width = 0;
    long long order = 0;

    bool odd() const { return order % 2 != 0; }
    friend bool operator==(const CuspOrder&, const CuspOrder&) = default;
};

// Per-prime verdict. overall is true iff no check failed.
struct CertReport {
    long long p = 0;
    long long g = 0;
    long long k = 0;
    long long ell = 0;
    long long Np = 0;
    long long degree = 0;
    std::string branch;  // "F-chi" | "F-psi" | "G" | "small-p"
    std::vector<CheckResult> checks;
    std::vector<CuspOrder> cusps;
    bool overall = false;

    const CheckResult* find(const std::string& name) const;
    friend bool operator==(const CertReport&, const CertReport&) = default;
};

json to_json(const CertReport& r);
CertReport report_from_json(const json& j);

struct CertConfig {
    long long h = 1;
    long long steps = 10;  // integer q-steps past the leading exponent
    std::vector<UpperHalfPoint> samples = default_samples();
    double tol = 1e-8;
    int gammas_per_group = 20;
    long long max_c_multiple = 2;
    std::uint64_t seed = 0x5eedULL;
};

std::string branch_name(const PrimeContext& ctx);

/// Shifting identities of F_h as exact series:
/// F_h = F_{-h} = F_{p+h} and F_{g^k h} = -F_h (p = 1 mod 4) or F_h (p = 3 mod 4),
/// for h in {1, 2, g}. Skipped for p = 11 mod 12.
CheckResult verify_shifting(const PrimeContext& ctx, long long steps);

/// (a) modularity criterion for F_h^2 (G_h^2 when ell = 1), (b) numeric
/// invariance of that square under random elements of Gamma_2(p)
/// (Gamma_1(p)), (c) integer expansion coefficients and odd integer
/// leading exponent of the square at infinity.
CheckResult verify_invariance(const PrimeContext& ctx, const CertConfig& config);

/// The function whose square is certified: F_h, or G_h for the smallest
/// triplet when ell = 1.
EtaProduct certified_function(const PrimeContext& ctx, long long h);

/// Orders of the certified square at each cusp of X_2(p) (X_1(p) when
/// ell = 1): width * sum e_i delta_i. Throws computation_error if an
/// order is not an integer.
std::vector<CuspOrder> cusp_orders(const PrimeContext& ctx, long long h = 1);
CheckResult check_cusp_orders(const PrimeContext& ctx, const std::vector<CuspOrder>& table);

/// z = +-prod_{j<k} F_{g^j} as exact series; skipped when p = 1 mod 8.
CheckResult verify_z_relation(const PrimeContext& ctx, long long steps);

CheckResult check_quotient(const PrimeContext& ctx);

/// Numeric checks of the E_g multiplier system on Gamma_0(p) and of the
/// F_h (or G_h) transformation law.
CheckResult check_multipliers(const PrimeContext& ctx, const CertConfig& config);
CheckResult check_transform(const PrimeContext& ctx, const CertConfig& config);

/// Runs every per-prime check. p in {2, 3} gives the special-case report;
/// composite p is rejected with invalid_input.
CertReport certify(long long p, const CertConfig& config = {});

/// Writes <dir>/report_p<p>.json; returns the path.
std::filesystem::path write_report(const CertReport& r, const std::filesystem::path& dir);

} // namespace etacert
