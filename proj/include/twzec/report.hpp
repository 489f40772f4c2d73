#pragma once

#include "twzec/code_lab.hpp"
#include "twzec/inner_bounds.hpp"
#include "twzec/one_shot.hpp"
#include "twzec/outer_bounds.hpp"

#include <cstdint>
#include "json.hpp"
#include <optional>
#include <ostream>
#include <string>

namespace twzec {

inline constexpr const char* kSchema = "twzec/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64 of the compact JSON dump (keys sorted), as "fnv1a64:<hex>".
std::string document_digest(const nlohmann::json& doc);

struct OneShotBlock {
    IndependenceProduct pi;
    double log_pi = 0.0;
    double rho_lower = 0.0;  // 2 sqrt(pi) from the block certificate
    std::optional<RhoEstimate> rho;
};

OneShotBlock one_shot_block(const ConfusionFamily& fam, bool with_rho, int branch_limit = 2000);
nlohmann::json one_shot_to_json(const OneShotBlock& block);

struct ReportOptions {
    std::vector<double> grid{0.5};
    bool outer = true;
    std::vector<OuterMethod> methods{OuterMethod::shannon_eps, OuterMethod::lp_l, OuterMethod::minmax_t,
                                     OuterMethod::maxmin_theta};
    OuterOptions outer_opt;
    bool inner = true;
    bool one_shot = true;
    bool rho = false;
    int exhaustive_n = 0;  // exhaustive codebook pairs up to this blocklength
    std::uint64_t seed = 0;
};

struct BoundReport {
    std::string digest;
    std::uint64_t seed = 0;
    std::vector<double> grid;
    bool minimize_q = false;
    std::vector<OuterMethod> methods;
    std::vector<LambdaBound> outer;
    std::vector<InnerPoint> inner;
    std::optional<OneShotBlock> one_shot;
    std::vector<Point2> outer_region, inner_region;
    std::vector<std::string> notes;
    std::vector<std::string> flags;  // CONSISTENCY-FAIL when a dominance check fails
};

BoundReport build_report(const ChannelInput& input, const std::string& digest, const ReportOptions& opt);

struct Violation {
    double lambda = 0.0;
    std::string kind;
    std::string detail;
};

/// Every outer value dominates every inner point at the same lambda, maxmin <= minmax,
/// and no bound is negative. Tolerance in bits.
std::vector<Violation> report_consistency(const BoundReport& report, double tol = 1e-6);

/// Runs report_consistency and sets the CONSISTENCY-FAIL flag. Returns the violations.
std::vector<Violation> apply_consistency(BoundReport& report);

nlohmann::json report_to_json(const BoundReport& report);
nlohmann::json inner_point_to_json(const InnerPoint& p);
nlohmann::json lambda_bound_to_json(const LambdaBound& b, bool with_channel);
nlohmann::json codebook_to_json(const CodebookPair& pair);

/// Rows lambda,method,value,residual for every outer bound and inner point.
void write_csv(std::ostream& out, const BoundReport& report);

}  // namespace twzec
