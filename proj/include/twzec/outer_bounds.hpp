#pragma once

#include "twzec/channel.hpp"
#include "twzec/numerics.hpp"
#include "twzec/one_shot.hpp"

#include <functional>
#include <optional>
#include <string>

namespace twzec {

struct ProductDistribution {
    Vec p1;
    Vec p2;
};

void validate_distribution(const ProductDistribution& d, int x1_size, int x2_size);

enum class OuterMethod { shannon_eps, lp_l, minmax_t, maxmin_theta };
const char* outer_method_name(OuterMethod m);
std::optional<OuterMethod> parse_outer_method(const std::string& name);

struct LambdaBound {
    double lambda = 0.0;
    double value = 0.0;
    OuterMethod method = OuterMethod::shannon_eps;
    ProductDistribution argmax;
    Channel q_used;
    double residual = 0.0;  // first-order optimality residual of the maximization
    bool converged = false;
};

// ---------------------------------------------------------------------------
// objective functions

/// lambda I(X1;Y2|X2) + (1-lambda) I(X2;Y1|X1) in bits. Evaluated from the
/// formula H(q) - sum p H(W), so it is also meaningful off the simplex.
double epsilon_lambda(const Channel& q, const ProductDistribution& d, double lambda);
/// Same quantity through H(Y2|X2) - H(Y2|X1,X2) on the joint table.
double epsilon_lambda_joint(const Channel& q, const ProductDistribution& d, double lambda);
/// Analytic gradient of epsilon_lambda; infinite partials are clamped.
void epsilon_gradient(const Channel& q, const ProductDistribution& d, double lambda, Vec& g1, Vec& g2);

/// max over maximal dual clique pairs of (sum_S p1)^lambda (sum_T p2)^(1-lambda).
double l_lambda(const ConfusionFamily& fam, const ProductDistribution& d, double lambda);
double l_lambda(const std::vector<DualPair>& pairs, const ProductDistribution& d, double lambda);

// ---------------------------------------------------------------------------
// maximization over product distributions

struct OuterOptions {
    int starts = 64;  // low-discrepancy starts in addition to the uniform point
    double tol = 1e-9;
    bool minimize_q = false;
    int q_search_starts = 8;  // cheaper evaluations inside the Q search
    int q_sweeps = 3;
};

struct Maximum {
    double value = 0.0;
    ProductDistribution argmax;
    double residual = 0.0;
    bool converged = false;
};

Maximum max_epsilon(const Channel& q, double lambda, const OuterOptions& opt = {},
                    const std::vector<ProductDistribution>& extra_starts = {});
Maximum max_neglog_l(const ConfusionFamily& fam, double lambda, const OuterOptions& opt = {},
                     const std::vector<ProductDistribution>& extra_starts = {});
/// max over d of min{eps, -log l} for a fixed channel.
Maximum max_min_value(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt = {},
                      const std::vector<ProductDistribution>& extra_starts = {});

/// All four lambda bounds at one lambda; cross-seeded so that maxmin <= minmax.
struct OuterEvaluation {
    LambdaBound eps;
    LambdaBound l;
    LambdaBound minmax;
    LambdaBound maxmin;
};

OuterEvaluation evaluate_outer(const Channel& q, const ConfusionFamily& fam, double lambda,
                               const OuterOptions& opt = {});

LambdaBound minmax_bound(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt = {});
LambdaBound maxmin_bound(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt = {});

// ---------------------------------------------------------------------------
// search over channels with the reference support

struct QSearchResult {
    Channel q;
    double value = 0.0;
    int evaluations = 0;
};

/// Number of free masses: sum over rows of (support size - 1).
int free_mass_count(const Channel& ref);

/// Coordinate descent over mass splits between support entries of a row,
/// each split kept in [1e-6, 1-1e-6]. bound(q) is minimized.
QSearchResult minimize_over_q(const Channel& ref, const std::function<double(const Channel&)>& bound,
                              int sweeps = 3);

// ---------------------------------------------------------------------------
// one-way channels

/// Rows P(y|x) as a two-way channel with |X2| = |Y1| = 1.
Channel wrap_one_way(const std::vector<Vec>& rows);

/// max_P min{I(X;Y), -log max_C P(C)}, minimized over Q with the support of q.
double oneway_lp_bound(const Graph& g, const Channel& q, const OuterOptions& opt = {});

// ---------------------------------------------------------------------------
// regions

struct HalfPlane {
    double lambda = 0.0;
    double value = 0.0;
    OuterMethod method = OuterMethod::shannon_eps;
};

using Point2 = std::pair<double, double>;

/// Intersection of the half-planes with [0, log|X1|] x [0, log|X2|], counter-clockwise.
std::vector<Point2> clip_region(const std::vector<HalfPlane>& planes, double r1_max, double r2_max);

struct OuterRegion {
    std::vector<LambdaBound> bounds;  // one per lambda per method
    std::vector<HalfPlane> planes;
    std::vector<Point2> vertices;
};

std::vector<double> lambda_grid(int points);

OuterRegion assemble_outer_region(const Channel& q, const ConfusionFamily& fam, const std::vector<double>& grid,
                                  const std::vector<OuterMethod>& methods, const OuterOptions& opt = {});

}  // namespace twzec
