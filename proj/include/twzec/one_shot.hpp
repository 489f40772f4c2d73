#pragma once

#include "twzec/channel.hpp"
#include "twzec/numerics.hpp"

#include <string>

namespace twzec {

inline constexpr int kOneShotAlphabetLimit = 16;

enum class PairKind { clique, independent };

struct DualPair {
    std::vector<int> s;  // subset of X1, sorted
    std::vector<int> t;  // subset of X2, sorted
    PairKind kind = PairKind::clique;
    bool operator==(const DualPair&) const = default;
};

/// S is a clique in every H_t (t in T) and T is a clique in every G_s (s in S).
bool is_dual_clique_pair(const ConfusionFamily& fam, const std::vector<int>& s, const std::vector<int>& t);
/// Same with independent sets.
bool is_dual_independent_pair(const ConfusionFamily& fam, const std::vector<int>& s, const std::vector<int>& t);

/// All dual clique pairs with nonempty sides that cannot be extended on either side.
std::vector<DualPair> enumerate_dual_clique_pairs(const ConfusionFamily& fam);

struct IndependenceProduct {
    long long pi = 0;
    DualPair witness;  // lexicographically least maximizer
};

IndependenceProduct independence_product(const ConfusionFamily& fam);

struct RhoCertificate {
    Eigen::MatrixXd gamma;
    double value = 0.0;
    double min_eig = 0.0;
};

RhoCertificate rho_lower_certificate(const ConfusionFamily& fam, const DualPair& pair);

/// Re-checks trace constraints (1e-9), complementarity products (exact zero),
/// PSD (min eigenvalue >= -1e-9) and the objective. Empty string when valid.
std::string check_rho_certificate(const ConfusionFamily& fam, const RhoCertificate& cert);

struct RhoEstimate {
    double value = 0.0;   // best branch value found
    double bound = 0.0;   // valid upper estimate over unexplored branches too
    bool complete = false;
    int sdp_solves = 0;
    Eigen::MatrixXd gamma;
};

/// Branch on the disjunctive constraints, bounding each node by its SDP
/// relaxation. Incomplete when more than branch_limit SDPs would be needed.
RhoEstimate rho_upper_estimate(const ConfusionFamily& fam, int branch_limit = 2000);

}  // namespace twzec
