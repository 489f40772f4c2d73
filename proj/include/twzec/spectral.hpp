#pragma once

#include "twzec/channel.hpp"
#include "twzec/numerics.hpp"

namespace twzec {

inline constexpr int kThetaVertexLimit = 64;
inline constexpr int kCliqueCoverVertexLimit = 36;  // strong products of 6-vertex graphs
inline constexpr std::size_t kCliqueCoverCliqueLimit = 4096;
inline constexpr int kExactCliqueCoverLimit = 12;

struct ThetaResult {
    double value = 0.0;
    double gap = 0.0;
    double primal_infeas = 0.0;
    double dual_infeas = 0.0;
    int iterations = 0;
    bool converged = false;
    bool edge_form = true;  // which of the two equivalent programs was solved
};

/// Solves whichever theta program has fewer constraints.
ThetaResult lovasz_theta_detailed(const Graph& g);
/// Throws SolverError (with residuals) when the solver did not converge.
double lovasz_theta(const Graph& g);

/// Covering LP over maximal cliques; exact rational arithmetic up to 12 vertices.
double fractional_clique_cover(const Graph& g);
Rational fractional_clique_cover_exact(const Graph& g);

enum class SpectralPoint { lovasz_theta, fractional_clique_cover };
const char* spectral_point_name(SpectralPoint p);
double evaluate_spectral_point(SpectralPoint p, const Graph& g);
/// Points that can be evaluated on g (fcc needs at most 36 vertices).
std::vector<SpectralPoint> available_spectral_points(const Graph& g);

struct CapacitySandwich {
    double lower = 0.0;  // bits
    double upper = 0.0;  // bits
    int witness_power = 1;
};

CapacitySandwich capacity_sandwich(const Graph& g, int max_power);

/// Sum-rate bound log sum_x1 eta(G_x1) for families with all H_j edgeless.
double noiseless_direction_bound(const ConfusionFamily& fam);

/// log(x2_size + min eta(g)).
double kg_kk_bound(int x2_size, const Graph& g);

}  // namespace twzec
