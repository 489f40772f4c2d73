#pragma once

#include "twzec/outer_bounds.hpp"

namespace twzec {

struct DetectingSets {
    std::vector<int> d1;  // x1 with G_x1 edgeless
    std::vector<int> d2;  // x2 with H_x2 edgeless
};

DetectingSets detecting_sets(const ConfusionFamily& fam);

bool is_prime_power(int q);

enum class InnerMethod { random_coding, linear_codes, exhaustive };
const char* inner_method_name(InnerMethod m);

struct InnerPoint {
    double r1 = 0.0;
    double r2 = 0.0;
    InnerMethod method = InnerMethod::random_coding;
    double lambda = 0.5;  // weight the point was optimized for
    // random coding
    ProductDistribution dist;
    // linear codes
    int q1 = 0, q2 = 0, tau1 = 0, tau2 = 0;
    double alpha = 0.0, beta = 0.0;
    std::vector<int> x1_sub, x2_sub;
    // exhaustive search
    int blocklength = 0;
};

/// r1 = -1/2 log sum_x2 p2(x2) sum_{x1 ~ x1' in H_x2 or x1 = x1'} p1(x1) p1(x1'), r2 symmetric.
InnerPoint random_coding_point(const ConfusionFamily& fam, const ProductDistribution& d);

/// Maximizes lambda r1 + (1-lambda) r2 (the sum rate at 1/2) over product distributions.
InnerPoint max_random_coding(const ConfusionFamily& fam, double lambda = 0.5, int starts = 64);

struct LinearCodeRates {
    double value = 0.0;  // lambda r1 + (1-lambda) r2 at the maximizer
    double alpha = 0.0;  // k1/n
    double beta = 0.0;   // k2/n
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Rates of the detecting-vector coset construction at (alpha, beta).
void linear_code_rates(int q1, int q2, int tau1, int tau2, double alpha, double beta, double& r1, double& r2);

/// Closed-form maximization over (alpha, beta) in [0,1]^2 of lambda r1 + (1-lambda) r2.
LinearCodeRates linear_code_L(double lambda, int q1, int q2, int tau1, int tau2);

struct SubAlphabetResult {
    InnerPoint best;  // lexicographically least maximizing (X1', X2')
    std::vector<InnerPoint> maximizers;
};

inline constexpr int kSubAlphabetLimit = 10;

/// Maximizes L over sub-alphabets of prime-power size, with restricted detecting sets.
SubAlphabetResult best_sub_alphabet(const ConfusionFamily& fam, double lambda = 0.5);

/// Convex hull of the points, the origin and their axis projections (time sharing), counter-clockwise.
std::vector<Point2> inner_hull(const std::vector<InnerPoint>& points);

}  // namespace twzec
