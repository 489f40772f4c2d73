#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twzec {

using Vec = std::vector<double>;

// ---------------------------------------------------------------------------
// information-theoretic helpers (bits)

double xlog2x(double x);
double entropy_bits(std::span<const double> p);
double binary_entropy(double x);
double log2_binomial(int n, int k);

// ---------------------------------------------------------------------------
// simplex optimization

Vec project_simplex(std::span<const double> v);

struct SimplexMax {
    Vec point;
    double value = 0.0;
    double residual = 0.0;  // Frank-Wolfe gap at the returned point
    int iterations = 0;
    bool converged = false;
};

using ScalarFn = std::function<double(const Vec&)>;
using GradFn = std::function<Vec(const Vec&)>;

/// Projected-gradient ascent with Armijo backtracking. For concave f the
/// residual (Frank-Wolfe gap) bounds the suboptimality.
SimplexMax maximize_concave_on_simplex(const ScalarFn& f, const GradFn& grad, Vec start,
                                       double tol = 1e-9, int max_iter = 100000);

/// Same ascent on a product of simplices; `blocks` lists the block sizes of
/// the concatenated variable. Only stationarity is claimed for nonconcave f.
SimplexMax maximize_on_simplex_product(const ScalarFn& f, const GradFn& grad,
                                       const std::vector<int>& blocks, Vec start,
                                       double tol = 1e-9, int max_iter = 20000);

/// Functions whose pointwise minimum is maximized by `maximize_min_on_simplex_product`.
struct PieceSet {
    std::function<int()> count;
    // fills values; gradients only for finite values
    std::function<void(const Vec&, Vec& values, std::vector<Vec>& grads)> eval;
};

struct MaxMinOptions {
    double initial_radius = 0.25;
    double min_radius = 1e-11;
    double tol = 1e-12;
    int max_iter = 4000;
};

/// Trust-region sequential linear programming for max_p min_k f_k(p) over a
/// product of simplices. Handles kinks between active pieces exactly.
SimplexMax maximize_min_on_simplex_product(const PieceSet& pieces, const std::vector<int>& blocks,
                                           Vec start, const MaxMinOptions& opt = {});

double min_of(const Vec& v);

/// Deterministic low-discrepancy start points (Halton mapped through the
/// exponential spacing trick). The uniform point comes first.
std::vector<Vec> simplex_starts(const std::vector<int>& blocks, int count);

// ---------------------------------------------------------------------------
// dense linear programming

using Rational = boost::multiprecision::cpp_rational;

enum class RowSense { le, ge, eq };

template <class T>
struct LpProblemT {
    int num_vars = 0;
    std::vector<T> c;
    std::vector<std::vector<T>> a;
    std::vector<T> b;
    std::vector<RowSense> sense;
    bool maximize = false;
};

/// Optimal value, primal x >= 0 and multipliers y with value = b.y
/// (y_i >= 0 for binding ge rows of a min problem, the usual convention).
template <class T>
struct LpSolutionT {
    T value{};
    std::vector<T> primal;
    std::vector<T> dual;
};

using LpProblem = LpProblemT<double>;
using LpSolution = LpSolutionT<double>;

class LpError : public std::runtime_error {
public:
    enum class Kind { infeasible, unbounded, malformed };
    LpError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
    Kind kind;
};

template <class T>
LpSolutionT<T> solve_lp(const LpProblemT<T>& problem);

extern template LpSolutionT<double> solve_lp(const LpProblemT<double>&);
extern template LpSolutionT<Rational> solve_lp(const LpProblemT<Rational>&);

// ---------------------------------------------------------------------------
// dense semidefinite programming:  max <C,X>  s.t.  <A_k,X> = b_k,  X psd

struct SymEntry {
    int i = 0;
    int j = 0;
    double v = 0.0;  // placed at (i,j) and (j,i)
};

struct SymSparse {
    std::vector<SymEntry> entries;
};

struct SdpProblem {
    int n = 0;
    Eigen::MatrixXd c;
    std::vector<SymSparse> a;
    std::vector<double> b;
};

struct SdpOptions {
    double gap_tol = 1e-9;
    double feas_tol = 1e-9;
    int max_iter = 100000;
};

struct SdpSolution {
    double primal_value = 0.0;
    double dual_value = 0.0;
    Eigen::MatrixXd x;
    Eigen::MatrixXd z;
    std::vector<double> y;
    double gap = 0.0;
    double primal_infeas = 0.0;
    double dual_infeas = 0.0;
    double complementarity = 0.0;  // <X,Z>
    double min_eig_x = 0.0;
    int iterations = 0;
    bool converged = false;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& opt = {});

double sym_inner(const SymSparse& a, const Eigen::MatrixXd& x);

double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace twzec
