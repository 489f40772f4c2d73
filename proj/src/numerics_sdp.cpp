#include "twzec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twzec {

namespace {

using Mat = Eigen::MatrixXd;

struct FullEntry {
    int r, c;
    double v;
};

std::vector<FullEntry> expand(const SymSparse& a) {
    std::vector<FullEntry> out;
    for (const auto& e : a.entries) {
        out.push_back({e.i, e.j, e.v});
        if (e.i != e.j) out.push_back({e.j, e.i, e.v});
    }
    return out;
}

// tr(A N) for the full entry list of a symmetric A
double trace_with(const std::vector<FullEntry>& a, const Mat& nmat) {
    double s = 0.0;
    for (const auto& e : a) s += e.v * nmat(e.c, e.r);
    return s;
}

// largest step alpha with x + alpha*dx still psd (infinity if unbounded)
double max_step(const Mat& x, const Mat& dx) {
    Eigen::LLT<Mat> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    Mat l = llt.matrixL();
    Mat tmp = l.triangularView<Eigen::Lower>().solve(dx);
    Mat s = l.triangularView<Eigen::Lower>().solve(tmp.transpose()).transpose();
    s = (0.5 * (s + s.transpose())).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues()(0);
    if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

}  // namespace

double sym_inner(const SymSparse& a, const Eigen::MatrixXd& x) {
    double s = 0.0;
    for (const auto& e : a.entries) s += (e.i == e.j ? 1.0 : 2.0) * e.v * x(e.i, e.j);
    return s;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Infeasible primal-dual path following with the HKM direction and a
// Mehrotra predictor-corrector step.
SdpSolution solve_sdp(const SdpProblem& pr, const SdpOptions& opt) {
    const int n = pr.n;
    const int m = static_cast<int>(pr.a.size());
    if (pr.c.rows() != n || pr.c.cols() != n || static_cast<int>(pr.b.size()) != m)
        throw SolverError("sdp: inconsistent dimensions");
    std::vector<std::vector<FullEntry>> a(m);
    for (int k = 0; k < m; ++k) {
        a[k] = expand(pr.a[k]);
        for (const auto& e : a[k])
            if (e.r < 0 || e.c < 0 || e.r >= n || e.c >= n) throw SolverError("sdp: entry out of range");
    }
    const Mat c = 0.5 * (pr.c + pr.c.transpose());
    Eigen::VectorXd b(m);
    for (int k = 0; k < m; ++k) b(k) = pr.b[k];

    auto apply_a = [&](const Mat& x) {
        Eigen::VectorXd out(m);
        for (int k = 0; k < m; ++k) out(k) = trace_with(a[k], x);
        return out;
    };
    auto apply_at = [&](const Eigen::VectorXd& y) {
        Mat out = Mat::Zero(n, n);
        for (int k = 0; k < m; ++k)
            for (const auto& e : a[k]) out(e.r, e.c) += y(k) * e.v;
        return out;
    };

    double norm_a = 0.0;
    for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (const auto& e : a[k]) s += e.v * e.v;
        norm_a = std::max(norm_a, std::sqrt(s));
    }
    double xi_p = std::max({10.0, std::sqrt(double(n)), 1.0});
    for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (const auto& e : a[k]) s += e.v * e.v;
        if (s > 0) xi_p = std::max(xi_p, n * (1.0 + std::abs(b(k))) / (1.0 + std::sqrt(s)));
    }
    double xi_d = std::max({10.0, std::sqrt(double(n)), c.norm(), norm_a});
    Mat x = xi_p * Mat::Identity(n, n);
    Mat z = xi_d * Mat::Identity(n, n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    const double bnorm = b.norm(), cnorm = c.norm();
    SdpSolution sol;
    int it = 0;
    double best_merit = std::numeric_limits<double>::infinity();
    int best_it = 0;
    for (; it < opt.max_iter; ++it) {
        Eigen::VectorXd rp = b - apply_a(x);
        Mat rd = c - apply_at(y) + z;
        double pobj = (c.cwiseProduct(x)).sum();
        double dobj = b.dot(y);
        double mu = (x.cwiseProduct(z)).sum() / n;
        double pinf = rp.norm() / (1.0 + bnorm);
        double dinf = rd.norm() / (1.0 + cnorm);
        double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        sol.primal_value = pobj;
        sol.dual_value = dobj;
        sol.gap = gap;
        sol.primal_infeas = pinf;
        sol.dual_infeas = dinf;
        if (gap <= opt.gap_tol && pinf <= opt.feas_tol && dinf <= opt.feas_tol) {
            sol.converged = true;
            break;
        }
        if (!std::isfinite(mu) || mu < 1e-30) break;
        // give up once the merit has not improved for a while
        double merit = std::max({gap, pinf, dinf});
        if (merit < 0.99 * best_merit) {
            best_merit = merit;
            best_it = it;
        } else if (it - best_it > 50) {
            break;
        }

        Eigen::LLT<Mat> zllt(z);
        if (zllt.info() != Eigen::Success) break;
        Mat w = zllt.solve(Mat::Identity(n, n));
        w = (0.5 * (w + w.transpose())).eval();

        // Schur complement M_kl = tr(A_k X A_l W)
        Mat schur(m, m);
        for (int k = 0; k < m; ++k) {
            for (int l = k; l < m; ++l) {
                double s = 0.0;
                for (const auto& ek : a[k])
                    for (const auto& el : a[l]) s += ek.v * el.v * x(ek.c, el.r) * w(el.c, ek.r);
                schur(k, l) = schur(l, k) = s;
            }
        }
        Eigen::LDLT<Mat> mfac(schur);
        if (mfac.info() != Eigen::Success) break;

        const Mat xrdw = x * rd * w;
        // rc is the complementarity target: (X+dX)(Z+dZ) ~ rc
        auto direction = [&](const Mat& rc, Mat& dx, Eigen::VectorXd& dy, Mat& dz) {
            Mat rcw = rc * w;
            Eigen::VectorXd rhs = apply_a(rcw) - b + apply_a(xrdw);
            dy = mfac.solve(rhs);
            dz = apply_at(dy) - rd;
            dz = (0.5 * (dz + dz.transpose())).eval();
            dx = rcw - x - x * dz * w;
            dx = (0.5 * (dx + dx.transpose())).eval();
        };

        Mat dx, dz;
        Eigen::VectorXd dy;
        direction(Mat::Zero(n, n), dx, dy, dz);
        double ap = std::min(1.0, max_step(x, dx));
        double ad = std::min(1.0, max_step(z, dz));
        double mu_aff = ((x + ap * dx).cwiseProduct(z + ad * dz)).sum() / n;
        double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
        Mat rc = sigma * mu * Mat::Identity(n, n) - dx * dz;
        direction(rc, dx, dy, dz);

        double gamma = 0.95;
        ap = std::min(1.0, gamma * max_step(x, dx));
        ad = std::min(1.0, gamma * max_step(z, dz));
        if (ap < 1e-14 && ad < 1e-14) break;
        x += ap * dx;
        y += ad * dy;
        z += ad * dz;
        x = (0.5 * (x + x.transpose())).eval();
        z = (0.5 * (z + z.transpose())).eval();
    }
    sol.iterations = it;
    sol.x = x;
    sol.z = z;
    sol.y.assign(y.data(), y.data() + m);
    sol.complementarity = (x.cwiseProduct(z)).sum();
    sol.min_eig_x = min_eigenvalue(x);
    return sol;
}

}  // namespace twzec
