#include "twzec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace twzec {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) h -= xlog2x(v);
    return h;
}

double binary_entropy(double x) { return -xlog2x(x) - xlog2x(1.0 - x); }

double log2_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

double min_of(const Vec& v) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : v) m = std::min(m, x);
    return m;
}

Vec project_simplex(std::span<const double> v) {
    const std::size_t d = v.size();
    if (d == 0) return {};
    Vec u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        cum += u[i];
        double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (i + 1 == d || u[i + 1] <= t) {
            theta = t;
            break;
        }
    }
    Vec out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = std::max(v[i] - theta, 0.0);
    return out;
}

namespace {

Vec project_blocks(const Vec& x, const std::vector<int>& blocks) {
    Vec out(x.size());
    std::size_t off = 0;
    for (int b : blocks) {
        Vec p = project_simplex(std::span<const double>(x.data() + off, b));
        std::copy(p.begin(), p.end(), out.begin() + static_cast<long>(off));
        off += b;
    }
    return out;
}

// projection ignores per-block shifts; removing them keeps g.(y-x) accurate
void center_blocks(Vec& g, const std::vector<int>& blocks) {
    std::size_t off = 0;
    for (int b : blocks) {
        double mean = 0.0;
        for (int i = 0; i < b; ++i) mean += g[off + i];
        mean /= b;
        for (int i = 0; i < b; ++i) g[off + i] -= mean;
        off += b;
    }
}

double fw_gap(const Vec& x, const Vec& g, const std::vector<int>& blocks) {
    double gap = 0.0;
    std::size_t off = 0;
    for (int b : blocks) {
        double mx = -std::numeric_limits<double>::infinity(), dot = 0.0;
        for (int i = 0; i < b; ++i) {
            mx = std::max(mx, g[off + i]);
            dot += g[off + i] * x[off + i];
        }
        gap += mx - dot;
        off += b;
    }
    return gap;
}

// Newton step on the face spanned by the free coordinates. The reduced Hessian
// comes from forward differences along edges leaving the largest coordinate of
// each block, so every probe stays feasible. Negative curvature is clamped.
bool newton_step(const ScalarFn& f, const GradFn& grad, const std::vector<int>& blocks, Vec& x, double& fx,
                 const Vec& g) {
    const std::size_t n = x.size();
    std::vector<Vec> dirs;
    std::size_t off = 0;
    for (int b : blocks) {
        int pivot = static_cast<int>(off);
        double top = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < b; ++i) {
            pivot = x[off + i] > x[pivot] ? static_cast<int>(off + i) : pivot;
            top = std::max(top, g[off + i]);
        }
        for (int i = 0; i < b; ++i) {
            const std::size_t j = off + i;
            if (static_cast<int>(j) == pivot) continue;
            if (x[j] <= 1e-12 && g[j] < top) continue;  // stuck at zero
            Vec d(n, 0.0);
            d[j] = 1.0;
            d[pivot] = -1.0;
            dirs.push_back(std::move(d));
        }
        off += b;
    }
    const int r = static_cast<int>(dirs.size());
    if (r == 0) return false;
    std::vector<Vec> hd(r);
    Eigen::VectorXd rg(r);
    for (int a = 0; a < r; ++a) {
        rg[a] = std::inner_product(g.begin(), g.end(), dirs[a].begin(), 0.0);
        double h = 1e-7;
        for (std::size_t i = 0; i < n; ++i)
            if (dirs[a][i] < 0.0) h = std::min(h, 0.5 * x[i]);
        if (h <= 0.0) return false;
        Vec probe(x);
        for (std::size_t i = 0; i < n; ++i) probe[i] += h * dirs[a][i];
        Vec gp = grad(probe);
        hd[a].resize(n);
        for (std::size_t i = 0; i < n; ++i) hd[a][i] = (gp[i] - g[i]) / h;
    }
    Eigen::MatrixXd neg(r, r);
    for (int a = 0; a < r; ++a)
        for (int c = 0; c < r; ++c)
            neg(a, c) = -std::inner_product(hd[a].begin(), hd[a].end(), dirs[c].begin(), 0.0);
    neg = 0.5 * (neg + neg.transpose());
    if (!neg.allFinite() || !rg.allFinite()) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(neg);
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor = std::max(1e-12, 1e-10 * ev.cwiseAbs().maxCoeff());
    for (int a = 0; a < r; ++a) ev[a] = std::max(ev[a], floor);
    Eigen::VectorXd step = es.eigenvectors() * (es.eigenvectors().transpose() * rg).cwiseQuotient(ev);
    Vec d(n, 0.0);
    for (int a = 0; a < r; ++a)
        for (std::size_t i = 0; i < n; ++i) d[i] += step[a] * dirs[a][i];
    double big = 0.0;
    for (double v : d) big = std::max(big, std::abs(v));
    if (!(big > 0.0)) return false;
    // flat directions give huge steps, and projecting those loses the unit sum
    double s = std::min(1.0, 1.0 / big);
    for (int halvings = 0; halvings < 30; ++halvings, s *= 0.5) {
        Vec trial(n);
        for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + s * d[i];
        Vec y = project_blocks(trial, blocks);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += g[i] * (y[i] - x[i]);
        if (!(dot > 0.0)) return false;
        double fy = f(y);
        bool ok = fy >= fx + 1e-4 * dot;
        if (!ok && dot < 1e-10) {
            Vec gy = grad(y);
            double slope = 0.0;
            for (std::size_t i = 0; i < n; ++i) slope += gy[i] * (y[i] - x[i]);
            ok = slope >= 0.0;
        }
        if (ok) {
            x = std::move(y);
            fx = fy;
            return true;
        }
    }
    return false;
}

SimplexMax projected_ascent(const ScalarFn& f, const GradFn& grad, const std::vector<int>& blocks,
                            Vec x, double tol, int max_iter) {
    x = project_blocks(x, blocks);
    double fx = f(x);
    double t = 1.0;
    SimplexMax res;
    int it = 0;
    double gap = std::numeric_limits<double>::infinity();
    double f_ref = fx;
    for (; it < max_iter; ++it) {
        // value pinned at rounding level while the gap hovers just above tol
        if (it > 0 && it % 50 == 0) {
            if (fx - f_ref <= 1e-14 * (1.0 + std::abs(fx))) break;
            f_ref = fx;
        }
        Vec g = grad(x);
        gap = fw_gap(x, g, blocks);
        if (gap <= tol) break;
        if (newton_step(f, grad, blocks, x, fx, g)) continue;
        center_blocks(g, blocks);
        bool moved = false;
        while (t > 1e-18) {
            Vec trial(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + t * g[i];
            Vec y = project_blocks(trial, blocks);
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += g[i] * (y[i] - x[i]);
            if (dot <= 0.0) break;
            double fy = f(y);
            // Near the optimum the Armijo gain drops below rounding. There the
            // step is accepted if the slope at y still points forward, which
            // for concave f implies f(y) >= f(x).
            bool ok = fy >= fx + 1e-4 * dot;
            if (!ok && dot < 1e-10) {
                Vec gy = grad(y);
                center_blocks(gy, blocks);
                double slope = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) slope += gy[i] * (y[i] - x[i]);
                ok = slope >= 0.0;
            }
            if (ok) {
                x = std::move(y);
                fx = fy;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
        t = std::min(t * 2.0, 1e8);
    }
    res.point = std::move(x);
    res.value = fx;
    res.residual = gap;
    res.iterations = it;
    res.converged = gap <= tol;
    return res;
}

}  // namespace

SimplexMax maximize_concave_on_simplex(const ScalarFn& f, const GradFn& grad, Vec start, double tol,
                                       int max_iter) {
    std::vector<int> blocks{static_cast<int>(start.size())};
    return projected_ascent(f, grad, blocks, std::move(start), tol, max_iter);
}

SimplexMax maximize_on_simplex_product(const ScalarFn& f, const GradFn& grad, const std::vector<int>& blocks,
                                       Vec start, double tol, int max_iter) {
    return projected_ascent(f, grad, blocks, std::move(start), tol, max_iter);
}

SimplexMax maximize_min_on_simplex_product(const PieceSet& pieces, const std::vector<int>& blocks, Vec p,
                                           const MaxMinOptions& opt) {
    const int n = static_cast<int>(p.size());
    const int k = pieces.count();
    p = project_blocks(p, blocks);
    Vec vals(k);
    std::vector<Vec> grads(k);
    pieces.eval(p, vals, grads);
    double fp = min_of(vals);

    double radius = opt.initial_radius;
    double pred = std::numeric_limits<double>::infinity();
    // Gradients at zero coordinates can promise far more than the function
    // delivers. After such a rejected step the next LP keeps them at zero.
    bool freeze_zero = false;
    SimplexMax res;
    int it = 0;
    for (; it < opt.max_iter && radius >= opt.min_radius; ++it) {
        // LP in z (shifted step) and s (model gain)
        std::vector<double> lo(n), up(n);
        for (int i = 0; i < n; ++i) {
            lo[i] = std::max(-p[i], -radius);
            up[i] = freeze_zero && p[i] <= 0.0 ? 0.0 : std::min(radius, 1.0 - p[i]) - lo[i];
        }
        LpProblem lp;
        lp.num_vars = n + 1;
        lp.maximize = true;
        lp.c.assign(n + 1, 0.0);
        lp.c[n] = 1.0;
        bool any = false;
        for (int j = 0; j < k; ++j) {
            if (!std::isfinite(vals[j])) continue;
            any = true;
            std::vector<double> row(n + 1);
            double gl = 0.0;
            for (int i = 0; i < n; ++i) {
                row[i] = grads[j][i];
                gl += grads[j][i] * lo[i];
            }
            row[n] = -1.0;
            lp.a.push_back(std::move(row));
            lp.b.push_back(fp - vals[j] - gl);
            lp.sense.push_back(RowSense::ge);
        }
        if (!any) break;
        int off = 0;
        for (int b : blocks) {
            std::vector<double> row(n + 1, 0.0);
            double sl = 0.0;
            for (int i = off; i < off + b; ++i) {
                row[i] = 1.0;
                sl += lo[i];
            }
            lp.a.push_back(std::move(row));
            lp.b.push_back(-sl);
            lp.sense.push_back(RowSense::eq);
            off += b;
        }
        for (int i = 0; i < n; ++i) {
            std::vector<double> row(n + 1, 0.0);
            row[i] = 1.0;
            lp.a.push_back(std::move(row));
            lp.b.push_back(up[i]);
            lp.sense.push_back(RowSense::le);
        }
        LpSolution sol;
        try {
            sol = solve_lp(lp);
        } catch (const LpError&) {
            radius *= 0.5;
            continue;
        }
        pred = sol.primal[n];
        if (pred <= opt.tol) {
            if (!freeze_zero) break;
            freeze_zero = false;
            radius *= 0.3;
            continue;
        }

        Vec q(n);
        double step = 0.0;
        bool lifts_zero = false;
        for (int i = 0; i < n; ++i) {
            double d = lo[i] + sol.primal[i];
            step = std::max(step, std::abs(d));
            q[i] = std::max(p[i] + d, 0.0);
            lifts_zero |= p[i] <= 0.0 && q[i] > 0.0;
        }
        off = 0;
        for (int b : blocks) {
            double s = 0.0;
            for (int i = off; i < off + b; ++i) s += q[i];
            for (int i = off; i < off + b; ++i) q[i] /= s;
            off += b;
        }
        Vec qvals(k);
        std::vector<Vec> qgrads(k);
        pieces.eval(q, qvals, qgrads);
        double fq = min_of(qvals);
        double ratio = (fq - fp) / pred;
        if (ratio >= 0.1) {
            p = std::move(q);
            vals = std::move(qvals);
            grads = std::move(qgrads);
            fp = fq;
            if (ratio >= 0.75 && step >= 0.9 * radius) radius = std::min(2.0 * radius, 1.0);
            else if (ratio < 0.25) radius *= 0.5;
            freeze_zero = false;
        } else if (lifts_zero && !freeze_zero) {
            freeze_zero = true;
        } else {
            freeze_zero = false;
            radius *= 0.3;
        }
    }
    res.point = std::move(p);
    res.value = fp;
    res.residual = std::isfinite(pred) ? std::max(pred, 0.0) : 0.0;
    res.iterations = it;
    res.converged = res.residual <= 1e-8 || radius < opt.min_radius;
    return res;
}

std::vector<Vec> simplex_starts(const std::vector<int>& blocks, int count) {
    static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
    int dim = std::accumulate(blocks.begin(), blocks.end(), 0);
    std::vector<Vec> out;
    Vec uni;
    for (int b : blocks)
        for (int i = 0; i < b; ++i) uni.push_back(1.0 / b);
    out.push_back(uni);
    for (int idx = 1; static_cast<int>(out.size()) < count + 1; ++idx) {
        Vec pt(dim);
        for (int d = 0; d < dim; ++d) {
            int base = primes[d % 32] + (d / 32) * 137;
            double f = 1.0, r = 0.0;
            for (int i = idx; i > 0; i /= base) {
                f /= base;
                r += f * (i % base);
            }
            r = std::clamp(r, 1e-12, 1.0 - 1e-12);
            pt[d] = -std::log(r);
        }
        int off = 0;
        for (int b : blocks) {
            double s = 0.0;
            for (int i = off; i < off + b; ++i) s += pt[i];
            for (int i = off; i < off + b; ++i) pt[i] /= s;
            off += b;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace twzec
