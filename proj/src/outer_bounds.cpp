#include "twzec/outer_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twzec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2e = 1.4426950408889634;
// partial derivatives that would be +inf at the simplex boundary are capped here
constexpr double kGradCap = 64.0;

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in [0,1]");
}

// I(X1;Y2|X2)-type term. `w` is indexed (a, b, y); `outer` weights the
// slices and `inner` is the distribution mixed inside each slice.
// inner_is_x1 selects whether slices are indexed by x2 (mixing x1) or by x1.
double mixed_info(const Marginal& w, const Vec& inner, const Vec& outer, bool inner_is_x1, Vec* g_inner,
                  Vec* g_outer) {
    const int ni = inner_is_x1 ? w.x1 : w.x2;
    const int no = inner_is_x1 ? w.x2 : w.x1;
    auto at = [&](int i, int o, int y) { return inner_is_x1 ? w.at(i, o, y) : w.at(o, i, y); };
    if (g_inner) g_inner->assign(ni, 0.0);
    if (g_outer) g_outer->assign(no, 0.0);
    double total = 0.0;
    Vec q(w.y);
    for (int o = 0; o < no; ++o) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int i = 0; i < ni; ++i)
            for (int y = 0; y < w.y; ++y) q[y] += inner[i] * at(i, o, y);
        double hq = 0.0;
        for (double v : q) hq -= xlog2x(v);
        double cond = 0.0;
        for (int i = 0; i < ni; ++i) {
            double hw = 0.0;
            for (int y = 0; y < w.y; ++y) hw -= xlog2x(at(i, o, y));
            cond += inner[i] * hw;
        }
        const double io = hq - cond;
        total += outer[o] * io;
        if (g_outer) (*g_outer)[o] = io;
        if (g_inner) {
            for (int i = 0; i < ni; ++i) {
                double dkl = 0.0;
                bool infinite = false;
                for (int y = 0; y < w.y; ++y) {
                    double wy = at(i, o, y);
                    if (wy <= 0.0) continue;
                    if (q[y] <= 0.0) {
                        infinite = true;
                        break;
                    }
                    dkl += wy * std::log2(wy / q[y]);
                }
                double part = infinite ? kGradCap : std::min(dkl, kGradCap);
                (*g_inner)[i] += outer[o] * (part - kLog2e);
            }
        }
    }
    return total;
}

struct EpsModel {
    Marginal w1, w2;
    double lambda;

    EpsModel(const Channel& q, double lam) : w1(marginal_y1(q)), w2(marginal_y2(q)), lambda(lam) {}

    double value(const Vec& p1, const Vec& p2) const {
        double a = lambda > 0.0 ? mixed_info(w2, p1, p2, true, nullptr, nullptr) : 0.0;
        double b = lambda < 1.0 ? mixed_info(w1, p2, p1, false, nullptr, nullptr) : 0.0;
        return lambda * a + (1.0 - lambda) * b;
    }

    double value_grad(const Vec& p1, const Vec& p2, Vec& g1, Vec& g2) const {
        Vec ai, ao, bi, bo;
        double a = mixed_info(w2, p1, p2, true, &ai, &ao);   // inner x1, outer x2
        double b = mixed_info(w1, p2, p1, false, &bi, &bo);  // inner x2, outer x1
        g1.resize(p1.size());
        g2.resize(p2.size());
        for (std::size_t i = 0; i < p1.size(); ++i) g1[i] = lambda * ai[i] + (1.0 - lambda) * bo[i];
        for (std::size_t j = 0; j < p2.size(); ++j) g2[j] = lambda * ao[j] + (1.0 - lambda) * bi[j];
        return lambda * a + (1.0 - lambda) * b;
    }
};

struct PairModel {
    std::vector<DualPair> pairs;
    double lambda;

    // -lambda log S-mass - (1-lambda) log T-mass, +inf on zero mass
    double piece(std::size_t k, const Vec& p1, const Vec& p2, Vec* g1, Vec* g2) const {
        double ms = 0.0, mt = 0.0;
        for (int s : pairs[k].s) ms += p1[s];
        for (int t : pairs[k].t) mt += p2[t];
        if (ms <= 0.0 || mt <= 0.0) return kInf;
        if (g1) {
            g1->assign(p1.size(), 0.0);
            g2->assign(p2.size(), 0.0);
            for (int s : pairs[k].s) (*g1)[s] = -lambda * kLog2e / ms;
            for (int t : pairs[k].t) (*g2)[t] = -(1.0 - lambda) * kLog2e / mt;
        }
        return -lambda * std::log2(ms) - (1.0 - lambda) * std::log2(mt);
    }

    double value(const Vec& p1, const Vec& p2) const {
        double v = kInf;
        for (std::size_t k = 0; k < pairs.size(); ++k) v = std::min(v, piece(k, p1, p2, nullptr, nullptr));
        return v;
    }
};

Vec concat(const Vec& a, const Vec& b) {
    Vec out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

ProductDistribution split(const Vec& x, int m1) {
    return {Vec(x.begin(), x.begin() + m1), Vec(x.begin() + m1, x.end())};
}

double fw_gap_block(const Vec& x, const Vec& g) {
    double mx = -kInf, dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx = std::max(mx, g[i]);
        dot += g[i] * x[i];
    }
    return mx - dot;
}

std::vector<Vec> start_points(int m1, int m2, int starts, const std::vector<ProductDistribution>& extra) {
    std::vector<Vec> out = simplex_starts({m1, m2}, starts);
    for (const auto& d : extra) out.push_back(concat(d.p1, d.p2));
    return out;
}

Maximum pick_best(const std::vector<Maximum>& runs) {
    Maximum best;
    best.value = -kInf;
    for (const auto& r : runs)
        if (r.value > best.value + 1e-13) best = r;
    return best;
}

Maximum ascend_epsilon(const EpsModel& model, ProductDistribution d, double tol) {
    double prev = model.value(d.p1, d.p2);
    for (int round = 0; round < 200; ++round) {
        const Vec p2 = d.p2;
        auto r1 = maximize_concave_on_simplex([&](const Vec& x) { return model.value(x, p2); },
                                              [&](const Vec& x) {
                                                  Vec g1, g2;
                                                  model.value_grad(x, p2, g1, g2);
                                                  return g1;
                                              },
                                              d.p1, tol, 20000);
        d.p1 = r1.point;
        const Vec p1 = d.p1;
        auto r2 = maximize_concave_on_simplex([&](const Vec& x) { return model.value(p1, x); },
                                              [&](const Vec& x) {
                                                  Vec g1, g2;
                                                  model.value_grad(p1, x, g1, g2);
                                                  return g2;
                                              },
                                              d.p2, tol, 20000);
        d.p2 = r2.point;
        double cur = r2.value;
        if (cur - prev <= 1e-14) {
            prev = std::max(prev, cur);
            break;
        }
        prev = cur;
    }
    Maximum m;
    Vec g1, g2;
    m.value = model.value_grad(d.p1, d.p2, g1, g2);
    m.residual = std::max(0.0, fw_gap_block(d.p1, g1)) + std::max(0.0, fw_gap_block(d.p2, g2));
    m.converged = m.residual <= std::max(tol, 1e-7);
    m.argmax = std::move(d);
    return m;
}

PieceSet make_pieces(const EpsModel* eps, const PairModel* pairs, int m1) {
    PieceSet ps;
    const int count = (eps ? 1 : 0) + (pairs ? static_cast<int>(pairs->pairs.size()) : 0);
    ps.count = [count] { return count; };
    ps.eval = [eps, pairs, m1](const Vec& x, Vec& values, std::vector<Vec>& grads) {
        ProductDistribution d = split(x, m1);
        int k = 0;
        if (eps) {
            Vec g1, g2;
            values[k] = eps->value_grad(d.p1, d.p2, g1, g2);
            grads[k] = concat(g1, g2);
            ++k;
        }
        if (pairs) {
            for (std::size_t j = 0; j < pairs->pairs.size(); ++j, ++k) {
                Vec g1, g2;
                values[k] = pairs->piece(j, d.p1, d.p2, &g1, &g2);
                grads[k] = std::isfinite(values[k]) ? concat(g1, g2) : Vec{};
            }
        }
    };
    return ps;
}

Maximum run_maxmin(const PieceSet& ps, int m1, int m2, const std::vector<Vec>& starts, double lambda) {
    std::vector<Maximum> runs;
    for (const auto& s : starts) {
        auto r = maximize_min_on_simplex_product(ps, {m1, m2}, s);
        runs.push_back({r.value, split(r.point, m1), r.residual, r.converged});
    }
    if (lambda == 0.0 || lambda == 1.0) {
        // At an endpoint the dead block enters the pair pieces only through its
        // support and the eps piece linearly, so some vertex is optimal. Local
        // search cannot reach it since pieces vanish discontinuously there.
        const bool freeze1 = lambda == 0.0;
        const int mf = freeze1 ? m1 : m2, ml = freeze1 ? m2 : m1;
        auto embed = [&](int v, const Vec& y) {
            Vec vertex(mf, 0.0);
            vertex[v] = 1.0;
            return freeze1 ? concat(vertex, y) : concat(y, vertex);
        };
        for (int v = 0; v < mf; ++v) {
            PieceSet red;
            red.count = ps.count;
            red.eval = [&, v](const Vec& y, Vec& vals, std::vector<Vec>& grads) {
                ps.eval(embed(v, y), vals, grads);
                for (auto& g : grads)
                    if (!g.empty()) g = freeze1 ? Vec(g.begin() + m1, g.end()) : Vec(g.begin(), g.begin() + m1);
            };
            for (const auto& s : starts) {
                Vec live = freeze1 ? Vec(s.begin() + m1, s.end()) : Vec(s.begin(), s.begin() + m1);
                auto r = maximize_min_on_simplex_product(red, {ml}, live);
                runs.push_back({r.value, split(embed(v, r.point), m1), r.residual, r.converged});
            }
        }
    }
    return pick_best(runs);
}

}  // namespace

void validate_distribution(const ProductDistribution& d, int x1_size, int x2_size) {
    auto check = [](const Vec& p, int n, const char* name) {
        if (static_cast<int>(p.size()) != n) throw ValidationError(std::string(name) + " has the wrong length");
        double s = 0.0;
        for (double v : p) {
            if (!(v >= 0.0)) throw ValidationError(std::string(name) + " has a negative entry");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9) throw ValidationError(std::string(name) + " does not sum to 1");
    };
    check(d.p1, x1_size, "p1");
    check(d.p2, x2_size, "p2");
}

const char* outer_method_name(OuterMethod m) {
    switch (m) {
        case OuterMethod::shannon_eps: return "shannon-eps";
        case OuterMethod::lp_l: return "lp-l";
        case OuterMethod::minmax_t: return "minmax-t";
        case OuterMethod::maxmin_theta: return "maxmin-theta";
    }
    return "?";
}

std::optional<OuterMethod> parse_outer_method(const std::string& name) {
    for (auto m : {OuterMethod::shannon_eps, OuterMethod::lp_l, OuterMethod::minmax_t, OuterMethod::maxmin_theta})
        if (name == outer_method_name(m)) return m;
    return std::nullopt;
}

double epsilon_lambda(const Channel& q, const ProductDistribution& d, double lambda) {
    check_lambda(lambda);
    if (static_cast<int>(d.p1.size()) != q.x1_size() || static_cast<int>(d.p2.size()) != q.x2_size())
        throw ValidationError("distribution does not match the channel alphabets");
    return EpsModel(q, lambda).value(d.p1, d.p2);
}

double epsilon_lambda_joint(const Channel& q, const ProductDistribution& d, double lambda) {
    check_lambda(lambda);
    validate_distribution(d, q.x1_size(), q.x2_size());
    const int m1 = q.x1_size(), m2 = q.x2_size(), n1 = q.y1_size(), n2 = q.y2_size();
    // joint entropies from the full table
    Vec px1x2(m1 * m2), px2y2(m2 * n2, 0.0), px1x2y2(m1 * m2 * n2, 0.0), px1y1(m1 * n1, 0.0),
        px1x2y1(m1 * m2 * n1, 0.0), px1(m1), px2(m2);
    for (int a = 0; a < m1; ++a)
        for (int b = 0; b < m2; ++b) {
            double w = d.p1[a] * d.p2[b];
            px1x2[a * m2 + b] = w;
            for (int c = 0; c < n1; ++c)
                for (int e = 0; e < n2; ++e) {
                    double v = w * q.p(a, b, c, e);
                    px2y2[b * n2 + e] += v;
                    px1x2y2[(a * m2 + b) * n2 + e] += v;
                    px1y1[a * n1 + c] += v;
                    px1x2y1[(a * m2 + b) * n1 + c] += v;
                }
        }
    double h_x1x2 = entropy_bits(px1x2);
    double i12 = (entropy_bits(px2y2) - entropy_bits(d.p2)) - (entropy_bits(px1x2y2) - h_x1x2);
    double i21 = (entropy_bits(px1y1) - entropy_bits(d.p1)) - (entropy_bits(px1x2y1) - h_x1x2);
    return lambda * i12 + (1.0 - lambda) * i21;
}

void epsilon_gradient(const Channel& q, const ProductDistribution& d, double lambda, Vec& g1, Vec& g2) {
    check_lambda(lambda);
    EpsModel(q, lambda).value_grad(d.p1, d.p2, g1, g2);
}

double l_lambda(const std::vector<DualPair>& pairs, const ProductDistribution& d, double lambda) {
    check_lambda(lambda);
    double best = 0.0;
    for (const auto& p : pairs) {
        double ms = 0.0, mt = 0.0;
        for (int s : p.s) ms += d.p1.at(s);
        for (int t : p.t) mt += d.p2.at(t);
        if (ms <= 0.0 || mt <= 0.0) continue;
        best = std::max(best, std::pow(ms, lambda) * std::pow(mt, 1.0 - lambda));
    }
    return best;
}

double l_lambda(const ConfusionFamily& fam, const ProductDistribution& d, double lambda) {
    return l_lambda(enumerate_dual_clique_pairs(fam), d, lambda);
}

Maximum max_epsilon(const Channel& q, double lambda, const OuterOptions& opt,
                    const std::vector<ProductDistribution>& extra_starts) {
    check_lambda(lambda);
    EpsModel model(q, lambda);
    std::vector<Maximum> runs;
    for (const auto& s : start_points(q.x1_size(), q.x2_size(), opt.starts, extra_starts))
        runs.push_back(ascend_epsilon(model, split(s, q.x1_size()), opt.tol));
    return pick_best(runs);
}

Maximum max_neglog_l(const ConfusionFamily& fam, double lambda, const OuterOptions& opt,
                     const std::vector<ProductDistribution>& extra_starts) {
    check_lambda(lambda);
    PairModel pm{enumerate_dual_clique_pairs(fam), lambda};
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    return run_maxmin(make_pieces(nullptr, &pm, m1), m1, m2, start_points(m1, m2, opt.starts, extra_starts), lambda);
}

Maximum max_min_value(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt,
                      const std::vector<ProductDistribution>& extra_starts) {
    check_lambda(lambda);
    EpsModel em(q, lambda);
    PairModel pm{enumerate_dual_clique_pairs(fam), lambda};
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    return run_maxmin(make_pieces(&em, &pm, m1), m1, m2, start_points(m1, m2, opt.starts, extra_starts), lambda);
}

namespace {

void check_compatible(const Channel& q, const ConfusionFamily& fam) {
    fam.validate();
    if (q.x1_size() != fam.x1_size() || q.x2_size() != fam.x2_size())
        throw ValidationError("channel and family alphabets differ");
}

LambdaBound make_bound(double lambda, OuterMethod m, const Maximum& mx, const Channel& q) {
    LambdaBound b;
    b.lambda = lambda;
    b.method = m;
    b.value = std::max(0.0, mx.value);
    b.argmax = mx.argmax;
    b.q_used = q;
    b.residual = mx.residual;
    b.converged = mx.converged;
    return b;
}

// a maxmin point beating a single-piece maximum is a better start for it
void repair_eps(const Channel& q, double lambda, const OuterOptions& opt, Maximum& eps, const Maximum& mm) {
    if (mm.value <= eps.value) return;
    OuterOptions o = opt;
    o.starts = 0;
    Maximum e2 = max_epsilon(q, lambda, o, {mm.argmax});
    if (e2.value > eps.value) eps = e2;
}

void repair_l(const ConfusionFamily& fam, double lambda, const OuterOptions& opt, Maximum& l, const Maximum& mm) {
    if (mm.value <= l.value) return;
    OuterOptions o = opt;
    o.starts = 0;
    Maximum l2 = max_neglog_l(fam, lambda, o, {mm.argmax});
    if (l2.value > l.value) l = l2;
}

}  // namespace

int free_mass_count(const Channel& ref) {
    int count = 0;
    for (int a = 0; a < ref.x1_size(); ++a)
        for (int b = 0; b < ref.x2_size(); ++b) {
            int k = 0;
            for (int c = 0; c < ref.y1_size(); ++c)
                for (int d = 0; d < ref.y2_size(); ++d) k += ref.p(a, b, c, d) > kSupportThreshold;
            count += std::max(0, k - 1);
        }
    return count;
}

QSearchResult minimize_over_q(const Channel& ref, const std::function<double(const Channel&)>& bound, int sweeps) {
    struct Coord {
        std::size_t i, j;  // flat indices of two support entries in one row
    };
    std::vector<Coord> coords;
    const int rows = ref.x1_size() * ref.x2_size();
    const std::size_t row_len = static_cast<std::size_t>(ref.y1_size()) * ref.y2_size();
    for (int r = 0; r < rows; ++r) {
        std::vector<std::size_t> sup;
        for (std::size_t k = 0; k < row_len; ++k)
            if (ref.data()[r * row_len + k] > kSupportThreshold) sup.push_back(r * row_len + k);
        for (std::size_t k = 0; k + 1 < sup.size(); ++k) coords.push_back({sup[k], sup[k + 1]});
    }
    std::vector<double> cur = ref.data();
    auto make = [&](const std::vector<double>& v) {
        return Channel(ref.x1_size(), ref.x2_size(), ref.y1_size(), ref.y2_size(), v);
    };
    QSearchResult res{ref, bound(ref), 1};
    if (coords.empty()) return res;
    constexpr double lo = 1e-6, hi = 1.0 - 1e-6;
    if (coords.size() == 1) sweeps = 1;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const double start_value = res.value;
        for (const auto& c : coords) {
            const double s = cur[c.i] + cur[c.j];
            auto at = [&](double t) {
                std::vector<double> v = cur;
                v[c.i] = s * t;
                v[c.j] = s - v[c.i];
                return v;
            };
            auto eval = [&](double t) {
                ++res.evaluations;
                return bound(make(at(t)));
            };
            // coarse grid, then golden section around the best grid point
            std::vector<double> ts{lo};
            for (int k = 1; k < 10; ++k) ts.push_back(0.1 * k);
            ts.push_back(hi);
            double best_t = std::clamp(cur[c.i] / s, lo, hi), best_v = res.value;
            std::size_t best_k = ts.size();
            for (std::size_t k = 0; k < ts.size(); ++k) {
                double v = eval(ts[k]);
                if (v < best_v) {
                    best_v = v;
                    best_t = ts[k];
                    best_k = k;
                }
            }
            if (best_k < ts.size()) {
                double a = best_k == 0 ? lo : ts[best_k - 1];
                double b = best_k + 1 == ts.size() ? hi : ts[best_k + 1];
                const double gr = 0.6180339887498949;
                double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
                double f1 = eval(x1), f2 = eval(x2);
                for (int it = 0; it < 24; ++it) {
                    if (f1 < f2) {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - gr * (b - a);
                        f1 = eval(x1);
                    } else {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + gr * (b - a);
                        f2 = eval(x2);
                    }
                }
                if (f1 < best_v) {
                    best_v = f1;
                    best_t = x1;
                }
                if (f2 < best_v) {
                    best_v = f2;
                    best_t = x2;
                }
                cur = at(best_t);
                res.value = best_v;
                res.q = make(cur);
            }
        }
        if (start_value - res.value < 1e-9) break;
    }
    return res;
}

OuterEvaluation evaluate_outer(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt) {
    check_lambda(lambda);
    check_compatible(q, fam);
    Maximum l = max_neglog_l(fam, lambda, opt);

    Channel qe = q, qm = q;
    Maximum eps, mm;
    if (opt.minimize_q && free_mass_count(q) > 0) {
        OuterOptions cheap = opt;
        cheap.starts = opt.q_search_starts;
        qe = minimize_over_q(
                 q, [&](const Channel& c) { return max_epsilon(c, lambda, cheap, {l.argmax}).value; }, opt.q_sweeps)
                 .q;
        qm = minimize_over_q(
                 q, [&](const Channel& c) { return max_min_value(c, fam, lambda, cheap, {l.argmax}).value; },
                 opt.q_sweeps)
                 .q;
        eps = max_epsilon(qe, lambda, opt, {l.argmax});
        Maximum at_qe = max_min_value(qe, fam, lambda, opt, {eps.argmax, l.argmax});
        Maximum at_qm = max_min_value(qm, fam, lambda, opt, {eps.argmax, l.argmax});
        repair_eps(qe, lambda, opt, eps, at_qe);
        if (at_qm.value < at_qe.value) {
            mm = at_qm;
        } else {
            mm = at_qe;
            qm = qe;
        }
    } else {
        eps = max_epsilon(q, lambda, opt, {l.argmax});
        mm = max_min_value(q, fam, lambda, opt, {eps.argmax, l.argmax});
        repair_eps(q, lambda, opt, eps, mm);
    }
    repair_l(fam, lambda, opt, l, mm);

    OuterEvaluation out;
    out.eps = make_bound(lambda, OuterMethod::shannon_eps, eps, qe);
    out.l = make_bound(lambda, OuterMethod::lp_l, l, q);
    const bool eps_smaller = eps.value <= l.value;
    out.minmax = make_bound(lambda, OuterMethod::minmax_t, eps_smaller ? eps : l, qe);
    out.maxmin = make_bound(lambda, OuterMethod::maxmin_theta, mm, qm);
    return out;
}

LambdaBound minmax_bound(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt) {
    return evaluate_outer(q, fam, lambda, opt).minmax;
}

LambdaBound maxmin_bound(const Channel& q, const ConfusionFamily& fam, double lambda, const OuterOptions& opt) {
    return evaluate_outer(q, fam, lambda, opt).maxmin;
}

Channel wrap_one_way(const std::vector<Vec>& rows) {
    if (rows.empty() || rows[0].empty()) throw ValidationError("one-way channel needs inputs and outputs");
    const int nx = static_cast<int>(rows.size()), ny = static_cast<int>(rows[0].size());
    std::vector<double> prob;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != ny) throw ValidationError("ragged one-way channel matrix");
        prob.insert(prob.end(), r.begin(), r.end());
    }
    return Channel(nx, 1, 1, ny, std::move(prob));
}

double oneway_lp_bound(const Graph& g, const Channel& q, const OuterOptions& opt) {
    if (q.x2_size() != 1 || q.y1_size() != 1)
        throw ValidationError("one-way channel must be wrapped with |X2| = |Y1| = 1");
    ConfusionFamily fam = derive_confusion(q);
    if (!(fam.h[0] == g)) throw ValidationError("graph is not the confusion graph of the channel");
    OuterOptions o = opt;
    o.minimize_q = true;
    return evaluate_outer(q, fam, 1.0, o).maxmin.value;
}

std::vector<Point2> clip_region(const std::vector<HalfPlane>& planes, double r1_max, double r2_max) {
    std::vector<Point2> poly{{0.0, 0.0}, {r1_max, 0.0}, {r1_max, r2_max}, {0.0, r2_max}};
    for (const auto& h : planes) {
        const double a = h.lambda, b = 1.0 - h.lambda;
        auto side = [&](const Point2& p) { return a * p.first + b * p.second - h.value; };
        std::vector<Point2> next;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point2& p = poly[i];
            const Point2& r = poly[(i + 1) % poly.size()];
            double sp = side(p), sr = side(r);
            if (sp <= 1e-12) next.push_back(p);
            if ((sp < -1e-12 && sr > 1e-12) || (sp > 1e-12 && sr < -1e-12)) {
                double t = sp / (sp - sr);
                next.push_back({p.first + t * (r.first - p.first), p.second + t * (r.second - p.second)});
            }
        }
        poly.clear();
        for (const auto& p : next)
            if (poly.empty() || std::hypot(p.first - poly.back().first, p.second - poly.back().second) > 1e-12)
                poly.push_back(p);
        if (poly.size() > 1 &&
            std::hypot(poly.front().first - poly.back().first, poly.front().second - poly.back().second) <= 1e-12)
            poly.pop_back();
        if (poly.empty()) break;
    }
    return poly;
}

std::vector<double> lambda_grid(int points) {
    if (points < 1) throw ValidationError("lambda grid needs at least one point");
    if (points == 1) return {0.5};
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
    return g;
}

OuterRegion assemble_outer_region(const Channel& q, const ConfusionFamily& fam, const std::vector<double>& grid,
                                  const std::vector<OuterMethod>& methods, const OuterOptions& opt) {
    OuterRegion region;
    for (double lambda : grid) {
        OuterEvaluation ev = evaluate_outer(q, fam, lambda, opt);
        for (auto m : methods) {
            const LambdaBound& b = m == OuterMethod::shannon_eps ? ev.eps
                                   : m == OuterMethod::lp_l      ? ev.l
                                   : m == OuterMethod::minmax_t  ? ev.minmax
                                                                 : ev.maxmin;
            region.bounds.push_back(b);
            region.planes.push_back({lambda, b.value, m});
        }
    }
    region.vertices = clip_region(region.planes, std::log2(static_cast<double>(fam.x1_size())),
                                  std::log2(static_cast<double>(fam.x2_size())));
    return region;
}

}  // namespace twzec
