#include "twzec/inner_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twzec {

namespace {

constexpr double kLog2e = 1.4426950408889634;

// Sum_x2 p2(x2) p1' M_x2 p1 with M the adjacency-or-equal matrix of H_x2, or
// the mirrored quantity for the second user.
double collision(const std::vector<Graph>& graphs, const Vec& inner, const Vec& outer, Vec* g_inner,
                 Vec* g_outer) {
    const int ni = static_cast<int>(inner.size());
    double total = 0.0;
    if (g_inner) g_inner->assign(ni, 0.0);
    if (g_outer) g_outer->assign(outer.size(), 0.0);
    for (std::size_t o = 0; o < outer.size(); ++o) {
        const Graph& g = graphs[o];
        double s = 0.0;
        for (int a = 0; a < ni; ++a) {
            double row = inner[a];
            for (int b = 0; b < ni; ++b)
                if (g.adjacent(a, b)) row += inner[b];
            s += inner[a] * row;
            if (g_inner) (*g_inner)[a] += 2.0 * outer[o] * row;
        }
        total += outer[o] * s;
        if (g_outer) (*g_outer)[o] = s;
    }
    return total;
}

}  // namespace

DetectingSets detecting_sets(const ConfusionFamily& fam) {
    fam.validate();
    DetectingSets d;
    for (int i = 0; i < fam.x1_size(); ++i)
        if (fam.g[i].is_edgeless()) d.d1.push_back(i);
    for (int j = 0; j < fam.x2_size(); ++j)
        if (fam.h[j].is_edgeless()) d.d2.push_back(j);
    return d;
}

bool is_prime_power(int q) {
    static const std::vector<bool> table = [] {
        std::vector<bool> t(1025, false);
        for (int p = 2; p <= 1024; ++p) {
            bool prime = true;
            for (int d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (!prime) continue;
            for (long long v = p; v <= 1024; v *= p) t[v] = true;
        }
        return t;
    }();
    return q >= 2 && q <= 1024 && table[q];
}

const char* inner_method_name(InnerMethod m) {
    switch (m) {
        case InnerMethod::random_coding: return "random-coding";
        case InnerMethod::linear_codes: return "linear-codes";
        case InnerMethod::exhaustive: return "exhaustive-search";
    }
    return "?";
}

InnerPoint random_coding_point(const ConfusionFamily& fam, const ProductDistribution& d) {
    fam.validate();
    validate_distribution(d, fam.x1_size(), fam.x2_size());
    InnerPoint p;
    p.method = InnerMethod::random_coding;
    p.dist = d;
    p.r1 = -0.5 * std::log2(collision(fam.h, d.p1, d.p2, nullptr, nullptr));
    p.r2 = -0.5 * std::log2(collision(fam.g, d.p2, d.p1, nullptr, nullptr));
    return p;
}

InnerPoint max_random_coding(const ConfusionFamily& fam, double lambda, int starts) {
    fam.validate();
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in [0,1]");
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    auto f = [&](const Vec& x) {
        Vec p1(x.begin(), x.begin() + m1), p2(x.begin() + m1, x.end());
        return -0.5 * lambda * std::log2(collision(fam.h, p1, p2, nullptr, nullptr)) -
               0.5 * (1.0 - lambda) * std::log2(collision(fam.g, p2, p1, nullptr, nullptr));
    };
    auto grad = [&](const Vec& x) {
        Vec p1(x.begin(), x.begin() + m1), p2(x.begin() + m1, x.end());
        Vec a1, a2, b2, b1;
        double a = collision(fam.h, p1, p2, &a1, &a2);
        double b = collision(fam.g, p2, p1, &b2, &b1);
        Vec g(x.size());
        for (int i = 0; i < m1; ++i)
            g[i] = -0.5 * kLog2e * (lambda * a1[i] / a + (1.0 - lambda) * b1[i] / b);
        for (int j = 0; j < m2; ++j)
            g[m1 + j] = -0.5 * kLog2e * (lambda * a2[j] / a + (1.0 - lambda) * b2[j] / b);
        return g;
    };
    double best = -std::numeric_limits<double>::infinity();
    Vec best_x;
    for (const auto& s : simplex_starts({m1, m2}, starts)) {
        auto r = maximize_on_simplex_product(f, grad, {m1, m2}, s, 1e-10, 20000);
        if (r.value > best + 1e-13) {
            best = r.value;
            best_x = r.point;
        }
    }
    ProductDistribution d{Vec(best_x.begin(), best_x.begin() + m1), Vec(best_x.begin() + m1, best_x.end())};
    InnerPoint p = random_coding_point(fam, d);
    p.lambda = lambda;
    return p;
}

void linear_code_rates(int q1, int q2, int tau1, int tau2, double alpha, double beta, double& r1, double& r2) {
    // x log y with the 0 log 0 = 0 convention
    auto xlog = [](double x, int y) {
        if (x <= 0.0) return 0.0;
        if (y <= 0) return -std::numeric_limits<double>::infinity();
        return x * std::log2(static_cast<double>(y));
    };
    r1 = binary_entropy(beta) + xlog(beta, tau1) + xlog(1.0 - beta, q1 - tau1) - (1.0 - alpha) * std::log2(q1);
    r2 = binary_entropy(alpha) + xlog(alpha, tau2) + xlog(1.0 - alpha, q2 - tau2) - (1.0 - beta) * std::log2(q2);
}

namespace {

// argmax over x in [0,1] of c h(x) + x log tau + (1-x) log(q-tau) scaled by c, plus a x
double best_fraction(double c, int q, int tau, double extra) {
    if (tau <= 0) return 0.0;
    if (tau >= q) return 1.0;
    const double a = c * (std::log2(tau) - std::log2(q - tau)) + extra;
    if (c <= 0.0) return a > 0.0 ? 1.0 : 0.0;
    return 1.0 / (1.0 + std::exp2(-a / c));
}

}  // namespace

LinearCodeRates linear_code_L(double lambda, int q1, int q2, int tau1, int tau2) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in [0,1]");
    if (!is_prime_power(q1) || !is_prime_power(q2)) throw ValidationError("alphabet sizes must be prime powers");
    if (tau1 < 0 || tau1 > q1 || tau2 < 0 || tau2 > q2) throw ValidationError("tau must lie in [0, q]");
    // separable: beta enters r1 through h and the tau1 terms, and r2 through -(1-beta) log q2
    LinearCodeRates r;
    r.beta = best_fraction(lambda, q1, tau1, (1.0 - lambda) * std::log2(q2));
    r.alpha = best_fraction(1.0 - lambda, q2, tau2, lambda * std::log2(q1));
    linear_code_rates(q1, q2, tau1, tau2, r.alpha, r.beta, r.r1, r.r2);
    r.value = lambda * r.r1 + (1.0 - lambda) * r.r2;
    return r;
}

SubAlphabetResult best_sub_alphabet(const ConfusionFamily& fam, double lambda) {
    fam.validate();
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    if (m1 > kSubAlphabetLimit || m2 > kSubAlphabetLimit)
        throw ValidationError("sub-alphabet search is limited to alphabets of size 10");
    auto subsets = [](int m) {
        std::vector<std::vector<int>> out;
        for (unsigned s = 1; s < (1u << m); ++s) {
            auto v = mask_to_vector(s);
            if (is_prime_power(static_cast<int>(v.size()))) out.push_back(v);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    SubAlphabetResult res;
    res.best.method = InnerMethod::linear_codes;
    res.best.lambda = lambda;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s1 : subsets(m1))
        for (const auto& s2 : subsets(m2)) {
            DetectingSets d = detecting_sets(restrict_family(fam, s1, s2));
            const int q1 = static_cast<int>(s1.size()), q2 = static_cast<int>(s2.size());
            const int t1 = static_cast<int>(d.d1.size()), t2 = static_cast<int>(d.d2.size());
            LinearCodeRates r = linear_code_L(lambda, q1, q2, t1, t2);
            InnerPoint p;
            p.method = InnerMethod::linear_codes;
            p.lambda = lambda;
            p.r1 = std::max(0.0, r.r1);
            p.r2 = std::max(0.0, r.r2);
            p.q1 = q1;
            p.q2 = q2;
            p.tau1 = t1;
            p.tau2 = t2;
            p.alpha = r.alpha;
            p.beta = r.beta;
            p.x1_sub = s1;
            p.x2_sub = s2;
            const double v = lambda * p.r1 + (1.0 - lambda) * p.r2;
            if (v > best + 1e-12) {
                best = v;
                res.maximizers.clear();
                res.best = p;
            }
            if (std::abs(v - best) <= 1e-12) res.maximizers.push_back(p);
        }
    return res;
}

std::vector<Point2> inner_hull(const std::vector<InnerPoint>& points) {
    std::vector<Point2> pts{{0.0, 0.0}};
    for (const auto& p : points) {
        pts.push_back({p.r1, p.r2});
        pts.push_back({p.r1, 0.0});
        pts.push_back({0.0, p.r2});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    // monotone chain
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-15) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-15) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace twzec
