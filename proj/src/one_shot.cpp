#include "twzec/one_shot.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace twzec {

namespace {

void check_size(const ConfusionFamily& fam) {
    fam.validate();
    if (fam.x1_size() > kOneShotAlphabetLimit || fam.x2_size() > kOneShotAlphabetLimit)
        throw ValidationError("one-shot analysis is limited to alphabets of size 16");
}

using Mask = std::uint32_t;

bool clique_in(const Graph& g, Mask m) {
    for (Mask a = m; a; a &= a - 1) {
        int u = std::countr_zero(a);
        for (Mask b = a & (a - 1); b; b &= b - 1)
            if (!g.adjacent(u, std::countr_zero(b))) return false;
    }
    return true;
}

bool independent_in(const Graph& g, Mask m) {
    for (Mask a = m; a; a &= a - 1) {
        int u = std::countr_zero(a);
        for (Mask b = a & (a - 1); b; b &= b - 1)
            if (g.adjacent(u, std::countr_zero(b))) return false;
    }
    return true;
}

std::vector<int> bits(Mask m) { return mask_to_vector(m); }

Mask to_mask(const std::vector<int>& v, int n) {
    Mask m = 0;
    for (int x : v) {
        if (x < 0 || x >= n) throw ValidationError("subset element out of range");
        m |= Mask{1} << x;
    }
    return m;
}

// complement adjacency masks of the union of G_s over s in S
std::vector<std::uint64_t> union_complement(const ConfusionFamily& fam, Mask s) {
    const int m2 = fam.x2_size();
    std::vector<std::uint64_t> adj(m2, 0);
    for (int u = 0; u < m2; ++u)
        for (int v = 0; v < m2; ++v) {
            if (u == v) continue;
            bool edge = false;
            for (Mask a = s; a && !edge; a &= a - 1) edge = fam.g[std::countr_zero(a)].adjacent(u, v);
            if (!edge) adj[u] |= 1ULL << v;
        }
    return adj;
}

// lexicographically least independent set of the given size (as a clique of the complement)
Mask lex_least_clique(const std::vector<std::uint64_t>& cadj, std::uint64_t cand, int size) {
    Mask chosen = 0;
    int need = size;
    for (int v = 0; v < static_cast<int>(cadj.size()) && need > 0; ++v) {
        if (!(cand >> v & 1)) continue;
        std::uint64_t later = ~((2ULL << v) - 1);
        std::uint64_t rest = cand & cadj[v] & later;
        if (1 + max_clique_mask(cadj, rest) >= need) {
            chosen |= Mask{1} << v;
            --need;
            cand = rest;
        } else {
            cand &= ~(1ULL << v);
        }
    }
    return chosen;
}

}  // namespace

bool is_dual_clique_pair(const ConfusionFamily& fam, const std::vector<int>& s, const std::vector<int>& t) {
    Mask ms = to_mask(s, fam.x1_size()), mt = to_mask(t, fam.x2_size());
    for (int x : t)
        if (!clique_in(fam.h[x], ms)) return false;
    for (int x : s)
        if (!clique_in(fam.g[x], mt)) return false;
    return true;
}

bool is_dual_independent_pair(const ConfusionFamily& fam, const std::vector<int>& s, const std::vector<int>& t) {
    Mask ms = to_mask(s, fam.x1_size()), mt = to_mask(t, fam.x2_size());
    for (int x : t)
        if (!independent_in(fam.h[x], ms)) return false;
    for (int x : s)
        if (!independent_in(fam.g[x], mt)) return false;
    return true;
}

std::vector<DualPair> enumerate_dual_clique_pairs(const ConfusionFamily& fam) {
    check_size(fam);
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    std::vector<DualPair> out;
    for (Mask s = 1; s < (Mask{1} << m1); ++s) {
        std::vector<int> allowed;
        for (int t = 0; t < m2; ++t)
            if (clique_in(fam.h[t], s)) allowed.push_back(t);
        if (allowed.empty()) continue;
        Graph inter = Graph::complete(m2);
        for (Mask a = s; a; a &= a - 1)
            for (int u = 0; u < m2; ++u)
                for (int v = u + 1; v < m2; ++v)
                    if (!fam.g[std::countr_zero(a)].adjacent(u, v)) inter.remove_edge(u, v);
        for (const auto& local : enumerate_cliques(induced_subgraph(inter, allowed), true)) {
            Mask t = 0;
            for (int i : local) t |= Mask{1} << allowed[i];
            bool maximal = true;
            for (int x = 0; x < m1 && maximal; ++x) {
                if (s >> x & 1) continue;
                Mask s2 = s | (Mask{1} << x);
                bool ext = clique_in(fam.g[x], t);
                for (Mask a = t; a && ext; a &= a - 1) ext = clique_in(fam.h[std::countr_zero(a)], s2);
                if (ext) maximal = false;
            }
            if (maximal) out.push_back({bits(s), bits(t), PairKind::clique});
        }
    }
    std::sort(out.begin(), out.end(), [](const DualPair& x, const DualPair& y) {
        return std::tie(x.s, x.t) < std::tie(y.s, y.t);
    });
    return out;
}

IndependenceProduct independence_product(const ConfusionFamily& fam) {
    check_size(fam);
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    std::vector<int> alpha_g(m1);
    for (int i = 0; i < m1; ++i) alpha_g[i] = independence_number(fam.g[i]).size;

    long long best = 0;
    std::vector<std::pair<Mask, int>> maximizers;  // (S, |T|)
    for (Mask s = 1; s < (Mask{1} << m1); ++s) {
        const int ss = std::popcount(s);
        int cap = m2;
        for (Mask a = s; a; a &= a - 1) cap = std::min(cap, alpha_g[std::countr_zero(a)]);
        if (static_cast<long long>(ss) * cap < best) continue;
        std::uint64_t allowed = 0;
        for (int t = 0; t < m2; ++t)
            if (independent_in(fam.h[t], s)) allowed |= 1ULL << t;
        if (!allowed) continue;
        int a = max_clique_mask(union_complement(fam, s), allowed);
        long long val = static_cast<long long>(ss) * a;
        if (val > best) {
            best = val;
            maximizers.clear();
        }
        if (val == best) maximizers.emplace_back(s, a);
    }
    IndependenceProduct res;
    res.pi = best;
    bool first = true;
    for (auto [s, a] : maximizers) {
        std::uint64_t allowed = 0;
        for (int t = 0; t < m2; ++t)
            if (independent_in(fam.h[t], s)) allowed |= 1ULL << t;
        DualPair p{bits(s), bits(lex_least_clique(union_complement(fam, s), allowed, a)), PairKind::independent};
        if (first || std::tie(p.s, p.t) < std::tie(res.witness.s, res.witness.t)) res.witness = p;
        first = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// rho

RhoCertificate rho_lower_certificate(const ConfusionFamily& fam, const DualPair& pair) {
    fam.validate();
    if (pair.s.empty() || pair.t.empty() || !is_dual_independent_pair(fam, pair.s, pair.t))
        throw ValidationError("rho certificate needs a nonempty dual independent pair");
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    const double ns = static_cast<double>(pair.s.size()), nt = static_cast<double>(pair.t.size());
    RhoCertificate c;
    c.gamma = Eigen::MatrixXd::Zero(m1 + m2, m1 + m2);
    for (int i : pair.s) {
        for (int j : pair.s) c.gamma(i, j) = 1.0 / ns;
        for (int t : pair.t) c.gamma(i, m1 + t) = c.gamma(m1 + t, i) = 1.0 / std::sqrt(ns * nt);
    }
    for (int t : pair.t)
        for (int u : pair.t) c.gamma(m1 + t, m1 + u) = 1.0 / nt;
    c.value = 2.0 * c.gamma.topRightCorner(m1, m2).sum();
    c.min_eig = min_eigenvalue(c.gamma);
    std::string why = check_rho_certificate(fam, c);
    if (!why.empty()) throw std::logic_error("constructed rho certificate is invalid: " + why);
    return c;
}

std::string check_rho_certificate(const ConfusionFamily& fam, const RhoCertificate& cert) {
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    const auto& g = cert.gamma;
    if (g.rows() != m1 + m2 || g.cols() != m1 + m2) return "gamma has the wrong size";
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) return "gamma is not symmetric";
    if (std::abs(g.topLeftCorner(m1, m1).trace() - 1.0) > 1e-9) return "X1 trace constraint violated";
    if (std::abs(g.bottomRightCorner(m2, m2).trace() - 1.0) > 1e-9) return "X2 trace constraint violated";
    for (int i = 0; i < m1; ++i)
        for (auto [j, k] : fam.g[i].edges())
            if (g(i, m1 + j) * g(i, m1 + k) != 0.0) return "complementarity violated in row " + std::to_string(i);
    for (int t = 0; t < m2; ++t)
        for (auto [a, b] : fam.h[t].edges())
            if (g(a, m1 + t) * g(b, m1 + t) != 0.0) return "complementarity violated in column " + std::to_string(t);
    if (min_eigenvalue(g) < -1e-9) return "gamma is not positive semidefinite";
    if (std::abs(2.0 * g.topRightCorner(m1, m2).sum() - cert.value) > 1e-9) return "stored value mismatch";
    return {};
}

namespace {

struct RhoSearch {
    const ConfusionFamily& fam;
    int m1, m2, limit;
    std::vector<std::pair<int, int>> conflicts;  // pairs of cross-block entries e = i*m2 + j
    RhoEstimate est;
    double open_bound = -std::numeric_limits<double>::infinity();

    SdpSolution solve(const std::vector<char>& zero) {
        const int n = m1 + m2;
        SdpProblem p;
        p.n = n;
        p.c = Eigen::MatrixXd::Zero(n, n);
        p.c.topRightCorner(m1, m2).setOnes();
        p.c.bottomLeftCorner(m2, m1).setOnes();
        SymSparse t1, t2;
        for (int i = 0; i < m1; ++i) t1.entries.push_back({i, i, 1.0});
        for (int j = 0; j < m2; ++j) t2.entries.push_back({m1 + j, m1 + j, 1.0});
        p.a = {t1, t2};
        p.b = {1.0, 1.0};
        for (int e = 0; e < m1 * m2; ++e)
            if (zero[e]) {
                p.a.push_back(SymSparse{{{e / m2, m1 + e % m2, 0.5}}});
                p.b.push_back(0.0);
            }
        ++est.sdp_solves;
        return solve_sdp(p);
    }

    void dfs(std::vector<char>& zero) {
        if (est.sdp_solves >= limit) {
            est.complete = false;
            return;
        }
        SdpSolution sol = solve(zero);
        const double val = sol.primal_value;
        if (val <= est.value + 1e-7) return;
        // most violated disjunction still open
        int pick = -1;
        double worst = 1e-7;
        auto entry = [&](int e) { return sol.x(e / m2, m1 + e % m2); };
        for (int c = 0; c < static_cast<int>(conflicts.size()); ++c) {
            auto [e1, e2] = conflicts[c];
            if (zero[e1] || zero[e2]) continue;
            double v = std::abs(entry(e1) * entry(e2));
            if (v > worst) {
                worst = v;
                pick = c;
            }
        }
        if (pick < 0) {
            est.value = val;
            est.gamma = sol.x;
            return;
        }
        auto [e1, e2] = conflicts[pick];
        if (std::abs(entry(e1)) > std::abs(entry(e2))) std::swap(e1, e2);
        for (int e : {e1, e2}) {
            if (est.sdp_solves >= limit) {
                est.complete = false;
                open_bound = std::max(open_bound, val);
                return;
            }
            zero[e] = 1;
            dfs(zero);
            zero[e] = 0;
        }
    }
};

}  // namespace

RhoEstimate rho_upper_estimate(const ConfusionFamily& fam, int branch_limit) {
    check_size(fam);
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    RhoSearch s{fam, m1, m2, branch_limit, {}, {}};
    for (int i = 0; i < m1; ++i)
        for (auto [j, k] : fam.g[i].edges()) s.conflicts.emplace_back(i * m2 + j, i * m2 + k);
    for (int t = 0; t < m2; ++t)
        for (auto [a, b] : fam.h[t].edges()) s.conflicts.emplace_back(a * m2 + t, b * m2 + t);
    std::sort(s.conflicts.begin(), s.conflicts.end());
    s.conflicts.erase(std::unique(s.conflicts.begin(), s.conflicts.end()), s.conflicts.end());

    // the one-shot optimum is feasible, so its value seeds the incumbent
    auto ip = independence_product(fam);
    RhoCertificate seed = rho_lower_certificate(fam, ip.witness);
    s.est.value = seed.value;
    s.est.gamma = seed.gamma;
    s.est.complete = true;
    std::vector<char> zero(static_cast<std::size_t>(m1) * m2, 0);
    s.dfs(zero);
    s.est.bound = std::max(s.est.value, s.open_bound);
    return s.est;
}

}  // namespace twzec
