#include "twzec/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace twzec {

ThetaResult lovasz_theta_detailed(const Graph& g) {
    const int n = g.size();
    if (n > kThetaVertexLimit) throw GraphError("theta is limited to 64 vertices");
    ThetaResult r;
    if (n <= 1) {
        r.value = n;
        r.converged = true;
        return r;
    }
    const int edges = g.edge_count();
    const int non_edges = n * (n - 1) / 2 - edges;
    SdpProblem p;
    p.n = n;
    if (edges + 1 <= non_edges + n - 1) {
        // max <J,X>, tr X = 1, X_uv = 0 on edges
        p.c = Eigen::MatrixXd::Ones(n, n);
        SymSparse tr;
        for (int i = 0; i < n; ++i) tr.entries.push_back({i, i, 1.0});
        p.a.push_back(tr);
        p.b.push_back(1.0);
        for (auto [u, v] : g.edges()) {
            p.a.push_back(SymSparse{{{u, v, 0.5}}});
            p.b.push_back(0.0);
        }
    } else {
        // theta = 1 + min Z_11 over Z psd with constant diagonal and Z_uv = -1 on non-edges
        r.edge_form = false;
        p.c = -Eigen::MatrixXd::Identity(n, n) / n;
        for (int i = 1; i < n; ++i) {
            p.a.push_back(SymSparse{{{i, i, 1.0}, {0, 0, -1.0}}});
            p.b.push_back(0.0);
        }
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!g.adjacent(u, v)) {
                    p.a.push_back(SymSparse{{{u, v, 0.5}}});
                    p.b.push_back(-1.0);
                }
    }
    SdpSolution s = solve_sdp(p);
    r.value = r.edge_form ? 0.5 * (s.primal_value + s.dual_value) : 1.0 - 0.5 * (s.primal_value + s.dual_value);
    r.gap = s.gap;
    r.primal_infeas = s.primal_infeas;
    r.dual_infeas = s.dual_infeas;
    r.iterations = s.iterations;
    r.converged = s.converged;
    return r;
}

double lovasz_theta(const Graph& g) {
    ThetaResult r = lovasz_theta_detailed(g);
    if (!r.converged && (r.gap > 1e-7 || r.primal_infeas > 1e-7 || r.dual_infeas > 1e-7)) {
        std::ostringstream os;
        os << "theta solver did not converge: gap " << r.gap << ", primal residual " << r.primal_infeas
           << ", dual residual " << r.dual_infeas;
        throw SolverError(os.str());
    }
    return r.value;
}

namespace {

template <class T>
LpProblemT<T> clique_cover_lp(const Graph& g) {
    if (g.size() > kCliqueCoverVertexLimit) throw GraphError("fractional clique cover is limited to 36 vertices");
    auto cliques = enumerate_cliques(g, true);
    if (cliques.size() > kCliqueCoverCliqueLimit) throw GraphError("too many maximal cliques for the clique cover LP");
    LpProblemT<T> lp;
    lp.num_vars = static_cast<int>(cliques.size());
    lp.c.assign(cliques.size(), T(1));
    for (int v = 0; v < g.size(); ++v) {
        std::vector<T> row(cliques.size(), T(0));
        for (std::size_t k = 0; k < cliques.size(); ++k)
            for (int u : cliques[k])
                if (u == v) row[k] = T(1);
        lp.a.push_back(std::move(row));
        lp.b.push_back(T(1));
        lp.sense.push_back(RowSense::ge);
    }
    return lp;
}

}  // namespace

Rational fractional_clique_cover_exact(const Graph& g) {
    if (g.size() == 0) return Rational(0);
    return solve_lp(clique_cover_lp<Rational>(g)).value;
}

double fractional_clique_cover(const Graph& g) {
    if (g.size() == 0) return 0.0;
    if (g.size() <= kExactCliqueCoverLimit) return static_cast<double>(fractional_clique_cover_exact(g));
    return solve_lp(clique_cover_lp<double>(g)).value;
}

const char* spectral_point_name(SpectralPoint p) {
    return p == SpectralPoint::lovasz_theta ? "lovasz-theta" : "fractional-clique-cover";
}

double evaluate_spectral_point(SpectralPoint p, const Graph& g) {
    return p == SpectralPoint::lovasz_theta ? lovasz_theta(g) : fractional_clique_cover(g);
}

std::vector<SpectralPoint> available_spectral_points(const Graph& g) {
    std::vector<SpectralPoint> out;
    if (g.size() <= kThetaVertexLimit) out.push_back(SpectralPoint::lovasz_theta);
    if (g.size() <= kCliqueCoverVertexLimit) out.push_back(SpectralPoint::fractional_clique_cover);
    return out;
}

CapacitySandwich capacity_sandwich(const Graph& g, int max_power) {
    if (max_power < 1) throw ValidationError("max_power must be at least 1");
    CapacitySandwich s;
    s.lower = -std::numeric_limits<double>::infinity();
    Graph p = g;
    for (int k = 1; k <= max_power; ++k) {
        if (k > 1) p = strong_product(p, g);
        double v = std::log2(static_cast<double>(independence_number(p).size)) / k;
        if (v > s.lower + 1e-12) {
            s.lower = v;
            s.witness_power = k;
        }
    }
    double eta = std::numeric_limits<double>::infinity();
    for (auto pt : available_spectral_points(g)) eta = std::min(eta, evaluate_spectral_point(pt, g));
    s.upper = std::log2(eta);
    return s;
}

double noiseless_direction_bound(const ConfusionFamily& fam) {
    fam.validate();
    for (const auto& h : fam.h)
        if (!h.is_edgeless()) throw ValidationError("noiseless-direction bound needs every H graph edgeless");
    double best = std::numeric_limits<double>::infinity();
    for (auto pt : {SpectralPoint::lovasz_theta, SpectralPoint::fractional_clique_cover}) {
        double sum = 0.0;
        bool ok = true;
        for (const auto& g : fam.g) {
            auto avail = available_spectral_points(g);
            if (std::find(avail.begin(), avail.end(), pt) == avail.end()) {
                ok = false;
                break;
            }
            sum += evaluate_spectral_point(pt, g);
        }
        if (ok) best = std::min(best, std::log2(sum));
    }
    return best;
}

double kg_kk_bound(int x2_size, const Graph& g) {
    if (g.size() != x2_size) throw ValidationError("graph must live on the X2 alphabet");
    double eta = std::numeric_limits<double>::infinity();
    for (auto pt : available_spectral_points(g)) eta = std::min(eta, evaluate_spectral_point(pt, g));
    return std::log2(x2_size + eta);
}

}  // namespace twzec
