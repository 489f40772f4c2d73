#include "twzec/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace twzec {

namespace {

void check_vertex(int n, int v) {
    if (v < 0 || v >= n) throw GraphError("vertex " + std::to_string(v) + " out of range");
}

void check_limit(const Graph& g, int limit) {
    if (g.size() > limit || g.size() > 64)
        throw GraphError("graph has " + std::to_string(g.size()) + " vertices, limit is " +
                         std::to_string(std::min(limit, 64)));
}

std::vector<std::uint64_t> masks(const Graph& g) {
    std::vector<std::uint64_t> out(g.size());
    for (int v = 0; v < g.size(); ++v) out[v] = g.neighbor_mask(v);
    return out;
}

std::uint64_t full_mask(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

struct CliqueSearch {
    const std::vector<std::uint64_t>& adj;
    int best = 0;
    std::uint64_t best_set = 0;

    void expand(std::uint64_t p, std::uint64_t cur, int size) {
        // greedy colouring: each colour class is pairwise non-adjacent
        int order[64], color[64], cnt = 0;
        std::uint64_t uncolored = p;
        int k = 0;
        while (uncolored) {
            ++k;
            std::uint64_t q = uncolored;
            while (q) {
                int v = std::countr_zero(q);
                q &= ~(adj[v] | (1ULL << v));
                uncolored &= ~(1ULL << v);
                order[cnt] = v;
                color[cnt] = k;
                ++cnt;
            }
        }
        for (int i = cnt - 1; i >= 0; --i) {
            if (size + color[i] <= best) return;
            int v = order[i];
            std::uint64_t next = p & adj[v];
            std::uint64_t with = cur | (1ULL << v);
            if (next == 0) {
                if (size + 1 > best) {
                    best = size + 1;
                    best_set = with;
                }
            } else {
                expand(next, with, size + 1);
            }
            p &= ~(1ULL << v);
        }
    }
};

void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    std::uint64_t px = p | x;
    int pivot = -1, best = -1;
    for (std::uint64_t s = px; s; s &= s - 1) {
        int u = std::countr_zero(s);
        int c = std::popcount(p & adj[u]);
        if (c > best) {
            best = c;
            pivot = u;
        }
    }
    std::uint64_t cand = p & ~adj[pivot];
    for (std::uint64_t s = cand; s; s &= s - 1) {
        int v = std::countr_zero(s);
        std::uint64_t bit = 1ULL << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= ~bit;
        x |= bit;
    }
}

}  // namespace

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw GraphError("negative vertex count");
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::edgeless(int n) { return Graph(n); }

Graph Graph::cycle(int n) {
    Graph g(n);
    if (n == 2) g.add_edge(0, 1);
    if (n >= 3)
        for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

Graph Graph::from_matrix(const std::vector<std::vector<int>>& m) {
    const int n = static_cast<int>(m.size());
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        if (static_cast<int>(m[u].size()) != n) throw GraphError("adjacency matrix is not square");
        for (int v = 0; v < n; ++v) {
            int a = m[u][v];
            if (a != 0 && a != 1) throw GraphError("adjacency entries must be 0 or 1");
            if (u == v && a) throw GraphError("self-loop at vertex " + std::to_string(u));
            if (a != m[v][u]) throw GraphError("adjacency matrix is not symmetric");
            if (a && u < v) g.add_edge(u, v);
        }
    }
    return g;
}

void Graph::add_edge(int u, int v) {
    check_vertex(n_, u);
    check_vertex(n_, v);
    if (u == v) throw GraphError("self-loops are not allowed");
    adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
    adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
}

void Graph::remove_edge(int u, int v) {
    check_vertex(n_, u);
    check_vertex(n_, v);
    adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
    adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
}

int Graph::edge_count() const {
    int c = 0;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v) c += adjacent(u, v);
    return c;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

bool Graph::is_edgeless() const {
    return std::none_of(adj_.begin(), adj_.end(), [](std::uint8_t a) { return a != 0; });
}

std::vector<std::vector<int>> Graph::matrix() const {
    std::vector<std::vector<int>> m(n_, std::vector<int>(n_, 0));
    for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v) m[u][v] = adjacent(u, v) ? 1 : 0;
    return m;
}

std::uint64_t Graph::neighbor_mask(int v) const {
    if (n_ > 64) throw GraphError("bitmask view needs at most 64 vertices");
    std::uint64_t m = 0;
    for (int u = 0; u < n_; ++u)
        if (adjacent(v, u)) m |= 1ULL << u;
    return m;
}

Graph complement(const Graph& g) {
    Graph c(g.size());
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v)) c.add_edge(u, v);
    return c;
}

Graph graph_union(const Graph& g, const Graph& h) {
    if (g.size() != h.size()) throw GraphError("union needs equal vertex sets");
    Graph u = g;
    for (auto [a, b] : h.edges()) u.add_edge(a, b);
    return u;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
    Graph u(g.size() + h.size());
    for (auto [a, b] : g.edges()) u.add_edge(a, b);
    for (auto [a, b] : h.edges()) u.add_edge(g.size() + a, g.size() + b);
    return u;
}

Graph strong_product(const Graph& g, const Graph& h) {
    const int ng = g.size(), nh = h.size();
    Graph p(ng * nh);
    for (int u = 0; u < ng; ++u)
        for (int v = 0; v < ng; ++v) {
            if (u != v && !g.adjacent(u, v)) continue;
            for (int a = 0; a < nh; ++a)
                for (int b = 0; b < nh; ++b) {
                    if (a != b && !h.adjacent(a, b)) continue;
                    int x = u * nh + a, y = v * nh + b;
                    if (x < y) p.add_edge(x, y);
                }
        }
    return p;
}

Graph strong_power(const Graph& g, int k) {
    if (k < 1) throw GraphError("strong power needs k >= 1");
    Graph p = g;
    for (int i = 1; i < k; ++i) p = strong_product(p, g);
    return p;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    Graph s(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        check_vertex(g.size(), vertices[i]);
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j])) s.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
    return s;
}

bool is_independent_set(const Graph& g, const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j] || g.adjacent(s[i], s[j])) return false;
    return true;
}

bool is_clique(const Graph& g, const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j] || !g.adjacent(s[i], s[j])) return false;
    return true;
}

std::vector<int> mask_to_vector(std::uint64_t m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

std::uint64_t vector_to_mask(const std::vector<int>& v) {
    std::uint64_t m = 0;
    for (int x : v) m |= 1ULL << x;
    return m;
}

int max_clique_mask(const std::vector<std::uint64_t>& adj, std::uint64_t candidates, std::uint64_t* witness) {
    if (candidates == 0) {
        if (witness) *witness = 0;
        return 0;
    }
    CliqueSearch s{adj};
    s.expand(candidates, 0, 0);
    if (witness) *witness = s.best_set;
    return s.best;
}

IndependentSet max_clique(const Graph& g, int limit) {
    check_limit(g, limit);
    std::uint64_t w = 0;
    int size = max_clique_mask(masks(g), full_mask(g.size()), &w);
    return {size, mask_to_vector(w)};
}

IndependentSet independence_number(const Graph& g, int limit) {
    check_limit(g, limit);
    return max_clique(complement(g), limit);
}

std::vector<std::vector<int>> enumerate_cliques(const Graph& g, bool maximal_only, int limit) {
    check_limit(g, limit);
    std::vector<std::uint64_t> maximal;
    if (g.size() == 0) maximal.push_back(0);
    else bron_kerbosch(masks(g), 0, full_mask(g.size()), 0, maximal);

    std::vector<std::vector<int>> out;
    if (maximal_only) {
        for (auto m : maximal) out.push_back(mask_to_vector(m));
    } else {
        std::set<std::uint64_t> all;
        for (auto m : maximal) {
            // every subset of a clique is a clique
            for (std::uint64_t s = m;; s = (s - 1) & m) {
                all.insert(s);
                if (s == 0) break;
            }
        }
        for (auto m : all) out.push_back(mask_to_vector(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace twzec
