#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twzec {

inline constexpr int kDefaultVertexLimit = 64;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite simple undirected graph on vertices 0..n-1 (dense adjacency).
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph complete(int n);
    static Graph edgeless(int n);
    static Graph cycle(int n);
    static Graph path(int n);
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    /// 0/1 symmetric matrix with zero diagonal; anything else is rejected.
    static Graph from_matrix(const std::vector<std::vector<int>>& m);

    int size() const { return n_; }
    bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;
    bool is_edgeless() const;
    std::vector<std::vector<int>> matrix() const;

    /// Neighbourhood as a bitmask; only for n <= 64.
    std::uint64_t neighbor_mask(int v) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    int n_ = 0;
    std::vector<std::uint8_t> adj_;
};

Graph complement(const Graph& g);
/// Edge union on a shared vertex set.
Graph graph_union(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);
/// Vertex (u,u') has index u*h.size()+u'.
Graph strong_product(const Graph& g, const Graph& h);
Graph strong_power(const Graph& g, int k);
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

bool is_independent_set(const Graph& g, const std::vector<int>& s);
bool is_clique(const Graph& g, const std::vector<int>& s);

struct IndependentSet {
    int size = 0;
    std::vector<int> witness;  // sorted
};

IndependentSet independence_number(const Graph& g, int limit = kDefaultVertexLimit);
IndependentSet max_clique(const Graph& g, int limit = kDefaultVertexLimit);

/// Maximal cliques (Bron-Kerbosch with pivoting) or every clique including
/// the empty one. Sets are sorted; the list is in lexicographic order.
std::vector<std::vector<int>> enumerate_cliques(const Graph& g, bool maximal_only,
                                                int limit = kDefaultVertexLimit);

// bitmask kernels shared with the exhaustive searches
int max_clique_mask(const std::vector<std::uint64_t>& adj, std::uint64_t candidates,
                    std::uint64_t* witness = nullptr);
std::vector<int> mask_to_vector(std::uint64_t m);
std::uint64_t vector_to_mask(const std::vector<int>& v);

}  // namespace twzec
