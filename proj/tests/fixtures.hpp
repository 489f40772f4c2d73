#pragma once

#include "twzec/channel.hpp"
#include "twzec/graph.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(TWZEC_DATA_DIR) + "/" + name; }

inline twzec::ChannelInput load(const std::string& name) {
    std::ifstream in(data_path(name));
    if (!in) throw std::runtime_error("missing data file " + name);
    return twzec::parse_channel(in);
}

// delta splits the (x1=1, x2=0) row between (1,0) and (1,1); 0.5 is the data file
inline twzec::Channel delta_channel(double delta = 0.5) {
    twzec::Channel ch = twzec::channel_of(load("example1.json"));
    std::vector<double> p = ch.data();
    p[ch.index(1, 0, 1, 0)] = delta;
    p[ch.index(1, 0, 1, 1)] = 1.0 - delta;
    return twzec::Channel(3, 2, 2, 2, p);
}

inline twzec::ConfusionFamily delta_family() { return twzec::derive_confusion(delta_channel()); }

inline twzec::ConfusionFamily binary_multiplying() {
    using twzec::Graph;
    return {{Graph::complete(2), Graph::edgeless(2)}, {Graph::complete(2), Graph::edgeless(2)}};
}

inline twzec::ConfusionFamily pentagon() {
    using twzec::Graph;
    twzec::ConfusionFamily f;
    f.g = {Graph::edgeless(5), Graph::cycle(5)};
    f.h.assign(5, Graph::edgeless(2));
    return f;
}

inline twzec::Graph random_graph(std::mt19937_64& rng, int n, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    twzec::Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// rows with random support (at least one entry) and random masses
inline twzec::Channel random_channel(std::mt19937_64& rng, int max_alphabet = 4) {
    std::uniform_int_distribution<int> size(1, max_alphabet);
    int x1 = size(rng), x2 = size(rng);
    std::uniform_int_distribution<int> out(2, max_alphabet);
    int y1 = out(rng), y2 = out(rng);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    std::bernoulli_distribution keep(0.35);
    std::uniform_int_distribution<int> pick(0, y1 * y2 - 1);
    std::vector<double> p(static_cast<std::size_t>(x1) * x2 * y1 * y2, 0.0);
    for (int a = 0; a < x1; ++a)
        for (int b = 0; b < x2; ++b) {
            std::size_t base = (static_cast<std::size_t>(a) * x2 + b) * y1 * y2;
            double total = 0.0;
            for (int k = 0; k < y1 * y2; ++k)
                if (keep(rng)) total += p[base + k] = mass(rng);
            if (total == 0.0) total = p[base + pick(rng)] = 1.0;
            for (int k = 0; k < y1 * y2; ++k) p[base + k] /= total;
        }
    return twzec::Channel(x1, x2, y1, y2, p);
}

inline twzec::ConfusionFamily random_family(std::mt19937_64& rng, int m1, int m2, double p = 0.5) {
    twzec::ConfusionFamily f;
    for (int i = 0; i < m1; ++i) f.g.push_back(random_graph(rng, m2, p));
    for (int j = 0; j < m2; ++j) f.h.push_back(random_graph(rng, m1, p));
    return f;
}

}  // namespace fixtures
