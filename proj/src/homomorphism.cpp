#include "twzec/homomorphism.hpp"

#include <set>
#include <string>

namespace twzec {

namespace {

void check_maps(const DualHomomorphism& d, const ConfusionFamily& src, const ConfusionFamily& dst) {
    if (static_cast<int>(d.phi.size()) != src.x1_size() || static_cast<int>(d.psi.size()) != src.x2_size())
        throw ValidationError("homomorphism domain does not match the source alphabets");
    for (int v : d.phi)
        if (v < 0 || v >= dst.x1_size()) throw ValidationError("phi leaves the target X1 alphabet");
    for (int v : d.psi)
        if (v < 0 || v >= dst.x2_size()) throw ValidationError("psi leaves the target X2 alphabet");
}

// one adjacency-preservation requirement; side 0 reads G, side 1 reads H
struct Requirement {
    int side, index, u, v;
};

struct Search {
    const ConfusionFamily& src;
    const ConfusionFamily& dst;
    int m1, m2;
    std::vector<int> value;  // X1 symbols first, then X2
    std::vector<std::vector<Requirement>> by_var;

    bool ok(const Requirement& r) const {
        if (r.side == 0) {
            int i = value[r.index], a = value[m1 + r.u], b = value[m1 + r.v];
            return dst.g[i].adjacent(a, b);
        }
        int j = value[m1 + r.index], a = value[r.u], b = value[r.v];
        return dst.h[j].adjacent(a, b);
    }

    bool dfs(int var) {
        if (var == m1 + m2) return true;
        const int range = var < m1 ? dst.x1_size() : dst.x2_size();
        const int own = var < m1 ? var : var - m1;
        // own label first so that equal families map by the identity
        std::vector<int> order;
        if (own < range) order.push_back(own);
        for (int k = 0; k < range; ++k)
            if (k != own) order.push_back(k);
        for (int cand : order) {
            value[var] = cand;
            bool good = true;
            for (const auto& r : by_var[var])
                if (!ok(r)) {
                    good = false;
                    break;
                }
            if (good && dfs(var + 1)) return true;
        }
        value[var] = -1;
        return false;
    }
};

}  // namespace

bool verify_dual_homomorphism(const DualHomomorphism& d, const ConfusionFamily& src, const ConfusionFamily& dst) {
    src.validate();
    dst.validate();
    check_maps(d, src, dst);
    for (int i = 0; i < src.x1_size(); ++i)
        for (auto [a, b] : src.g[i].edges())
            if (!dst.g[d.phi[i]].adjacent(d.psi[a], d.psi[b])) return false;
    for (int j = 0; j < src.x2_size(); ++j)
        for (auto [a, b] : src.h[j].edges())
            if (!dst.h[d.psi[j]].adjacent(d.phi[a], d.phi[b])) return false;
    return true;
}

ConfusionFamily complement_family(const ConfusionFamily& fam) {
    ConfusionFamily c;
    for (const auto& g : fam.g) c.g.push_back(complement(g));
    for (const auto& h : fam.h) c.h.push_back(complement(h));
    return c;
}

std::optional<DualHomomorphism> find_dual_homomorphism(const ConfusionFamily& src, const ConfusionFamily& dst) {
    src.validate();
    dst.validate();
    for (int s : {src.x1_size(), src.x2_size(), dst.x1_size(), dst.x2_size()})
        if (s > kHomomorphismAlphabetLimit)
            throw ValidationError("homomorphism search is limited to alphabets of size " +
                                  std::to_string(kHomomorphismAlphabetLimit));
    const ConfusionFamily cs = complement_family(src), cd = complement_family(dst);
    const int m1 = src.x1_size(), m2 = src.x2_size();
    Search s{cs, cd, m1, m2, std::vector<int>(m1 + m2, -1), std::vector<std::vector<Requirement>>(m1 + m2)};
    // attach each requirement to its last variable in search order
    for (int i = 0; i < m1; ++i)
        for (auto [a, b] : cs.g[i].edges()) s.by_var[std::max(i, m1 + std::max(a, b))].push_back({0, i, a, b});
    for (int j = 0; j < m2; ++j)
        for (auto [a, b] : cs.h[j].edges()) s.by_var[std::max(m1 + j, std::max(a, b))].push_back({1, j, a, b});
    if (!s.dfs(0)) return std::nullopt;
    DualHomomorphism d;
    d.phi.assign(s.value.begin(), s.value.begin() + m1);
    d.psi.assign(s.value.begin() + m1, s.value.end());
    return d;
}

CodebookPair transport_codebook(const DualHomomorphism& d, const CodebookPair& pair) {
    CodebookPair out{pair.n, {}, {}};
    auto map_words = [&](const std::vector<Word>& in, const std::vector<int>& f, const char* name) {
        std::vector<Word> res;
        std::set<Word> seen;
        for (const auto& w : in) {
            Word img(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (w[i] < 0 || w[i] >= static_cast<int>(f.size()))
                    throw ValidationError(std::string("codeword symbol outside the domain of ") + name);
                img[i] = f[w[i]];
            }
            if (!seen.insert(img).second)
                throw ValidationError(std::string("transport merged two codewords under ") + name +
                                      "; the pair was not uniquely decodable or the map is invalid");
            res.push_back(std::move(img));
        }
        return res;
    };
    out.a = map_words(pair.a, d.phi, "phi");
    out.b = map_words(pair.b, d.psi, "psi");
    return out;
}

}  // namespace twzec
