#include "twzec/code_lab.hpp"

#include "twzec/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace twzec {

namespace {

std::string word_str(const Word& w) {
    std::string s;
    for (int v : w) s += std::to_string(v) + (v > 9 ? "," : "");
    return s;
}

}  // namespace

std::string DecodabilityCheck::describe() const {
    if (ok) return "uniquely decodable";
    std::ostringstream os;
    if (side == 1)
        os << "Alice with a=" << word_str(fixed) << " cannot separate b=" << word_str(first)
           << " from b=" << word_str(second);
    else
        os << "Bob with b=" << word_str(fixed) << " cannot separate a=" << word_str(first)
           << " from a=" << word_str(second);
    return os.str();
}

void validate_codebook(const CodebookPair& pair, const ConfusionFamily& fam) {
    fam.validate();
    if (pair.n < 1) throw ValidationError("blocklength must be positive");
    auto check = [&](const std::vector<Word>& book, int alphabet, const char* name) {
        std::set<Word> seen;
        for (const auto& w : book) {
            if (static_cast<int>(w.size()) != pair.n)
                throw ValidationError(std::string("codeword in ") + name + " has the wrong length");
            for (int v : w)
                if (v < 0 || v >= alphabet) throw ValidationError(std::string("symbol out of range in ") + name);
            if (!seen.insert(w).second) throw ValidationError(std::string("duplicate codeword in ") + name);
        }
    };
    check(pair.a, fam.x1_size(), "A");
    check(pair.b, fam.x2_size(), "B");
}

DecodabilityCheck is_uniquely_decodable(const CodebookPair& pair, const ConfusionFamily& fam) {
    validate_codebook(pair, fam);
    const int n = pair.n;
    auto confused = [n](const std::vector<Graph>& graphs, const Word& fixed, const Word& u, const Word& v) {
        for (int i = 0; i < n; ++i)
            if (u[i] != v[i] && !graphs[fixed[i]].adjacent(u[i], v[i])) return false;
        return true;
    };
    DecodabilityCheck out;
    auto scan = [&](const std::vector<Graph>& graphs, const std::vector<Word>& fixed_book,
                    const std::vector<Word>& book, int side) {
        for (const auto& f : fixed_book)
            for (std::size_t i = 0; i < book.size(); ++i)
                for (std::size_t j = i + 1; j < book.size(); ++j)
                    if (confused(graphs, f, book[i], book[j])) {
                        out = {false, side, f, book[i], book[j]};
                        return false;
                    }
        return true;
    };
    if (scan(fam.g, pair.a, pair.b, 1)) scan(fam.h, pair.b, pair.a, 2);
    return out;
}

bool detecting_vector_check(const Word& x, const std::vector<Word>& code, const std::vector<int>& d_set) {
    std::vector<int> ind;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::find(d_set.begin(), d_set.end(), x[i]) != d_set.end()) ind.push_back(static_cast<int>(i));
    std::set<Word> proj;
    for (const auto& c : code) {
        if (c.size() != x.size()) throw ValidationError("detecting check needs words of equal length");
        Word p;
        for (int i : ind) p.push_back(c[i]);
        if (!proj.insert(p).second) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Word> all_words(int alphabet, int n) {
    std::vector<Word> out;
    Word w(n, 0);
    while (true) {
        out.push_back(w);
        int i = n - 1;
        while (i >= 0 && ++w[i] == alphabet) w[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

struct Search {
    int n1 = 0, n2 = 0;
    std::vector<std::uint64_t> g_adj;               // per X1 word: confusion masks over X2 words, flattened
    std::vector<std::vector<std::uint64_t>> h_conf;  // [b][a] mask of X1 words confused with a given b
    std::uint64_t full2 = 0;
    long long budget = 0, nodes = 0;
    long long best = 0;
    std::vector<int> best_a;
    std::uint64_t best_b = 0;
    bool complete = true;

    void dfs(std::vector<int>& a, std::uint64_t amask, const std::vector<std::uint64_t>& u, std::uint64_t allowed,
             int start) {
        if (++nodes > budget) {
            complete = false;
            return;
        }
        long long alpha = n2;
        std::uint64_t wit = 0;
        if (!a.empty()) {
            std::vector<std::uint64_t> comp(n2);
            for (int i = 0; i < n2; ++i) comp[i] = ~u[i] & full2 & ~(std::uint64_t{1} << i);
            alpha = max_clique_mask(comp, allowed, &wit);
            const long long val = static_cast<long long>(a.size()) * alpha;
            if (val > best) {
                best = val;
                best_a = a;
                best_b = wit;
            }
        }
        if (static_cast<long long>(a.size() + (n1 - start)) * alpha <= best) return;
        for (int x = start; x < n1 && complete; ++x) {
            std::uint64_t next = 0;
            for (std::uint64_t m = allowed; m; m &= m - 1) {
                const int b = std::countr_zero(m);
                if ((h_conf[b][x] & amask) == 0) next |= std::uint64_t{1} << b;
            }
            if (!next) continue;
            std::vector<std::uint64_t> u2(u);
            for (int i = 0; i < n2; ++i) u2[i] |= g_adj[static_cast<std::size_t>(x) * n2 + i];
            a.push_back(x);
            dfs(a, amask | (std::uint64_t{1} << x), u2, next, x + 1);
            a.pop_back();
            if (static_cast<long long>(a.size() + (n1 - x - 1)) * alpha <= best) break;
        }
    }
};

}  // namespace

ExhaustiveResult exhaustive_best_pair(const ConfusionFamily& fam, int n, long long node_budget) {
    fam.validate();
    if (n < 1) throw ValidationError("blocklength must be positive");
    const auto w1 = all_words(fam.x1_size(), n), w2 = all_words(fam.x2_size(), n);
    if (static_cast<int>(w1.size()) > kExhaustiveWordLimit || static_cast<int>(w2.size()) > kExhaustiveWordLimit)
        throw ValidationError("exhaustive search is limited to 64 words per side");
    Search s;
    s.n1 = static_cast<int>(w1.size());
    s.n2 = static_cast<int>(w2.size());
    s.full2 = s.n2 == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.n2) - 1;
    s.budget = node_budget;
    auto confused = [n](const std::vector<Graph>& graphs, const Word& f, const Word& u, const Word& v) {
        for (int i = 0; i < n; ++i)
            if (u[i] != v[i] && !graphs[f[i]].adjacent(u[i], v[i])) return false;
        return true;
    };
    s.g_adj.assign(static_cast<std::size_t>(s.n1) * s.n2, 0);
    for (int a = 0; a < s.n1; ++a)
        for (int i = 0; i < s.n2; ++i)
            for (int j = 0; j < s.n2; ++j)
                if (i != j && confused(fam.g, w1[a], w2[i], w2[j]))
                    s.g_adj[static_cast<std::size_t>(a) * s.n2 + i] |= std::uint64_t{1} << j;
    s.h_conf.assign(s.n2, std::vector<std::uint64_t>(s.n1, 0));
    for (int b = 0; b < s.n2; ++b)
        for (int i = 0; i < s.n1; ++i)
            for (int j = 0; j < s.n1; ++j)
                if (i != j && confused(fam.h, w2[b], w1[i], w1[j])) s.h_conf[b][i] |= std::uint64_t{1} << j;
    // one word each is always decodable
    s.best = 1;
    s.best_a = {0};
    s.best_b = 1;
    std::vector<int> a;
    s.dfs(a, 0, std::vector<std::uint64_t>(s.n2, 0), s.full2, 0);

    ExhaustiveResult r;
    r.pair.n = n;
    for (int x : s.best_a) r.pair.a.push_back(w1[x]);
    for (int y : mask_to_vector(s.best_b)) r.pair.b.push_back(w2[y]);
    r.product = s.best;
    r.complete = s.complete;
    r.nodes = s.nodes;
    return r;
}

// ---------------------------------------------------------------------------

double detector_count_guarantee(int q, int qprime, int n, int k, int tau) {
    double prod = 1.0;
    for (int i = 1; i < 200; ++i) prod *= 1.0 - std::pow(static_cast<double>(q), -i);
    return std::exp2(log2_binomial(n, k)) * std::pow(tau, k) * std::pow(qprime - tau, n - k) * prod;
}

namespace {

struct Minor {
    std::uint64_t mask;
    std::vector<int> rows, cols;  // rows of P and columns of P (offset by k)
};

std::vector<Minor> basis_candidates(int n, int k) {
    std::vector<Minor> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (std::popcount(m) != k) continue;
        Minor mi{m, {}, {}};
        for (int i = 0; i < k; ++i)
            if (!(m >> i & 1)) mi.rows.push_back(i);
        for (int j = k; j < n; ++j)
            if (m >> j & 1) mi.cols.push_back(j - k);
        out.push_back(std::move(mi));
    }
    return out;
}

bool minor_invertible(const GaloisField& f, const std::vector<std::vector<int>>& p, const Minor& mi) {
    const int d = static_cast<int>(mi.rows.size());
    if (d == 0) return true;
    if (d == 1) return p[mi.rows[0]][mi.cols[0]] != 0;
    int m[16][16];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = p[mi.rows[i]][mi.cols[j]];
    for (int c = 0; c < d; ++c) {
        int piv = c;
        while (piv < d && m[piv][c] == 0) ++piv;
        if (piv == d) return false;
        if (piv != c)
            for (int j = 0; j < d; ++j) std::swap(m[piv][j], m[c][j]);
        const int inv = f.inv(m[c][c]);
        for (int i = c + 1; i < d; ++i) {
            if (m[i][c] == 0) continue;
            const int factor = f.mul(m[i][c], inv);
            for (int j = c; j < d; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[c][j]));
        }
    }
    return true;
}

std::vector<std::uint64_t> bases_of(const GaloisField& f, const std::vector<std::vector<int>>& p,
                                    const std::vector<Minor>& cands) {
    std::vector<std::uint64_t> out;
    for (const auto& mi : cands)
        if (minor_invertible(f, p, mi)) out.push_back(mi.mask);
    return out;
}

void materialize(LinearCodePair& lp) {
    lp.detectors.clear();
    lp.materialized = false;
    if (lp.detector_count > kDetectorLimit) return;
    std::vector<int> in = lp.d_set, out;
    for (int v = 0; v < lp.qprime; ++v)
        if (std::find(in.begin(), in.end(), v) == in.end()) out.push_back(v);
    for (std::uint64_t m : lp.bases) {
        // odometer over the choices per coordinate
        std::vector<const std::vector<int>*> choice(lp.n);
        bool empty = false;
        for (int i = 0; i < lp.n; ++i) {
            choice[i] = (m >> i & 1) ? &in : &out;
            if (choice[i]->empty()) empty = true;
        }
        if (empty) continue;
        std::vector<int> pos(lp.n, 0);
        while (true) {
            Word w(lp.n);
            for (int i = 0; i < lp.n; ++i) w[i] = (*choice[i])[pos[i]];
            lp.detectors.push_back(std::move(w));
            int i = lp.n - 1;
            while (i >= 0 && ++pos[i] == static_cast<int>(choice[i]->size())) pos[i--] = 0;
            if (i < 0) break;
        }
    }
    std::sort(lp.detectors.begin(), lp.detectors.end());
    lp.materialized = true;
}

// Generator search with the entries of P drawn from `entries`.
LinearCodePair search_detector_generator(const GaloisField& f, const std::vector<int>& entries, int qprime, int n, int k,
                           const std::vector<int>& d_set, std::uint64_t seed, int guarantee_field) {
    const int q = f.order();
    if (k < 1 || k > n) throw ValidationError("need 1 <= k <= n");
    if (n > 20) throw ValidationError("blocklength above 20 is not supported");
    if (!GaloisField::supported(qprime)) throw ValidationError("unsupported detector alphabet size");
    std::vector<int> d = d_set;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (int v : d)
        if (v < 0 || v >= qprime) throw ValidationError("detecting symbol outside the alphabet");
    const int tau = static_cast<int>(d.size());

    LinearCodePair lp;
    lp.q = q;
    lp.qprime = qprime;
    lp.n = n;
    lp.k = k;
    lp.d_set = d;
    lp.guarantee = detector_count_guarantee(guarantee_field, qprime, n, k, tau);
    const double per_basis = std::pow(tau, k) * std::pow(qprime - tau, n - k);
    const auto cands = basis_candidates(n, k);
    const int cells = k * (n - k);
    const double space = std::pow(static_cast<double>(entries.size()), cells);

    std::vector<std::vector<int>> p(k, std::vector<int>(n - k, entries[0])), best_p = p;
    std::vector<std::uint64_t> best_bases = bases_of(f, p, cands);
    auto consider = [&](const std::vector<std::vector<int>>& cand) {
        auto b = bases_of(f, cand, cands);
        if (b.size() > best_bases.size()) {
            best_bases = std::move(b);
            best_p = cand;
        }
        return best_bases.size() == cands.size();
    };
    if (space <= static_cast<double>(1 << 18)) {
        lp.exhaustive = true;
        std::vector<int> digit(cells, 0);
        while (true) {
            for (int c = 0; c < cells; ++c) p[c / (n - k)][c % (n - k)] = entries[digit[c]];
            if (consider(p)) break;
            int i = cells - 1;
            while (i >= 0 && ++digit[i] == static_cast<int>(entries.size())) digit[i--] = 0;
            if (i < 0) break;
        }
    } else {
        constexpr int kRestarts = 10000, kRetries = 5;
        for (int attempt = 0; attempt < kRetries; ++attempt) {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
            std::uniform_int_distribution<int> pick(0, static_cast<int>(entries.size()) - 1);
            for (int r = 0; r < kRestarts; ++r) {
                for (auto& row : p)
                    for (auto& v : row) v = entries[pick(rng)];
                if (consider(p)) break;
            }
            if (best_bases.size() * per_basis >= lp.guarantee) break;
        }
    }
    if (static_cast<double>(best_bases.size()) * per_basis + 1e-9 < lp.guarantee)
        throw ValidationError("generator search did not reach the detector guarantee");

    lp.generator.assign(k, std::vector<int>(n, 0));
    for (int i = 0; i < k; ++i) {
        lp.generator[i][i] = 1;
        for (int j = 0; j < n - k; ++j) lp.generator[i][k + j] = best_p[i][j];
    }
    lp.bases = std::move(best_bases);
    std::sort(lp.bases.begin(), lp.bases.end());
    lp.detector_count = static_cast<long long>(std::llround(static_cast<double>(lp.bases.size()) * per_basis));
    materialize(lp);
    return lp;
}

// Reduces x to the representative of x + C with zero systematic part; returns the tail.
Word coset_key(const GaloisField& f, const LinearCodePair& code, const Word& x) {
    Word r = x;
    for (int i = 0; i < code.k; ++i) {
        const int c = r[i];
        if (c == 0) continue;
        for (int j = 0; j < code.n; ++j) r[j] = f.sub(r[j], f.mul(c, code.generator[i][j]));
    }
    return Word(r.begin() + code.k, r.end());
}

}  // namespace

LinearCodePair lemma8_search(int q, int qprime, int n, int k, const std::vector<int>& d_set, std::uint64_t seed) {
    if (!GaloisField::supported(q)) throw ValidationError("unsupported field size " + std::to_string(q));
    GaloisField f(q);
    std::vector<int> all(q);
    for (int i = 0; i < q; ++i) all[i] = i;
    return search_detector_generator(f, all, qprime, n, k, d_set, seed, q);
}

bool is_detector(const LinearCodePair& pair, const Word& x) {
    if (static_cast<int>(x.size()) != pair.n) return false;
    std::uint64_t m = 0;
    for (int i = 0; i < pair.n; ++i) {
        if (x[i] < 0 || x[i] >= pair.qprime) return false;
        if (std::binary_search(pair.d_set.begin(), pair.d_set.end(), x[i])) m |= std::uint64_t{1} << i;
    }
    return std::binary_search(pair.bases.begin(), pair.bases.end(), m);
}

std::vector<Word> code_words(const LinearCodePair& pair) {
    GaloisField f(pair.q);
    std::vector<Word> out;
    for (const auto& y : all_words(pair.q, pair.k)) {
        Word c(pair.n, 0);
        for (int i = 0; i < pair.k; ++i)
            if (y[i])
                for (int j = 0; j < pair.n; ++j) c[j] = f.add(c[j], f.mul(y[i], pair.generator[i][j]));
        out.push_back(std::move(c));
    }
    return out;
}

CodebookPair theorem6_combine(const LinearCodePair& pair1, const LinearCodePair& pair2) {
    if (pair1.n != pair2.n) throw ValidationError("codes must share the blocklength");
    if (pair1.q != pair2.qprime || pair1.qprime != pair2.q)
        throw ValidationError("code fields and detector alphabets must be swapped between the pairs");
    if (!pair1.materialized || !pair2.materialized) throw ValidationError("detector sets are too large to combine");
    // the fullest coset, ties to the smallest key
    auto pick = [](const LinearCodePair& code, const std::vector<Word>& words) {
        GaloisField f(code.q);
        std::map<Word, std::vector<Word>> buckets;
        for (const auto& w : words) buckets[coset_key(f, code, w)].push_back(w);
        const std::vector<Word>* best = nullptr;
        for (const auto& [key, ws] : buckets)
            if (!best || ws.size() > best->size()) best = &ws;
        return best ? *best : std::vector<Word>{};
    };
    CodebookPair out;
    out.n = pair1.n;
    out.a = pick(pair1, pair2.detectors);
    out.b = pick(pair2, pair1.detectors);
    if (out.a.empty() || out.b.empty()) throw ValidationError("a detector set is empty");
    return out;
}

LinearConstruction construct_linear_pair(const ConfusionFamily& fam, const std::vector<int>& x1_sub,
                                         const std::vector<int>& x2_sub, int n, int k1, int k2,
                                         std::uint64_t seed) {
    fam.validate();
    const int q1 = static_cast<int>(x1_sub.size()), q2 = static_cast<int>(x2_sub.size());
    if (!GaloisField::supported(q1) || !GaloisField::supported(q2))
        throw ValidationError("sub-alphabet sizes must be supported field orders");
    const ConfusionFamily sub = restrict_family(fam, x1_sub, x2_sub);
    std::vector<int> d1, d2;
    for (int i = 0; i < q1; ++i)
        if (sub.g[i].is_edgeless()) d1.push_back(i);
    for (int j = 0; j < q2; ++j)
        if (sub.h[j].is_edgeless()) d2.push_back(j);
    LinearConstruction out;
    out.code1 = lemma8_search(q1, q2, n, k1, d2, seed);
    out.code2 = lemma8_search(q2, q1, n, k2, d1, seed + 1);
    CodebookPair local = theorem6_combine(out.code1, out.code2);
    out.pair.n = n;
    for (auto w : local.a) {
        for (int& v : w) v = x1_sub[v];
        out.pair.a.push_back(std::move(w));
    }
    for (auto w : local.b) {
        for (int& v : w) v = x2_sub[v];
        out.pair.b.push_back(std::move(w));
    }
    std::sort(out.pair.a.begin(), out.pair.a.end());
    std::sort(out.pair.b.begin(), out.pair.b.end());
    out.check = is_uniquely_decodable(out.pair, fam);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_clique_union_args(int q, int s) {
    if (!GaloisField::supported(q)) throw ValidationError("q must be a supported prime power");
    if (s != 1 && !is_power_of(q, s))
        throw ValidationError("s must be 1 or a subfield order of GF(q) so that a trace map onto GF(s) exists");
}

}  // namespace

ConfusionFamily clique_union_family(int q, int s) {
    check_clique_union_args(q, s);
    GaloisField f(q);
    ConfusionFamily fam;
    fam.g.push_back(Graph::edgeless(q));
    Graph g(q);
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
            if (s == 1 || f.trace(a, s) == f.trace(b, s)) g.add_edge(a, b);
    fam.g.push_back(std::move(g));
    for (int b = 0; b < q; ++b) fam.h.push_back(Graph::edgeless(2));
    return fam;
}

CliqueUnionConstruction theorem8_construct(int q, int s, int n, int k, std::uint64_t seed) {
    check_clique_union_args(q, s);
    if (k < 1 || k > n) throw ValidationError("need 1 <= k <= n");
    GaloisField f(q);
    CliqueUnionConstruction out;
    out.family = clique_union_family(q, s);
    // generator over GF(s) keeps the trace image a k-dimensional GF(s)-space
    std::vector<int> entries;
    if (s == 1) {
        for (int i = 0; i < q; ++i) entries.push_back(i);
    } else {
        entries = f.subfield(s);
    }
    out.code = search_detector_generator(f, entries, 2, n, k, {0}, seed, s == 1 ? q : s);
    if (!out.code.materialized) throw ValidationError("detector set too large");
    const auto c = code_words(out.code);
    std::vector<Word> shifts{Word(n, 0)};
    if (s > 1) {
        int w = 1;
        while (f.trace(w, s) != 1) ++w;
        // coset representatives of GF(s)^n modulo the trace image, lifted through x -> x w
        shifts.clear();
        std::vector<int> sub = f.subfield(s);
        for (const auto& u : all_words(s, n - k)) {
            Word v(n, 0);
            for (int j = 0; j < n - k; ++j) v[k + j] = f.mul(sub[u[j]], w);
            shifts.push_back(std::move(v));
        }
    }
    out.pair.n = n;
    out.pair.a = out.code.detectors;
    for (const auto& v : shifts)
        for (const auto& cw : c) {
            Word b(n);
            for (int j = 0; j < n; ++j) b[j] = f.add(v[j], cw[j]);
            out.pair.b.push_back(std::move(b));
        }
    std::sort(out.pair.b.begin(), out.pair.b.end());
    out.check = is_uniquely_decodable(out.pair, out.family);
    const double x = static_cast<double>(k) / n;
    out.sum_rate = out.pair.r1() + out.pair.r2();
    out.formula_rate = x * std::log2(q) + (1.0 - x) * std::log2(s) + binary_entropy(x);
    out.capacity = std::log2(static_cast<double>(q + s));
    return out;
}

}  // namespace twzec
