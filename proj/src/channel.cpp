#include "twzec/channel.hpp"

#include <cmath>
#include <sstream>

namespace twzec {

using nlohmann::json;

void ConfusionFamily::validate() const {
    const int m1 = x1_size(), m2 = x2_size();
    if (m1 < 1 || m2 < 1) throw ValidationError("family needs nonempty alphabets");
    for (const auto& gi : g)
        if (gi.size() != m2) throw ValidationError("every G graph must have |X2| vertices");
    for (const auto& hj : h)
        if (hj.size() != m1) throw ValidationError("every H graph must have |X1| vertices");
}

Channel::Channel(int x1, int x2, int y1, int y2, std::vector<double> prob)
    : x1_(x1), x2_(x2), y1_(y1), y2_(y2), prob_(std::move(prob)) {
    if (x1 < 1 || x2 < 1 || y1 < 1 || y2 < 1) throw ValidationError("alphabet sizes must be positive");
    if (prob_.size() != static_cast<std::size_t>(x1) * x2 * y1 * y2)
        throw ValidationError("probability table has the wrong number of entries");
    for (int a = 0; a < x1; ++a)
        for (int b = 0; b < x2; ++b) {
            double s = 0.0;
            for (int c = 0; c < y1; ++c)
                for (int d = 0; d < y2; ++d) {
                    double v = p(a, b, c, d);
                    if (!std::isfinite(v) || v < 0.0)
                        throw ValidationError("negative or non-finite probability at x1=" + std::to_string(a) +
                                              " x2=" + std::to_string(b));
                    s += v;
                }
            if (std::abs(s - 1.0) > 1e-12)
                throw ValidationError("row x1=" + std::to_string(a) + " x2=" + std::to_string(b) + " sums to " +
                                      std::to_string(s));
        }
}

Marginal marginal_y1(const Channel& ch) {
    Marginal m{ch.x1_size(), ch.x2_size(), ch.y1_size(), {}};
    m.v.assign(static_cast<std::size_t>(m.x1) * m.x2 * m.y, 0.0);
    for (int a = 0; a < m.x1; ++a)
        for (int b = 0; b < m.x2; ++b)
            for (int c = 0; c < ch.y1_size(); ++c)
                for (int d = 0; d < ch.y2_size(); ++d) m.at(a, b, c) += ch.p(a, b, c, d);
    return m;
}

Marginal marginal_y2(const Channel& ch) {
    Marginal m{ch.x1_size(), ch.x2_size(), ch.y2_size(), {}};
    m.v.assign(static_cast<std::size_t>(m.x1) * m.x2 * m.y, 0.0);
    for (int a = 0; a < m.x1; ++a)
        for (int b = 0; b < m.x2; ++b)
            for (int c = 0; c < ch.y1_size(); ++c)
                for (int d = 0; d < ch.y2_size(); ++d) m.at(a, b, d) += ch.p(a, b, c, d);
    return m;
}

namespace {

bool share_output(const Marginal& m, int a1, int b1, int a2, int b2) {
    for (int y = 0; y < m.y; ++y)
        if (m.at(a1, b1, y) > kSupportThreshold && m.at(a2, b2, y) > kSupportThreshold) return true;
    return false;
}

}  // namespace

ConfusionFamily derive_confusion(const Channel& ch) {
    const Marginal m1 = marginal_y1(ch), m2 = marginal_y2(ch);
    ConfusionFamily fam;
    for (int a = 0; a < ch.x1_size(); ++a) {
        Graph g(ch.x2_size());
        for (int b = 0; b < ch.x2_size(); ++b)
            for (int b2 = b + 1; b2 < ch.x2_size(); ++b2)
                if (share_output(m1, a, b, a, b2)) g.add_edge(b, b2);
        fam.g.push_back(std::move(g));
    }
    for (int b = 0; b < ch.x2_size(); ++b) {
        Graph h(ch.x1_size());
        for (int a = 0; a < ch.x1_size(); ++a)
            for (int a2 = a + 1; a2 < ch.x1_size(); ++a2)
                if (share_output(m2, a, b, a2, b)) h.add_edge(a, a2);
        fam.h.push_back(std::move(h));
    }
    return fam;
}

bool same_adjacency(const Channel& a, const Channel& b) {
    if (a.x1_size() != b.x1_size() || a.x2_size() != b.x2_size())
        throw ValidationError("same_adjacency needs equal input alphabets");
    return derive_confusion(a) == derive_confusion(b);
}

Channel canonical_channel(const ConfusionFamily& fam) {
    fam.validate();
    const int m1 = fam.x1_size(), m2 = fam.x2_size();
    std::vector<std::vector<std::vector<int>>> gc(m1), hc(m2);
    int y1 = 1, y2 = 1;
    for (int a = 0; a < m1; ++a) {
        gc[a] = enumerate_cliques(fam.g[a], true);
        y1 = std::max(y1, static_cast<int>(gc[a].size()));
    }
    for (int b = 0; b < m2; ++b) {
        hc[b] = enumerate_cliques(fam.h[b], true);
        y2 = std::max(y2, static_cast<int>(hc[b].size()));
    }
    // P1(y1|a,b): uniform over maximal cliques of G_a containing b
    auto split = [](const std::vector<std::vector<int>>& cliques, int v, int ysize) {
        std::vector<double> out(ysize, 0.0);
        int cnt = 0;
        for (const auto& c : cliques) cnt += std::find(c.begin(), c.end(), v) != c.end();
        for (std::size_t i = 0; i < cliques.size(); ++i)
            if (std::find(cliques[i].begin(), cliques[i].end(), v) != cliques[i].end()) out[i] = 1.0 / cnt;
        return out;
    };
    std::vector<double> prob(static_cast<std::size_t>(m1) * m2 * y1 * y2, 0.0);
    for (int a = 0; a < m1; ++a)
        for (int b = 0; b < m2; ++b) {
            auto p1 = split(gc[a], b, y1);
            auto p2 = split(hc[b], a, y2);
            for (int c = 0; c < y1; ++c)
                for (int d = 0; d < y2; ++d)
                    prob[((static_cast<std::size_t>(a) * m2 + b) * y1 + c) * y2 + d] = p1[c] * p2[d];
        }
    return Channel(m1, m2, y1, y2, std::move(prob));
}

ConfusionFamily restrict_family(const ConfusionFamily& fam, const std::vector<int>& x1_keep,
                                const std::vector<int>& x2_keep) {
    ConfusionFamily out;
    for (int a : x1_keep) out.g.push_back(induced_subgraph(fam.g.at(a), x2_keep));
    for (int b : x2_keep) out.h.push_back(induced_subgraph(fam.h.at(b), x1_keep));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

int positive_int(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) throw ValidationError(std::string("missing integer field '") + key + "'");
    int v = doc[key].get<int>();
    if (v < 1) throw ValidationError(std::string("field '") + key + "' must be positive");
    return v;
}

Channel parse_table(const json& doc) {
    const int x1 = positive_int(doc, "x1"), x2 = positive_int(doc, "x2");
    const int y1 = positive_int(doc, "y1"), y2 = positive_int(doc, "y2");
    const json& p = doc.at("p");
    auto expect = [](const json& arr, int n, const char* what) {
        if (!arr.is_array() || static_cast<int>(arr.size()) != n)
            throw ValidationError(std::string("dimension mismatch in 'p' along ") + what);
    };
    std::vector<double> prob;
    expect(p, x1, "x1");
    for (const auto& pa : p) {
        expect(pa, x2, "x2");
        for (const auto& pb : pa) {
            expect(pb, y1, "y1");
            for (const auto& pc : pb) {
                expect(pc, y2, "y2");
                for (const auto& v : pc) {
                    if (!v.is_number()) throw ValidationError("non-numeric probability entry");
                    prob.push_back(v.get<double>());
                }
            }
        }
    }
    return Channel(x1, x2, y1, y2, std::move(prob));
}

ConfusionFamily parse_family(const json& doc) {
    const int x1 = positive_int(doc, "x1"), x2 = positive_int(doc, "x2");
    auto graphs = [](const json& arr, int count, int n, const char* what) {
        if (!arr.is_array() || static_cast<int>(arr.size()) != count)
            throw ValidationError(std::string("'") + what + "' must list one graph per input symbol");
        std::vector<Graph> out;
        for (const auto& m : arr) {
            std::vector<std::vector<int>> mat;
            try {
                mat = m.get<std::vector<std::vector<int>>>();
            } catch (const json::exception&) {
                throw ValidationError(std::string("malformed adjacency matrix in '") + what + "'");
            }
            if (static_cast<int>(mat.size()) != n)
                throw ValidationError(std::string("graph in '") + what + "' has the wrong vertex count");
            try {
                out.push_back(Graph::from_matrix(mat));
            } catch (const GraphError& e) {
                throw ValidationError(e.what());
            }
        }
        return out;
    };
    ConfusionFamily fam;
    fam.g = graphs(doc.at("G"), x1, x2, "G");
    fam.h = graphs(doc.at("H"), x2, x1, "H");
    fam.validate();
    return fam;
}

}  // namespace

ChannelInput parse_channel_json(const json& doc, ChannelFormat format) {
    if (!doc.is_object()) throw ValidationError("channel document must be a JSON object");
    try {
        if (format == ChannelFormat::automatic)
            format = doc.contains("p") ? ChannelFormat::probability_table : ChannelFormat::graph_family;
        if (format == ChannelFormat::probability_table) return parse_table(doc);
        return parse_family(doc);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed channel document: ") + e.what());
    }
}

ChannelInput parse_channel_text(std::string_view text, ChannelFormat format) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    return parse_channel_json(doc, format);
}

ChannelInput parse_channel(std::istream& in, ChannelFormat format) {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_channel_text(ss.str(), format);
}

json channel_to_json(const Channel& ch) {
    json p = json::array();
    for (int a = 0; a < ch.x1_size(); ++a) {
        json pa = json::array();
        for (int b = 0; b < ch.x2_size(); ++b) {
            json pb = json::array();
            for (int c = 0; c < ch.y1_size(); ++c) {
                json pc = json::array();
                for (int d = 0; d < ch.y2_size(); ++d) pc.push_back(ch.p(a, b, c, d));
                pb.push_back(pc);
            }
            pa.push_back(pb);
        }
        p.push_back(pa);
    }
    return {{"x1", ch.x1_size()}, {"x2", ch.x2_size()}, {"y1", ch.y1_size()}, {"y2", ch.y2_size()}, {"p", p}};
}

json family_to_json(const ConfusionFamily& fam) {
    json g = json::array(), h = json::array();
    for (const auto& gi : fam.g) g.push_back(gi.matrix());
    for (const auto& hj : fam.h) h.push_back(hj.matrix());
    return {{"x1", fam.x1_size()}, {"x2", fam.x2_size()}, {"G", g}, {"H", h}};
}

ConfusionFamily family_of(const ChannelInput& in) {
    if (const auto* ch = std::get_if<Channel>(&in)) return derive_confusion(*ch);
    return std::get<ConfusionFamily>(in);
}

Channel channel_of(const ChannelInput& in) {
    if (const auto* ch = std::get_if<Channel>(&in)) return *ch;
    return canonical_channel(std::get<ConfusionFamily>(in));
}

}  // namespace twzec
