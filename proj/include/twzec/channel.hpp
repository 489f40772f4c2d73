#pragma once

#include "twzec/graph.hpp"

#include "json.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace twzec {

/// An entry counts as positive iff it exceeds this.
inline constexpr double kSupportThreshold = 1e-12;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// [G_0..G_{|X1|-1}; H_0..H_{|X2|-1}]: G_x1 lives on X2, H_x2 lives on X1.
struct ConfusionFamily {
    std::vector<Graph> g;
    std::vector<Graph> h;

    int x1_size() const { return static_cast<int>(g.size()); }
    int x2_size() const { return static_cast<int>(h.size()); }
    void validate() const;
    bool operator==(const ConfusionFamily& o) const { return g == o.g && h == o.h; }
};

/// P(y1,y2|x1,x2), stored flat in (x1,x2,y1,y2) row-major order.
class Channel {
public:
    Channel() = default;
    Channel(int x1, int x2, int y1, int y2, std::vector<double> prob);

    int x1_size() const { return x1_; }
    int x2_size() const { return x2_; }
    int y1_size() const { return y1_; }
    int y2_size() const { return y2_; }

    std::size_t index(int a, int b, int c, int d) const {
        return ((static_cast<std::size_t>(a) * x2_ + b) * y1_ + c) * y2_ + d;
    }
    double p(int a, int b, int c, int d) const { return prob_[index(a, b, c, d)]; }
    const std::vector<double>& data() const { return prob_; }

    bool operator==(const Channel& o) const {
        return x1_ == o.x1_ && x2_ == o.x2_ && y1_ == o.y1_ && y2_ == o.y2_ && prob_ == o.prob_;
    }

private:
    int x1_ = 0, x2_ = 0, y1_ = 0, y2_ = 0;
    std::vector<double> prob_;
};

/// Conditional table P(y|x1,x2) for one receiver.
struct Marginal {
    int x1 = 0, x2 = 0, y = 0;
    std::vector<double> v;
    double at(int a, int b, int c) const { return v[(static_cast<std::size_t>(a) * x2 + b) * y + c]; }
    double& at(int a, int b, int c) { return v[(static_cast<std::size_t>(a) * x2 + b) * y + c]; }
};

Marginal marginal_y1(const Channel& ch);
Marginal marginal_y2(const Channel& ch);

ConfusionFamily derive_confusion(const Channel& ch);
bool same_adjacency(const Channel& a, const Channel& b);

/// Outputs indexed by maximal cliques of the opposite graph, mass split
/// uniformly over the cliques containing each vertex.
Channel canonical_channel(const ConfusionFamily& fam);

ConfusionFamily restrict_family(const ConfusionFamily& fam, const std::vector<int>& x1_keep,
                                const std::vector<int>& x2_keep);

// ---------------------------------------------------------------------------
// JSON documents

enum class ChannelFormat { automatic, probability_table, graph_family };

using ChannelInput = std::variant<Channel, ConfusionFamily>;

ChannelInput parse_channel(std::istream& in, ChannelFormat format = ChannelFormat::automatic);
ChannelInput parse_channel_text(std::string_view text, ChannelFormat format = ChannelFormat::automatic);
ChannelInput parse_channel_json(const nlohmann::json& doc, ChannelFormat format = ChannelFormat::automatic);

nlohmann::json channel_to_json(const Channel& ch);
nlohmann::json family_to_json(const ConfusionFamily& fam);

ConfusionFamily family_of(const ChannelInput& in);
/// The channel itself, or the canonical representative of a family.
Channel channel_of(const ChannelInput& in);

}  // namespace twzec
