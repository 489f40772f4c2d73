#pragma once

#include <cmath>
#include <vector>

namespace twzec {

using Word = std::vector<int>;

/// A pair of codebooks of common blocklength n.
struct CodebookPair {
    int n = 0;
    std::vector<Word> a;  // words over X1
    std::vector<Word> b;  // words over X2

    double r1() const { return n > 0 && !a.empty() ? std::log2(static_cast<double>(a.size())) / n : 0.0; }
    double r2() const { return n > 0 && !b.empty() ? std::log2(static_cast<double>(b.size())) / n : 0.0; }
    bool operator==(const CodebookPair&) const = default;
};

}  // namespace twzec
