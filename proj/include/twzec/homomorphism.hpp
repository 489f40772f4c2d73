#pragma once

#include "twzec/channel.hpp"
#include "twzec/codebook.hpp"

#include <optional>

namespace twzec {

/// phi acts on X1 (indexes G, vertices of H); psi acts on X2.
struct DualHomomorphism {
    std::vector<int> phi;
    std::vector<int> psi;
    bool operator==(const DualHomomorphism&) const = default;
};

/// Edges of G_i go to edges of G'_{phi(i)} under psi, and edges of H_j go to
/// edges of H'_{psi(j)} under phi.
bool verify_dual_homomorphism(const DualHomomorphism& d, const ConfusionFamily& src, const ConfusionFamily& dst);

ConfusionFamily complement_family(const ConfusionFamily& fam);

inline constexpr int kHomomorphismAlphabetLimit = 6;

/// Backtracking search for a dual homomorphism between the complemented
/// families, i.e. a witness of src <= dst.
std::optional<DualHomomorphism> find_dual_homomorphism(const ConfusionFamily& src, const ConfusionFamily& dst);

/// Symbol-wise image of both codebooks.
CodebookPair transport_codebook(const DualHomomorphism& d, const CodebookPair& pair);

}  // namespace twzec
