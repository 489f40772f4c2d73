#pragma once

#include "twzec/channel.hpp"
#include "twzec/codebook.hpp"
#include "twzec/gf.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace twzec {

// ---------------------------------------------------------------------------
// unique decodability

struct DecodabilityCheck {
    bool ok = true;
    // On failure: side 1 means two words of B are confused at Alice given `fixed` in A,
    // side 2 means two words of A are confused at Bob given `fixed` in B.
    int side = 0;
    Word fixed, first, second;
    std::string describe() const;
};

/// Throws ValidationError on wrong lengths, out-of-range symbols or duplicate words.
void validate_codebook(const CodebookPair& pair, const ConfusionFamily& fam);

DecodabilityCheck is_uniquely_decodable(const CodebookPair& pair, const ConfusionFamily& fam);

/// Projection of `code` onto the coordinates where x lies in d_set is injective.
bool detecting_vector_check(const Word& x, const std::vector<Word>& code, const std::vector<int>& d_set);

// ---------------------------------------------------------------------------
// exhaustive search at small blocklength

inline constexpr int kExhaustiveWordLimit = 64;

struct ExhaustiveResult {
    CodebookPair pair;
    long long product = 0;
    bool complete = true;  // false when the node budget ran out (best found so far)
    long long nodes = 0;
};

/// Maximizes |A||B| over uniquely decodable pairs of blocklength n.
ExhaustiveResult exhaustive_best_pair(const ConfusionFamily& fam, int n, long long node_budget = 5'000'000);

// ---------------------------------------------------------------------------
// linear codes with detecting vectors

struct LinearCodePair {
    int q = 2;       // code field
    int qprime = 2;  // detector alphabet
    int n = 0, k = 0;
    std::vector<std::vector<int>> generator;  // k x n over GF(q), systematic [I | P]
    std::vector<int> d_set;                   // detecting symbols in GF(q')
    std::vector<std::uint64_t> bases;         // k-subsets of columns of full rank, as masks
    long long detector_count = 0;
    bool materialized = false;
    std::vector<Word> detectors;  // lexicographic, filled when detector_count <= kDetectorLimit
    double guarantee = 0.0;       // C(n,k) tau^k (q'-tau)^(n-k) prod_i (1 - q^-i)
    bool exhaustive = false;
};

inline constexpr long long kDetectorLimit = 1 << 20;

double detector_count_guarantee(int q, int qprime, int n, int k, int tau);

/// Generator search: exhaustive over systematic generators when there are at
/// most 2^18 of them, otherwise random restarts. Throws ValidationError if the
/// guarantee cannot be met within the retry cap.
LinearCodePair lemma8_search(int q, int qprime, int n, int k, const std::vector<int>& d_set,
                             std::uint64_t seed = 0);

bool is_detector(const LinearCodePair& pair, const Word& x);
std::vector<Word> code_words(const LinearCodePair& pair);

/// A = detectors of the second code inside the fullest coset of the first code,
/// B = detectors of the first code inside the fullest coset of the second code.
/// pair1: code over GF(q1) with detectors over GF(q2); pair2: the reverse.
CodebookPair theorem6_combine(const LinearCodePair& pair1, const LinearCodePair& pair2);

struct LinearConstruction {
    CodebookPair pair;  // words over the original alphabets
    LinearCodePair code1, code2;
    DecodabilityCheck check;
};

/// Builds the combined pair on the sub-alphabets (identified with GF(q1), GF(q2)
/// in index order) and verifies it against the full family.
LinearConstruction construct_linear_pair(const ConfusionFamily& fam, const std::vector<int>& x1_sub,
                                         const std::vector<int>& x2_sub, int n, int k1, int k2,
                                         std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// clique-union construction

/// [K_q complement, s disjoint K_m; edgeless H], the cliques of G_1 being the fibers of the trace.
ConfusionFamily clique_union_family(int q, int s);

struct CliqueUnionConstruction {
    CodebookPair pair;
    ConfusionFamily family;
    LinearCodePair code;
    DecodabilityCheck check;
    double sum_rate = 0.0;      // log(|A||B|)/n
    double formula_rate = 0.0;  // (k/n) log q + (1-k/n) log s + h(k/n)
    double capacity = 0.0;      // log(q+s)
};

CliqueUnionConstruction theorem8_construct(int q, int s, int n, int k, std::uint64_t seed = 0);

}  // namespace twzec
