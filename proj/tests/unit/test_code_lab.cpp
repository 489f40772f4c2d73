#include "doctest.h"
#include "fixtures.hpp"
#include "twzec/code_lab.hpp"
#include "twzec/inner_bounds.hpp"
#include "twzec/one_shot.hpp"

#include <cmath>
#include <set>

using namespace twzec;

namespace {

ConfusionFamily stored_codebook_family() { return std::get<ConfusionFamily>(fixtures::load("example3.json")); }

const std::vector<Word> kStoredA{{0, 0, 0}, {1, 1, 1}, {0, 1, 2}};

}  // namespace

TEST_CASE("unique decodability") {
    ConfusionFamily f = fixtures::delta_family();
    CHECK(is_uniquely_decodable(CodebookPair{2, {{0, 1}}, {{1, 0}}}, f).ok);

    CodebookPair ex3{3, kStoredA, {{0, 1, 0}}};
    CHECK(is_uniquely_decodable(ex3, stored_codebook_family()).ok);

    // b0, b1 are adjacent in G_0 and G_1 of the delta channel
    DecodabilityCheck bad = is_uniquely_decodable(CodebookPair{1, {{0}}, {{0}, {1}}}, f);
    CHECK_FALSE(bad.ok);
    CHECK(bad.side == 1);
    CHECK(bad.fixed == Word{0});
    CHECK_FALSE(bad.describe().empty());

    CHECK_THROWS_AS(validate_codebook(CodebookPair{1, {{0}, {0}}, {{0}}}, f), ValidationError);
    CHECK_THROWS_AS(validate_codebook(CodebookPair{1, {{3}}, {{0}}}, f), ValidationError);
    CHECK_THROWS_AS(validate_codebook(CodebookPair{2, {{0}}, {{0, 1}}}, f), ValidationError);
}

TEST_CASE("detecting vectors") {
    std::vector<Word> code{{0, 1, 2}, {1, 1, 2}, {2, 0, 0}};
    CHECK(detecting_vector_check({1, 1, 1}, code, {1}));
    CHECK_FALSE(detecting_vector_check({1, 1, 1}, {{0, 1, 2}, {0, 1, 2}}, {1}));
    CHECK_FALSE(detecting_vector_check({0, 1, 0}, kStoredA, {1}));
    CHECK_FALSE(detecting_vector_check({0, 0, 0}, code, {1}));
    CHECK(detecting_vector_check({0, 0, 0}, {{1, 2, 0}}, {1}));
}

TEST_CASE("exhaustive search") {
    ConfusionFamily ex1 = fixtures::delta_family();
    CHECK(exhaustive_best_pair(ex1, 1).product == 2);
    ExhaustiveResult two = exhaustive_best_pair(ex1, 2);
    CHECK(two.product == 4);
    CHECK(two.complete);
    CHECK(is_uniquely_decodable(two.pair, ex1).ok);
    ExhaustiveResult three = exhaustive_best_pair(ex1, 3);
    CHECK(three.product == 9);
    CHECK(is_uniquely_decodable(three.pair, ex1).ok);

    CHECK(exhaustive_best_pair(fixtures::binary_multiplying(), 2).product >= 4);
    CHECK_THROWS(exhaustive_best_pair(ex1, 4));  // 81 words exceed the limit

    std::mt19937_64 rng(31);
    for (int t = 0; t < 15; ++t) {
        ConfusionFamily f = fixtures::random_family(rng, 1 + t % 4, 1 + (t / 4) % 4);
        CHECK(exhaustive_best_pair(f, 1).product == independence_product(f).pi);
    }
}

TEST_CASE("generator search with many detecting vectors") {
    LinearCodePair full = lemma8_search(2, 2, 3, 3, {1});
    CHECK(full.detector_count == 1);

    LinearCodePair p = lemma8_search(2, 2, 3, 2, {1});
    CHECK(p.detector_count >= 1);
    CHECK(p.detector_count >= p.guarantee);
    CHECK(p.guarantee == doctest::Approx(3 * 0.288788).epsilon(1e-6));
    CHECK(p.exhaustive);

    LinearCodePair q4 = lemma8_search(4, 2, 3, 2, {1});
    CHECK(q4.detector_count >= q4.guarantee);
    REQUIRE(q4.materialized);
    for (const Word& x : q4.detectors) {
        CHECK(is_detector(q4, x));
        CHECK(detecting_vector_check(x, code_words(q4), q4.d_set));
    }
    CHECK(code_words(q4).size() == 16);

    CHECK(detector_count_guarantee(2, 2, 3, 2, 1) == doctest::Approx(0.866364).epsilon(1e-6));
    CHECK_THROWS(lemma8_search(6, 2, 3, 2, {1}));
    CHECK_THROWS(lemma8_search(2, 2, 3, 4, {1}));
}

TEST_CASE("detectors survive coset shifts") {
    LinearCodePair p = lemma8_search(3, 2, 4, 2, {1});
    std::vector<Word> c = code_words(p);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> sym(0, 2);
    GaloisField f(3);
    for (int t = 0; t < 5; ++t) {
        Word v(4);
        for (int& s : v) s = sym(rng);
        std::vector<Word> shifted;
        for (const Word& w : c) {
            Word s(4);
            for (int i = 0; i < 4; ++i) s[i] = f.add(w[i], v[i]);
            shifted.push_back(s);
        }
        for (const Word& x : p.detectors) CHECK(detecting_vector_check(x, shifted, p.d_set));
    }
}

TEST_CASE("linear construction on the delta channel and the binary multiplying family") {
    LinearConstruction lc = construct_linear_pair(fixtures::delta_family(), {1, 2}, {0, 1}, 9, 6, 6);
    CHECK(lc.check.ok);
    CHECK(lc.pair.a.size() == 9);
    CHECK(lc.pair.b.size() == 9);
    const double L = 2 * linear_code_L(0.5, 2, 2, 1, 1).value;
    CHECK(lc.pair.r1() + lc.pair.r2() <= L + 1e-9);

    LinearConstruction bm = construct_linear_pair(fixtures::binary_multiplying(), {0, 1}, {0, 1}, 9, 6, 6);
    CHECK(bm.check.ok);
    CHECK(bm.pair.r1() + bm.pair.r2() > 0.5);

    // every symbol detecting, full-rank codes: the whole space on both sides
    ConfusionFamily empty{std::vector<Graph>(2, Graph::edgeless(2)), std::vector<Graph>(2, Graph::edgeless(2))};
    LinearConstruction all = construct_linear_pair(empty, {0, 1}, {0, 1}, 3, 3, 3);
    CHECK(all.check.ok);
    CHECK(all.pair.a.size() == 8);
    CHECK(all.pair.b.size() == 8);
}

TEST_CASE("clique-union construction") {
    CliqueUnionConstruction cu = theorem8_construct(4, 2, 6, 4);
    CHECK(cu.check.ok);
    CHECK(cu.pair.b.size() == 1024);  // s^(n-k) q^k
    CHECK(cu.pair.a.size() >= 10);
    CHECK(cu.capacity == doctest::Approx(std::log2(6.0)));
    CHECK(cu.sum_rate <= cu.capacity + 1e-9);

    CliqueUnionConstruction edgeless = theorem8_construct(2, 2, 3, 2);
    CHECK(edgeless.check.ok);
    CHECK(edgeless.pair.b.size() == 8);
    CHECK(edgeless.family.g[1].is_edgeless());

    CliqueUnionConstruction single = theorem8_construct(2, 1, 3, 2);
    CHECK(single.check.ok);
    CHECK(single.pair.b.size() == 4);

    CHECK_THROWS(theorem8_construct(4, 3, 6, 4));

    ConfusionFamily fam = clique_union_family(4, 2);
    CHECK(fam.g[0] == Graph::edgeless(4));
    CHECK(fam.g[1].edge_count() == 2);
}

TEST_CASE("finite fields") {
    GaloisField f2(2);
    CHECK(f2.add(1, 1) == 0);
    GaloisField f4(4);
    std::set<int> image;
    int kernel = 0;
    for (int x = 0; x < 4; ++x) {
        int t = f4.trace(x, 2);
        CHECK(t == f4.add(x, f4.mul(x, x)));
        image.insert(t);
        kernel += t == 0;
    }
    CHECK(image == std::set<int>{0, 1});
    CHECK(kernel == 2);
    GaloisField f9(9);
    CHECK(f9.element_order(f9.primitive_element()) == 8);
    CHECK(f9.subfield(3).size() == 3);
    CHECK_THROWS_AS(GaloisField(6), FieldError);
    CHECK(is_power_of(16, 4));
    CHECK_FALSE(is_power_of(8, 4));
}
