#include "doctest.h"
#include "fixtures.hpp"
#include "twzec/outer_bounds.hpp"

#include <cmath>

using namespace twzec;

namespace {

// Y1 = X2 and Y2 = X1
Channel noiseless(int q) {
    std::vector<double> p(static_cast<std::size_t>(q) * q * q * q, 0.0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) p[((static_cast<std::size_t>(a) * q + b) * q + b) * q + a] = 1.0;
    return Channel(q, q, q, q, p);
}

ProductDistribution uniform(int m1, int m2) { return {Vec(m1, 1.0 / m1), Vec(m2, 1.0 / m2)}; }

// brute force l over every (S,T) satisfying the dual clique condition
double brute_l(const ConfusionFamily& f, const ProductDistribution& d, double lambda) {
    double best = 0.0;
    for (unsigned s = 1; s < (1u << f.x1_size()); ++s)
        for (unsigned t = 1; t < (1u << f.x2_size()); ++t) {
            std::vector<int> sv, tv;
            double ps = 0.0, pt = 0.0;
            for (int i = 0; i < f.x1_size(); ++i)
                if (s >> i & 1) sv.push_back(i), ps += d.p1[i];
            for (int j = 0; j < f.x2_size(); ++j)
                if (t >> j & 1) tv.push_back(j), pt += d.p2[j];
            if (!is_dual_clique_pair(f, sv, tv) || ps <= 0.0 || pt <= 0.0) continue;
            best = std::max(best, std::pow(ps, lambda) * std::pow(pt, 1.0 - lambda));
        }
    return best;
}

}  // namespace

TEST_CASE("epsilon on the noiseless binary channel") {
    Channel ch = noiseless(2);
    CHECK(epsilon_lambda(ch, uniform(2, 2), 0.5) == doctest::Approx(1.0));
    CHECK(epsilon_lambda(ch, uniform(2, 2), 1.0) == doctest::Approx(1.0));
    CHECK(epsilon_lambda(ch, {{1.0, 0.0}, {0.5, 0.5}}, 1.0) == doctest::Approx(0.0));
    CHECK(epsilon_lambda(ch, {{1.0, 0.0}, {0.5, 0.5}}, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("epsilon: two routes agree on the delta channel") {
    Channel ch = fixtures::delta_channel();
    for (double lambda : {0.0, 0.3, 0.5, 1.0}) {
        ProductDistribution d{{0.2, 0.5, 0.3}, {0.35, 0.65}};
        CHECK(std::abs(epsilon_lambda(ch, d, lambda) - epsilon_lambda_joint(ch, d, lambda)) <= 1e-12);
        CHECK(std::abs(epsilon_lambda(ch, uniform(3, 2), lambda) - epsilon_lambda_joint(ch, uniform(3, 2), lambda)) <= 1e-12);
    }
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(validate_distribution({{0.5, 0.6}, {1.0}}, 2, 1), ValidationError);
    CHECK_THROWS_AS(validate_distribution({{1.0}, {1.0}}, 2, 1), ValidationError);
    CHECK_NOTHROW(validate_distribution({{0.5, 0.5}, {1.0}}, 2, 1));
}

TEST_CASE("l lambda") {
    ConfusionFamily empty{std::vector<Graph>(3, Graph::edgeless(2)), std::vector<Graph>(2, Graph::edgeless(3))};
    ProductDistribution d{{0.2, 0.7, 0.1}, {0.4, 0.6}};
    CHECK(l_lambda(empty, d, 0.3) == doctest::Approx(std::pow(0.7, 0.3) * std::pow(0.6, 0.7)));

    CHECK(l_lambda(fixtures::binary_multiplying(), uniform(2, 2), 0.5) == doctest::Approx(1.0 / std::sqrt(2.0)));

    ConfusionFamily ex1 = fixtures::delta_family();
    double l = l_lambda(ex1, uniform(3, 2), 0.5);
    CHECK(l >= std::sqrt(2.0 / 3 * 0.5) - 1e-12);
    CHECK(l == doctest::Approx(brute_l(ex1, uniform(3, 2), 0.5)));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        ConfusionFamily f = fixtures::random_family(rng, 3, 3, 0.5);
        ProductDistribution r{{0.1, 0.3, 0.6}, {0.5, 0.25, 0.25}};
        CHECK(l_lambda(f, r, 0.4) == doctest::Approx(brute_l(f, r, 0.4)).epsilon(1e-12));
    }
}

TEST_CASE("max_neglog_l") {
    ConfusionFamily full{std::vector<Graph>(2, Graph::complete(3)), std::vector<Graph>(3, Graph::complete(2))};
    CHECK(max_neglog_l(full, 0.5).value == doctest::Approx(0.0));

    // grid oracle on the binary multiplying family
    ConfusionFamily bm = fixtures::binary_multiplying();
    double grid_best = 0.0;
    const int steps = 400;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j) {
            const double a = static_cast<double>(i) / steps, b = static_cast<double>(j) / steps;
            ProductDistribution d{{a, 1 - a}, {b, 1 - b}};
            grid_best = std::max(grid_best, -std::log2(l_lambda(bm, d, 0.5)));
        }
    Maximum m = max_neglog_l(bm, 0.5);
    CHECK(m.value >= grid_best - 1e-9);
    // the optimum sits on a kink, so the grid lags it linearly in the step
    CHECK(m.value - grid_best <= 2e-3);
    const double golden = (3 - std::sqrt(5.0)) / 2;
    CHECK(m.argmax.p1[0] == doctest::Approx(golden).epsilon(1e-6));
    CHECK(m.argmax.p2[0] == doctest::Approx(golden).epsilon(1e-6));
    CHECK(m.value == doctest::Approx(-std::log2(l_lambda(bm, m.argmax, 0.5))).epsilon(1e-9));
}

TEST_CASE("max_neglog_l at the endpoints matches a grid that includes the faces") {
    // at lambda = 0 the x1 law matters only through its support
    std::mt19937_64 rng(31);
    const int steps = 12;
    for (int t = 0; t < 12; ++t) {
        ConfusionFamily f = fixtures::random_family(rng, 3, 3, 0.5);
        for (double lambda : {0.0, 1.0}) {
            double grid_best = 0.0;
            for (int a = 0; a <= steps; ++a)
                for (int b = 0; a + b <= steps; ++b)
                    for (int c = 0; c <= steps; ++c)
                        for (int e = 0; c + e <= steps; ++e) {
                            ProductDistribution d{{double(a) / steps, double(b) / steps, double(steps - a - b) / steps},
                                                  {double(c) / steps, double(e) / steps, double(steps - c - e) / steps}};
                            grid_best = std::max(grid_best, -std::log2(l_lambda(f, d, lambda)));
                        }
            CHECK(max_neglog_l(f, lambda).value >= grid_best - 1e-9);
        }
    }
}

TEST_CASE("max_epsilon on a one-way noiseless direction") {
    std::vector<Vec> rows;
    for (int x = 0; x < 4; ++x) {
        Vec r(4, 0.0);
        r[x] = 1.0;
        rows.push_back(r);
    }
    Channel ch = wrap_one_way(rows);
    Maximum m = max_epsilon(ch, 1.0);
    CHECK(m.value == doctest::Approx(2.0).epsilon(1e-8));
    for (double v : m.argmax.p1) CHECK(v == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("min-max and max-min on the noiseless channel") {
    Channel ch = noiseless(2);
    ConfusionFamily f = derive_confusion(ch);
    LambdaBound t = minmax_bound(ch, f, 0.5);
    LambdaBound th = maxmin_bound(ch, f, 0.5);
    CHECK(t.value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(th.value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(th.value <= t.value + 1e-6);
}

TEST_CASE("evaluate_outer keeps maxmin under minmax and under each piece") {
    Channel ch = fixtures::delta_channel();
    ConfusionFamily f = derive_confusion(ch);
    for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
        OuterEvaluation ev = evaluate_outer(ch, f, lambda);
        CHECK(ev.maxmin.value <= ev.minmax.value + 1e-6);
        CHECK(ev.minmax.value <= std::max(ev.eps.value, ev.l.value) + 1e-9);
        CHECK(ev.minmax.value == doctest::Approx(std::min(ev.eps.value, ev.l.value)));
        CHECK(ev.maxmin.value <= std::min(ev.eps.value, ev.l.value) + 1e-6);
        CHECK(ev.eps.value >= 0.0);
    }
    CHECK_THROWS_AS(evaluate_outer(ch, f, 1.5), ValidationError);
}

TEST_CASE("max-min degenerates when one piece is always the smaller") {
    // min-entropy never exceeds entropy, so -log l <= epsilon on the noiseless channel
    Channel ch = noiseless(2);
    ConfusionFamily f = derive_confusion(ch);
    LambdaBound th = maxmin_bound(ch, f, 0.3);
    CHECK(th.value == doctest::Approx(max_neglog_l(f, 0.3).value).epsilon(1e-7));
}

TEST_CASE("relabeling the inputs leaves the bounds unchanged") {
    Channel ch = fixtures::delta_channel();
    std::vector<double> p(ch.data().size());
    const int perm[3] = {2, 0, 1};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) p[ch.index(perm[a], 1 - b, c, d)] = ch.p(a, b, c, d);
    Channel r(3, 2, 2, 2, p);
    OuterEvaluation e1 = evaluate_outer(ch, derive_confusion(ch), 0.5);
    OuterEvaluation e2 = evaluate_outer(r, derive_confusion(r), 0.5);
    CHECK(e1.eps.value == doctest::Approx(e2.eps.value).epsilon(1e-7));
    CHECK(e1.l.value == doctest::Approx(e2.l.value).epsilon(1e-7));
    CHECK(e1.maxmin.value == doctest::Approx(e2.maxmin.value).epsilon(1e-6));
}

TEST_CASE("one-way LP bound") {
    std::vector<Vec> id, full, typewriter;
    for (int x = 0; x < 3; ++x) {
        Vec r(3, 0.0);
        r[x] = 1.0;
        id.push_back(r);
    }
    for (int x = 0; x < 3; ++x) full.push_back(Vec{1.0});
    for (int x = 0; x < 5; ++x) {
        Vec r(5, 0.0);
        r[x] = 0.5;
        r[(x + 1) % 5] = 0.5;
        typewriter.push_back(r);
    }
    CHECK(oneway_lp_bound(Graph::edgeless(3), wrap_one_way(id)) == doctest::Approx(std::log2(3.0)).epsilon(1e-7));
    CHECK(oneway_lp_bound(Graph::complete(3), wrap_one_way(full)) == doctest::Approx(0.0));
    double c5 = oneway_lp_bound(Graph::cycle(5), wrap_one_way(typewriter));
    CHECK(c5 >= 0.5 * std::log2(5.0) - 1e-6);
    CHECK(c5 <= std::log2(2.5) + 1e-6);
}

TEST_CASE("Q search") {
    Channel det = noiseless(2);
    CHECK(free_mass_count(det) == 0);
    auto bound = [](const Channel& q) { return max_epsilon(q, 0.5).value; };
    QSearchResult r = minimize_over_q(det, bound);
    CHECK(r.q == det);
    CHECK(r.value == doctest::Approx(bound(det)));

    CHECK(free_mass_count(fixtures::delta_channel()) == 1);

    // an extra all-zero output column changes nothing
    Channel ch = fixtures::delta_channel(0.3);
    std::vector<double> p;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 2; ++d) p.push_back(c < 2 ? ch.p(a, b, c, d) : 0.0);
    Channel wide(3, 2, 3, 2, p);
    CHECK(max_epsilon(wide, 0.5).value == doctest::Approx(max_epsilon(ch, 0.5).value).epsilon(1e-9));
}

TEST_CASE("regions") {
    Channel ch = noiseless(2);
    OuterRegion box = assemble_outer_region(ch, derive_confusion(ch), {0.0, 1.0}, {OuterMethod::shannon_eps});
    REQUIRE(box.vertices.size() == 4);
    for (auto [x, y] : box.vertices) {
        CHECK(x <= 1.0 + 1e-7);
        CHECK(y <= 1.0 + 1e-7);
    }
    OuterRegion half = assemble_outer_region(ch, derive_confusion(ch), {0.5}, {OuterMethod::shannon_eps});
    CHECK(half.planes.size() == 1);

    CHECK(lambda_grid(1) == std::vector<double>{0.5});
    auto g = lambda_grid(11);
    CHECK(g.size() == 11);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);

    std::vector<Point2> tri = clip_region({{0.5, 0.5, OuterMethod::lp_l}}, 1.0, 1.0);
    CHECK(tri.size() == 3);
}

TEST_CASE("method names round trip") {
    for (OuterMethod m : {OuterMethod::shannon_eps, OuterMethod::lp_l, OuterMethod::minmax_t, OuterMethod::maxmin_theta})
        CHECK(parse_outer_method(outer_method_name(m)) == m);
    CHECK_FALSE(parse_outer_method("nope").has_value());
}
