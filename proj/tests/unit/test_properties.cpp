#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "twzec/code_lab.hpp"
#include "twzec/gf.hpp"
#include "twzec/homomorphism.hpp"
#include "twzec/inner_bounds.hpp"

#include <limits>

using namespace twzec;

TEST_CASE("family round trip through the canonical channel") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<int> size(1, 5);
        ConfusionFamily f = fixtures::random_family(rng, size(rng), size(rng));
        CHECK(derive_confusion(canonical_channel(f)) == f);
        CHECK(std::get<ConfusionFamily>(parse_channel_json(family_to_json(f))) == f);
    }
}

TEST_CASE("channel json round trip") {
    std::mt19937_64 rng(102);
    for (int t = 0; t < 20; ++t) {
        Channel ch = fixtures::random_channel(rng);
        Channel back = std::get<Channel>(parse_channel_text(channel_to_json(ch).dump()));
        CHECK(back == ch);
    }
}

TEST_CASE("one-shot identities on random families") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<int> size(1, 5);
        ConfusionFamily f = fixtures::random_family(rng, size(rng), size(rng));
        CHECK_MESSAGE(oracles::independence_identities(f).empty(), oracles::independence_identities(f));
        CHECK(exhaustive_best_pair(f, 1).product == independence_product(f).pi);
    }
}

TEST_CASE("rho certificate on the maximum dual independent pair") {
    std::mt19937_64 rng(104);
    for (int t = 0; t < 20; ++t) {
        ConfusionFamily f = derive_confusion(fixtures::random_channel(rng));
        IndependenceProduct pi = independence_product(f);
        RhoCertificate c = rho_lower_certificate(f, pi.witness);
        CHECK(check_rho_certificate(f, c).empty());
        CHECK(c.value == doctest::Approx(2.0 * std::sqrt(static_cast<double>(pi.pi))).epsilon(1e-12));
    }
}

TEST_CASE("gradients match finite differences") {
    std::mt19937_64 rng(105);
    for (int t = 0; t < 20; ++t) {
        Channel q = fixtures::random_channel(rng);
        ProductDistribution d{oracles::random_interior(rng, q.x1_size()), oracles::random_interior(rng, q.x2_size())};
        double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        CHECK_MESSAGE(oracles::gradient(q, d, lambda).empty(), oracles::gradient(q, d, lambda));
    }
}

TEST_CASE("epsilon is concave along segments in each block") {
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        Channel q = fixtures::random_channel(rng);
        const double lambda = u(rng);
        Vec p2 = oracles::random_interior(rng, q.x2_size());
        Vec a = oracles::random_interior(rng, q.x1_size()), b = oracles::random_interior(rng, q.x1_size());
        const double s = u(rng);
        Vec m(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) m[i] = s * a[i] + (1 - s) * b[i];
        double fa = epsilon_lambda(q, {a, p2}, lambda), fb = epsilon_lambda(q, {b, p2}, lambda);
        CHECK(epsilon_lambda(q, {m, p2}, lambda) >= s * fa + (1 - s) * fb - 1e-9);

        Vec p1 = oracles::random_interior(rng, q.x1_size());
        Vec c = oracles::random_interior(rng, q.x2_size()), e = oracles::random_interior(rng, q.x2_size());
        Vec n(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) n[i] = s * c[i] + (1 - s) * e[i];
        double fc = epsilon_lambda(q, {p1, c}, lambda), fe = epsilon_lambda(q, {p1, e}, lambda);
        CHECK(epsilon_lambda(q, {p1, n}, lambda) >= s * fc + (1 - s) * fe - 1e-9);
    }
}

TEST_CASE("-log l is a concave piecewise form in log-mass coordinates") {
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        ConfusionFamily f = derive_confusion(fixtures::random_channel(rng));
        auto pairs = enumerate_dual_clique_pairs(f);
        const double lambda = u(rng);
        // one coordinate per pair side: log of its mass
        auto coords = [&](const ProductDistribution& d) {
            std::vector<std::pair<double, double>> z;
            for (const auto& p : pairs) {
                double s = 0.0, r = 0.0;
                for (int i : p.s) s += d.p1[i];
                for (int j : p.t) r += d.p2[j];
                z.emplace_back(std::log2(s), std::log2(r));
            }
            return z;
        };
        auto form = [&](const std::vector<std::pair<double, double>>& z) {
            double best = std::numeric_limits<double>::infinity();
            for (auto [a, b] : z) best = std::min(best, -(lambda * a + (1 - lambda) * b));
            return best;
        };
        ProductDistribution d1{oracles::random_interior(rng, f.x1_size()), oracles::random_interior(rng, f.x2_size())};
        ProductDistribution d2{oracles::random_interior(rng, f.x1_size()), oracles::random_interior(rng, f.x2_size())};
        auto z1 = coords(d1), z2 = coords(d2);
        CHECK(form(z1) == doctest::Approx(-std::log2(l_lambda(pairs, d1, lambda))).epsilon(1e-12));
        std::vector<std::pair<double, double>> mid;
        for (std::size_t k = 0; k < z1.size(); ++k)
            mid.emplace_back(0.5 * (z1[k].first + z2[k].first), 0.5 * (z1[k].second + z2[k].second));
        CHECK(form(mid) >= 0.5 * (form(z1) + form(z2)) - 1e-12);
    }
}

TEST_CASE("dominance and max-min ordering on random channels") {
    std::mt19937_64 rng(108);
    OuterOptions opt;
    opt.starts = 16;
    for (int t = 0; t < 6; ++t) {
        Channel q = fixtures::random_channel(rng, 3);
        ConfusionFamily f = derive_confusion(q);
        std::vector<InnerPoint> inner{max_random_coding(f, 0.5)};
        for (int n = 1; n <= 2; ++n) {
            ExhaustiveResult e = exhaustive_best_pair(f, n);
            InnerPoint p;
            p.r1 = e.pair.r1();
            p.r2 = e.pair.r2();
            inner.push_back(p);
        }
        for (double lambda : {0.0, 0.5, 1.0}) {
            OuterEvaluation ev = evaluate_outer(q, f, lambda, opt);
            CHECK(ev.maxmin.value <= ev.minmax.value + 1e-6);
            for (const auto& p : inner)
                for (const LambdaBound* b : {&ev.eps, &ev.l, &ev.minmax, &ev.maxmin})
                    CHECK(lambda * p.r1 + (1 - lambda) * p.r2 <= b->value + 1e-6);
        }
    }
}

TEST_CASE("spectral axioms on random pairs") {
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<int> size(1, 5);
    for (int t = 0; t < 6; ++t) {
        Graph g = fixtures::random_graph(rng, size(rng)), h = fixtures::random_graph(rng, size(rng));
        CHECK_MESSAGE(oracles::spectral_axioms(g, h).empty(), oracles::spectral_axioms(g, h));
    }
    CHECK(lovasz_theta(Graph::complete(1)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fractional_clique_cover(Graph::complete(1)) == 1.0);
}

TEST_CASE("spectral points are monotone under homomorphisms of complements") {
    std::mt19937_64 rng(110);
    int tested = 0;
    for (int t = 0; t < 40 && tested < 6; ++t) {
        // a found dual homomorphism relates G_i to G'_phi(i) through psi
        ConfusionFamily src = fixtures::random_family(rng, 1, 4, 0.5);
        ConfusionFamily dst = fixtures::random_family(rng, 1, 4, 0.4);
        if (!find_dual_homomorphism(src, dst)) continue;
        ++tested;
        CHECK(lovasz_theta(src.g[0]) <= lovasz_theta(dst.g[0]) + 1e-6);
        CHECK(fractional_clique_cover(src.g[0]) <= fractional_clique_cover(dst.g[0]) + 1e-9);
    }
    CHECK(tested > 0);
}

TEST_CASE("linear-code value is monotone in the detecting counts") {
    for (int q : {2, 3, 4, 5})
        for (double lambda : {0.1, 0.5, 0.8})
            for (int t1 = 0; t1 < q; ++t1)
                for (int t2 = 0; t2 <= q; ++t2) {
                    double here = linear_code_L(lambda, q, q, t1, t2).value;
                    CHECK(linear_code_L(lambda, q, q, t1 + 1, t2).value >= here - 1e-12);
                }
}

TEST_CASE("finite field axioms") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27}) {
        GaloisField f(q);
        bool ok = true;
        for (int a = 0; a < q; ++a) {
            ok &= f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
            if (a) ok &= f.mul(a, f.inv(a)) == 1;
            for (int b = 0; b < q; ++b) {
                ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                for (int c = 0; c < q; ++c) {
                    ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                    ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                }
            }
        }
        CHECK_MESSAGE(ok, "GF(" << q << ")");
        CHECK(f.element_order(f.primitive_element()) == q - 1);
        for (int s : {2, 3, 4, 5, 9})
            if (s < q && is_power_of(q, s)) {
                auto sub = f.subfield(s);
                for (int x = 0; x < q; ++x) {
                    int tx = f.trace(x, s);
                    CHECK(std::find(sub.begin(), sub.end(), tx) != sub.end());
                    CHECK(f.trace(f.add(x, 1), s) == f.add(tx, f.trace(1, s)));
                }
            }
    }
}
