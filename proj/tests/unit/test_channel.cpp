#include "doctest.h"
#include "fixtures.hpp"

using namespace twzec;

TEST_CASE("delta channel table parses") {
    Channel ch = fixtures::delta_channel();
    CHECK(ch.x1_size() == 3);
    CHECK(ch.x2_size() == 2);
    CHECK(ch.y1_size() == 2);
    CHECK(ch.y2_size() == 2);
}

TEST_CASE("validation errors") {
    std::vector<double> p(2 * 2, 0.0);
    p[0] = 0.9;
    p[2] = 1.0;
    CHECK_THROWS_AS(Channel(2, 1, 2, 1, p), ValidationError);
    CHECK_THROWS_AS(Channel(1, 1, 1, 1, {-1.0}), ValidationError);
    CHECK_THROWS_AS(Channel(1, 1, 1, 1, {1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(parse_channel_text("{"), ValidationError);
    CHECK_THROWS_AS(parse_channel_text("[]"), ValidationError);
    CHECK_THROWS_AS(parse_channel_text(R"({"x1":1,"x2":1,"y1":1,"y2":1,"p":[[[[0.5]]]]})"), ValidationError);
    CHECK_THROWS_AS(parse_channel_text(R"({"x1":2,"x2":1,"y1":1,"y2":1,"p":[[[[1]]]]})"), ValidationError);
    CHECK_THROWS_AS(parse_channel_text(R"({"x1":1,"x2":2,"G":[[[0,1],[1,1]]],"H":[[[0]],[[0]]]})"), ValidationError);
    CHECK_THROWS_AS(parse_channel_text(R"({"x1":1,"x2":2,"G":[[[0,1],[1,0]]],"H":[[[0]]]})"), ValidationError);
}

TEST_CASE("pentagon family document") {
    ChannelInput in = fixtures::load("pentagon.json");
    REQUIRE(std::holds_alternative<ConfusionFamily>(in));
    ConfusionFamily f = std::get<ConfusionFamily>(in);
    CHECK(f == fixtures::pentagon());
}

TEST_CASE("marginals") {
    Channel ch = fixtures::delta_channel();
    Marginal m1 = marginal_y1(ch);
    CHECK(m1.at(1, 0, 1) == doctest::Approx(1.0));
    Channel ch3 = fixtures::delta_channel(0.3);
    CHECK(marginal_y2(ch3).at(1, 0, 0) == doctest::Approx(0.3));

    // Y1 = X2, Y2 constant
    std::vector<double> p(2 * 3 * 3 * 1, 0.0);
    Channel id(2, 3, 3, 1, [&] {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b) p[(a * 3 + b) * 3 + b] = 1.0;
        return p;
    }());
    Marginal m = marginal_y1(id);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
            for (int y = 0; y < 3; ++y) CHECK(m.at(a, b, y) == (b == y ? 1.0 : 0.0));
    ConfusionFamily f = derive_confusion(id);
    for (const auto& g : f.g) CHECK(g.is_edgeless());
}

TEST_CASE("delta channel confusion graphs") {
    ConfusionFamily f = fixtures::delta_family();
    CHECK(f.g[0] == Graph::complete(2));
    CHECK(f.g[1] == Graph::complete(2));
    CHECK(f.g[2] == Graph::edgeless(2));
    CHECK(f.h[0] == Graph::path(3));
    CHECK(f.h[1] == Graph::from_edges(3, {{0, 2}}));
}

TEST_CASE("same_adjacency") {
    CHECK(same_adjacency(fixtures::delta_channel(0.2), fixtures::delta_channel(0.8)));
    CHECK(same_adjacency(fixtures::delta_channel(), fixtures::delta_channel()));
    CHECK_FALSE(same_adjacency(fixtures::delta_channel(), fixtures::delta_channel(0.0)));
}

TEST_CASE("canonical channel") {
    ConfusionFamily empty{std::vector<Graph>(2, Graph::edgeless(3)), std::vector<Graph>(3, Graph::edgeless(2))};
    Channel c = canonical_channel(empty);
    CHECK(derive_confusion(c) == empty);
    for (double v : c.data()) CHECK((v == 0.0 || v == 1.0));

    Channel e = canonical_channel(fixtures::delta_family());
    CHECK(same_adjacency(e, fixtures::delta_channel()));

    ConfusionFamily full{{Graph::complete(2), Graph::complete(2)}, {Graph::complete(2), Graph::complete(2)}};
    Channel k = canonical_channel(full);
    CHECK(k.y1_size() == 1);
    CHECK(k.y2_size() == 1);

    CHECK(derive_confusion(canonical_channel(fixtures::pentagon())) == fixtures::pentagon());
}

TEST_CASE("restrict_family") {
    ConfusionFamily f = fixtures::delta_family();
    ConfusionFamily r = restrict_family(f, {1, 2}, {0, 1});
    CHECK(r.x1_size() == 2);
    CHECK(r.g[0] == Graph::complete(2));
    CHECK(r.h[0] == Graph::complete(2));
    CHECK(r.h[1] == Graph::edgeless(2));
}

TEST_CASE("json round trips") {
    Channel ch = fixtures::delta_channel(0.3);
    CHECK(std::get<Channel>(parse_channel_json(channel_to_json(ch))) == ch);
    ConfusionFamily f = fixtures::pentagon();
    CHECK(std::get<ConfusionFamily>(parse_channel_json(family_to_json(f))) == f);
    CHECK(family_of(ChannelInput{ch}) == derive_confusion(ch));
}
