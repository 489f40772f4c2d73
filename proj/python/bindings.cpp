#include "twzec/code_lab.hpp"
#include "twzec/report.hpp"
#include "twzec/spectral.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace twzec;
using nlohmann::json;

namespace {

// documents cross the boundary as JSON text; the Python side decodes them
ChannelInput load(const std::string& doc) { return parse_channel_text(doc); }

std::string outer_at(const std::string& doc, double lambda, bool minimize_q) {
    const ChannelInput in = load(doc);
    OuterOptions opt;
    opt.minimize_q = minimize_q;
    OuterEvaluation ev = evaluate_outer(channel_of(in), family_of(in), lambda, opt);
    json j = json::object();
    for (const LambdaBound* b : {&ev.eps, &ev.l, &ev.minmax, &ev.maxmin})
        j[outer_method_name(b->method)] = lambda_bound_to_json(*b, false);
    return j.dump();
}

std::string report(const std::string& doc, int grid, bool minimize_q, int exhaustive_n, std::uint64_t seed) {
    ReportOptions opt;
    opt.grid = lambda_grid(grid);
    opt.outer_opt.minimize_q = minimize_q;
    opt.exhaustive_n = exhaustive_n;
    opt.seed = seed;
    BoundReport r = build_report(load(doc), document_digest(json::parse(doc)), opt);
    return report_to_json(r).dump();
}

std::string one_shot(const std::string& doc) {
    return one_shot_to_json(one_shot_block(family_of(load(doc)), false)).dump();
}

std::string clique_union(int q, int s, int n, int k, std::uint64_t seed) {
    CliqueUnionConstruction cu = theorem8_construct(q, s, n, k, seed);
    json j = codebook_to_json(cu.pair);
    j["uniquely_decodable"] = cu.check.ok;
    j["formula_rate"] = cu.formula_rate;
    j["capacity"] = cu.capacity;
    j["family"] = family_to_json(cu.family);
    return j.dump();
}

bool uniquely_decodable(const std::string& channel_doc, int n, const std::vector<Word>& a,
                        const std::vector<Word>& b) {
    return is_uniquely_decodable(CodebookPair{n, a, b}, family_of(load(channel_doc))).ok;
}

}  // namespace

PYBIND11_MODULE(_twzec, m) {
    m.doc() = "Zero-error two-way channel bounds";
    m.attr("SCHEMA") = kSchema;
    m.attr("__version__") = kToolVersion;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("lovasz_theta", [](const std::vector<std::vector<int>>& adj) { return lovasz_theta(Graph::from_matrix(adj)); },
          py::arg("adjacency"));
    m.def("fractional_clique_cover",
          [](const std::vector<std::vector<int>>& adj) { return fractional_clique_cover(Graph::from_matrix(adj)); },
          py::arg("adjacency"));
    m.def("kg_kk_bound",
          [](int x2, const std::vector<std::vector<int>>& adj) { return kg_kk_bound(x2, Graph::from_matrix(adj)); },
          py::arg("x2_size"), py::arg("adjacency"));
    m.def("linear_code_L",
          [](double lambda, int q1, int q2, int t1, int t2) {
              LinearCodeRates r = linear_code_L(lambda, q1, q2, t1, t2);
              return py::make_tuple(r.value, r.alpha, r.beta);
          },
          py::arg("lam"), py::arg("q1"), py::arg("q2"), py::arg("tau1"), py::arg("tau2"));
    m.def("_outer_at", &outer_at, py::arg("channel_json"), py::arg("lam"), py::arg("minimize_q"));
    m.def("_report", &report, py::arg("channel_json"), py::arg("grid"), py::arg("minimize_q"),
          py::arg("exhaustive_n"), py::arg("seed"));
    m.def("_one_shot", &one_shot, py::arg("channel_json"));
    m.def("_clique_union", &clique_union, py::arg("q"), py::arg("s"), py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def("_uniquely_decodable", &uniquely_decodable, py::arg("channel_json"), py::arg("n"), py::arg("a"),
          py::arg("b"));
}
