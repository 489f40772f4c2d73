// twzec command-line front end.
#include "twzec/code_lab.hpp"
#include "twzec/report.hpp"
#include "twzec/spectral.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace twzec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConsistency = 2;

struct Common {
    std::string channel;
    std::string out;
    std::string csv;
    std::uint64_t seed = 0;
    int grid = 101;
    std::string minimize_q = "off";
    std::vector<std::string> methods;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
}

std::uint64_t effective_seed(std::uint64_t flag) {
    if (const char* env = std::getenv("TWZEC_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw ValidationError(std::string("TWZEC_SEED is not an unsigned integer: ") + env);
        }
    }
    return flag;
}

void emit(const json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw ValidationError("cannot write " + out);
    f << text;
}

std::vector<OuterMethod> parse_methods(const std::vector<std::string>& names) {
    std::vector<OuterMethod> out;
    for (const auto& raw : names) {
        std::stringstream ss(raw);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (name.empty()) continue;
            auto m = parse_outer_method(name);
            if (!m) throw ValidationError("unknown method '" + name + "'");
            out.push_back(*m);
        }
    }
    if (out.empty())
        out = {OuterMethod::shannon_eps, OuterMethod::lp_l, OuterMethod::minmax_t, OuterMethod::maxmin_theta};
    return out;
}

Graph parse_graph(const json& doc) {
    try {
        if (doc.contains("adjacency")) return Graph::from_matrix(doc.at("adjacency").get<std::vector<std::vector<int>>>());
        const int n = doc.at("n").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : doc.value("edges", json::array())) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        return Graph::from_edges(n, edges);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed graph document: ") + e.what());
    } catch (const GraphError& e) {
        throw ValidationError(e.what());
    }
}

CodebookPair parse_codebook(const json& doc) {
    try {
        CodebookPair p;
        p.n = doc.at("n").get<int>();
        p.a = doc.at("A").get<std::vector<Word>>();
        p.b = doc.at("B").get<std::vector<Word>>();
        return p;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed codebook document: ") + e.what());
    }
}

json check_to_json(const DecodabilityCheck& c) {
    json j{{"uniquely_decodable", c.ok}};
    if (!c.ok)
        j["witness"] = {{"side", c.side == 1 ? "B" : "A"},
                        {"fixed", c.fixed},
                        {"first", c.first},
                        {"second", c.second},
                        {"message", c.describe()}};
    return j;
}

json header(std::uint64_t seed) {
    return {{"schema", kSchema}, {"tool", {{"name", "twzec"}, {"version", kToolVersion}}}, {"seed", seed}};
}

void add_common(CLI::App* sub, Common& c, bool channel_required) {
    auto* opt = sub->add_option("--channel", c.channel, "channel or confusion-family JSON file");
    if (channel_required) opt->required();
    sub->add_option("--out", c.out, "write JSON here instead of stdout");
    sub->add_option("--seed", c.seed, "seed for randomized searches (TWZEC_SEED overrides)");
}

void add_grid(CLI::App* sub, Common& c) {
    sub->add_option("--lambda-grid", c.grid, "number of lambda points; 1 means lambda = 1/2")
        ->check(CLI::Range(1, 100001));
    sub->add_option("--minimize-q", c.minimize_q, "minimize over channels with the same support")
        ->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--methods", c.methods, "outer methods: shannon-eps,lp-l,minmax-t,maxmin-theta")
        ->delimiter(',');
    sub->add_option("--csv", c.csv, "write lambda,method,value,residual rows here");
}

struct Loaded {
    ChannelInput input;
    std::string digest;
};

Loaded load_channel(const std::string& path) {
    json doc = read_json_file(path);
    return {parse_channel_json(doc), document_digest(doc)};
}

int finish_report(BoundReport& r, const Common& c) {
    const auto violations = apply_consistency(r);
    emit(report_to_json(r), c.out);
    if (!c.csv.empty()) {
        std::ofstream f(c.csv);
        if (!f) throw ValidationError("cannot write " + c.csv);
        write_csv(f, r);
    }
    for (const auto& v : violations) std::cerr << "CONSISTENCY-FAIL at lambda=" << v.lambda << ": " << v.detail << "\n";
    return violations.empty() ? kExitOk : kExitConsistency;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-error two-way channel bounds and constructions"};
    app.require_subcommand(1);
    Common c;
    int exhaustive_n = 0, max_power = 2, n = 0, k = 0, q = 0, s = 0, qprime = 2, k1 = 0, k2 = 0;
    std::string rho = "off", graph_path, verify_path;
    bool lemma8 = false;
    std::vector<int> d_set, x1_sub, x2_sub;

    auto* bounds = app.add_subcommand("bounds", "outer bounds over a lambda grid");
    add_common(bounds, c, true);
    add_grid(bounds, c);

    auto* inner = app.add_subcommand("inner", "random-coding and linear-code inner points");
    add_common(inner, c, true);
    add_grid(inner, c);
    inner->add_option("--exhaustive-n", exhaustive_n, "also search codebook pairs up to this blocklength");

    auto* oneshot = app.add_subcommand("oneshot", "independence product and rho");
    add_common(oneshot, c, true);
    oneshot->add_option("--rho", rho, "run the rho branch search")->check(CLI::IsMember({"on", "off"}));

    auto* theta = app.add_subcommand("theta", "Lovasz theta, fractional clique cover and capacity sandwich");
    theta->add_option("--graph", graph_path, "graph JSON: {n, edges} or {adjacency}")->required();
    theta->add_option("--max-power", max_power, "largest strong power for the lower estimate")
        ->check(CLI::Range(1, 4));
    theta->add_option("--out", c.out, "write JSON here instead of stdout");
    theta->add_option("--seed", c.seed, "unused; recorded in the output");

    auto* search = app.add_subcommand("search", "exhaustive best codebook pair");
    add_common(search, c, true);
    search->add_option("--n", n, "blocklength")->required()->check(CLI::Range(1, 6));

    auto* construct = app.add_subcommand("construct", "coset constructions and codebook verification");
    add_common(construct, c, false);
    construct->add_option("--q", q, "code field size");
    construct->add_option("--s", s, "number of cliques in the second graph");
    construct->add_option("--n", n, "blocklength");
    construct->add_option("--k", k, "code dimension");
    construct->add_flag("--lemma8", lemma8, "search a generator with many detecting vectors");
    construct->add_option("--qprime", qprime, "detector alphabet size (with --lemma8)");
    construct->add_option("--d", d_set, "detecting symbols (with --lemma8)")->delimiter(',');
    construct->add_option("--x1-sub", x1_sub, "sub-alphabet of X1 (with --channel)")->delimiter(',');
    construct->add_option("--x2-sub", x2_sub, "sub-alphabet of X2 (with --channel)")->delimiter(',');
    construct->add_option("--k1", k1, "dimension of the first code (with --channel)");
    construct->add_option("--k2", k2, "dimension of the second code (with --channel)");
    construct->add_option("--verify", verify_path, "verify a codebook JSON against --channel");

    auto* report = app.add_subcommand("report", "outer, inner and one-shot results in one report");
    add_common(report, c, true);
    add_grid(report, c);
    report->add_option("--exhaustive-n", exhaustive_n, "exhaustive codebook pairs up to this blocklength");
    report->add_option("--rho", rho, "run the rho branch search")->check(CLI::IsMember({"on", "off"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const std::uint64_t seed = effective_seed(c.seed);
        ReportOptions ro;
        ro.seed = seed;
        ro.grid = lambda_grid(c.grid);
        ro.methods = parse_methods(c.methods);
        ro.outer_opt.minimize_q = c.minimize_q == "on";
        ro.exhaustive_n = exhaustive_n;
        ro.rho = rho == "on";

        if (bounds->parsed() || inner->parsed() || report->parsed()) {
            Loaded in = load_channel(c.channel);
            ro.outer = !inner->parsed();
            ro.inner = !bounds->parsed();
            ro.one_shot = report->parsed();
            if (inner->parsed()) ro.methods.clear();
            BoundReport r = build_report(in.input, in.digest, ro);
            return finish_report(r, c);
        }

        if (oneshot->parsed()) {
            Loaded in = load_channel(c.channel);
            json j = header(seed);
            j["channel_digest"] = in.digest;
            j.update(one_shot_to_json(one_shot_block(family_of(in.input), ro.rho)));
            emit(j, c.out);
            return kExitOk;
        }

        if (theta->parsed()) {
            const Graph g = parse_graph(read_json_file(graph_path));
            json j = header(seed);
            ThetaResult t = lovasz_theta_detailed(g);
            j["theta"] = t.value;
            j["theta_converged"] = t.converged;
            if (g.size() <= kCliqueCoverVertexLimit) j["fcc"] = fractional_clique_cover(g);
            CapacitySandwich sw = capacity_sandwich(g, max_power);
            j["sandwich"] = {{"lower", sw.lower}, {"upper", sw.upper}, {"witness_power", sw.witness_power}};
            emit(j, c.out);
            return kExitOk;
        }

        if (search->parsed()) {
            Loaded in = load_channel(c.channel);
            const ConfusionFamily fam = family_of(in.input);
            ExhaustiveResult r = exhaustive_best_pair(fam, n);
            json j = header(seed);
            j["channel_digest"] = in.digest;
            j["codebook"] = codebook_to_json(r.pair);
            j["product"] = r.product;
            j["complete"] = r.complete;
            j["nodes"] = r.nodes;
            DecodabilityCheck chk = is_uniquely_decodable(r.pair, fam);
            j["verifier"] = check_to_json(chk);
            emit(j, c.out);
            return chk.ok ? kExitOk : kExitValidation;
        }

        // construct
        json j = header(seed);
        DecodabilityCheck chk;
        if (!verify_path.empty()) {
            if (c.channel.empty()) throw ValidationError("--verify needs --channel");
            Loaded in = load_channel(c.channel);
            const CodebookPair pair = parse_codebook(read_json_file(verify_path));
            chk = is_uniquely_decodable(pair, family_of(in.input));
            j["channel_digest"] = in.digest;
            j["codebook"] = codebook_to_json(pair);
        } else if (lemma8) {
            if (q == 0 || n == 0 || k == 0) throw ValidationError("--lemma8 needs --q, --n and --k");
            LinearCodePair lp = lemma8_search(q, qprime, n, k, d_set, seed);
            j["q"] = lp.q;
            j["qprime"] = lp.qprime;
            j["n"] = lp.n;
            j["k"] = lp.k;
            j["generator"] = lp.generator;
            j["d_set"] = lp.d_set;
            j["detector_count"] = lp.detector_count;
            j["guarantee"] = lp.guarantee;
            j["exhaustive"] = lp.exhaustive;
            if (lp.materialized) j["detectors"] = lp.detectors;
            emit(j, c.out);
            return kExitOk;
        } else if (!c.channel.empty()) {
            if (x1_sub.empty() || x2_sub.empty() || n == 0 || k1 == 0 || k2 == 0)
                throw ValidationError("construct --channel needs --x1-sub, --x2-sub, --n, --k1 and --k2");
            Loaded in = load_channel(c.channel);
            LinearConstruction lc = construct_linear_pair(family_of(in.input), x1_sub, x2_sub, n, k1, k2, seed);
            chk = lc.check;
            j["channel_digest"] = in.digest;
            j["codebook"] = codebook_to_json(lc.pair);
            j["detector_counts"] = {lc.code1.detector_count, lc.code2.detector_count};
        } else {
            if (q == 0 || s == 0 || n == 0 || k == 0) throw ValidationError("construct needs --q, --s, --n and --k");
            CliqueUnionConstruction cu = theorem8_construct(q, s, n, k, seed);
            chk = cu.check;
            j["family"] = family_to_json(cu.family);
            j["generator"] = cu.code.generator;
            j["codebook"] = codebook_to_json(cu.pair);
            j["sizes"] = {{"A", cu.pair.a.size()}, {"B", cu.pair.b.size()}};
            j["formula_rate"] = cu.formula_rate;
            j["capacity"] = cu.capacity;
        }
        j["verifier"] = check_to_json(chk);
        emit(j, c.out);
        if (!chk.ok) std::cerr << "verifier: " << chk.describe() << "\n";
        return chk.ok ? kExitOk : kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
