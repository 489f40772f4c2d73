#include "twzec/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace twzec {

using nlohmann::json;

std::string document_digest(const json& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : doc.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

OneShotBlock one_shot_block(const ConfusionFamily& fam, bool with_rho, int branch_limit) {
    OneShotBlock b;
    b.pi = independence_product(fam);
    b.log_pi = std::log2(static_cast<double>(b.pi.pi));
    b.rho_lower = rho_lower_certificate(fam, b.pi.witness).value;
    if (with_rho) b.rho = rho_upper_estimate(fam, branch_limit);
    return b;
}

json one_shot_to_json(const OneShotBlock& block) {
    json j{{"pi", block.pi.pi},
           {"witness", {{"S", block.pi.witness.s}, {"T", block.pi.witness.t}}},
           {"log_pi", block.log_pi},
           {"rho_lower", block.rho_lower}};
    if (block.rho)
        j["rho_upper"] = {{"value", block.rho->value},
                          {"bound", block.rho->bound},
                          {"complete", block.rho->complete},
                          {"sdp_solves", block.rho->sdp_solves}};
    return j;
}

namespace {

bool is_half(double lambda) { return std::abs(lambda - 0.5) < 1e-12; }

}  // namespace

BoundReport build_report(const ChannelInput& input, const std::string& digest, const ReportOptions& opt) {
    const ConfusionFamily fam = family_of(input);
    BoundReport r;
    r.digest = digest;
    r.seed = opt.seed;
    r.grid = opt.grid;
    r.minimize_q = opt.outer_opt.minimize_q;
    r.methods = opt.methods;
    if (opt.outer && !opt.methods.empty()) {
        const Channel q = channel_of(input);
        if (std::holds_alternative<ConfusionFamily>(input))
            r.notes.push_back("outer bounds use the canonical channel of the family");
        OuterRegion region = assemble_outer_region(q, fam, opt.grid, opt.methods, opt.outer_opt);
        r.outer = std::move(region.bounds);
        r.outer_region = std::move(region.vertices);
    }
    if (opt.inner) {
        const bool linear = fam.x1_size() <= kSubAlphabetLimit && fam.x2_size() <= kSubAlphabetLimit;
        if (!linear) r.notes.push_back("linear-code points skipped: alphabets above 10 symbols");
        for (double lambda : opt.grid) {
            r.inner.push_back(max_random_coding(fam, lambda));
            if (linear) r.inner.push_back(best_sub_alphabet(fam, lambda).best);
        }
        for (int n = 1; n <= opt.exhaustive_n; ++n) {
            ExhaustiveResult e = exhaustive_best_pair(fam, n);
            InnerPoint p;
            p.method = InnerMethod::exhaustive;
            p.blocklength = n;
            p.r1 = e.pair.r1();
            p.r2 = e.pair.r2();
            r.inner.push_back(p);
            if (!e.complete) r.notes.push_back("exhaustive search at n=" + std::to_string(n) + " hit its budget");
        }
        r.inner_region = inner_hull(r.inner);
    }
    if (opt.one_shot) r.one_shot = one_shot_block(fam, opt.rho);
    apply_consistency(r);
    return r;
}

std::vector<Violation> report_consistency(const BoundReport& report, double tol) {
    std::vector<Violation> out;
    for (const auto& b : report.outer) {
        const char* name = outer_method_name(b.method);
        if (!(b.value >= -tol))
            out.push_back({b.lambda, "negative-bound", std::string(name) + " is negative"});
        for (const auto& p : report.inner) {
            const double v = b.lambda * p.r1 + (1.0 - b.lambda) * p.r2;
            if (v > b.value + tol) {
                std::ostringstream os;
                os << inner_method_name(p.method) << " point (" << p.r1 << ", " << p.r2 << ") gives " << v
                   << " above " << name << " value " << b.value;
                out.push_back({b.lambda, "inner-above-outer", os.str()});
            }
        }
        if (b.method != OuterMethod::maxmin_theta) continue;
        for (const auto& t : report.outer)
            if (t.method == OuterMethod::minmax_t && std::abs(t.lambda - b.lambda) < 1e-12 &&
                b.value > t.value + tol) {
                std::ostringstream os;
                os << "maxmin-theta " << b.value << " exceeds minmax-t " << t.value;
                out.push_back({b.lambda, "maxmin-above-minmax", os.str()});
            }
    }
    return out;
}

std::vector<Violation> apply_consistency(BoundReport& report) {
    auto v = report_consistency(report);
    std::erase(report.flags, std::string("CONSISTENCY-FAIL"));
    if (!v.empty()) report.flags.push_back("CONSISTENCY-FAIL");
    return v;
}

json lambda_bound_to_json(const LambdaBound& b, bool with_channel) {
    json j{{"lambda", b.lambda},
           {"method", outer_method_name(b.method)},
           {"value", b.value},
           {"residual", b.residual},
           {"converged", b.converged},
           {"argmax", {{"p1", b.argmax.p1}, {"p2", b.argmax.p2}}}};
    if (is_half(b.lambda)) j["sum_rate"] = 2.0 * b.value;
    if (with_channel) j["q_used"] = channel_to_json(b.q_used);
    return j;
}

json inner_point_to_json(const InnerPoint& p) {
    json j{{"method", inner_method_name(p.method)}, {"r1", p.r1}, {"r2", p.r2}, {"sum_rate", p.r1 + p.r2}};
    switch (p.method) {
        case InnerMethod::random_coding:
            j["lambda"] = p.lambda;
            j["value"] = p.lambda * p.r1 + (1.0 - p.lambda) * p.r2;
            j["distribution"] = {{"p1", p.dist.p1}, {"p2", p.dist.p2}};
            break;
        case InnerMethod::linear_codes:
            j["lambda"] = p.lambda;
            j["value"] = p.lambda * p.r1 + (1.0 - p.lambda) * p.r2;
            j["x1_sub"] = p.x1_sub;
            j["x2_sub"] = p.x2_sub;
            j["q1"] = p.q1;
            j["q2"] = p.q2;
            j["tau1"] = p.tau1;
            j["tau2"] = p.tau2;
            j["alpha"] = p.alpha;
            j["beta"] = p.beta;
            break;
        case InnerMethod::exhaustive:
            j["n"] = p.blocklength;
            break;
    }
    return j;
}

json codebook_to_json(const CodebookPair& pair) {
    return {{"n", pair.n}, {"A", pair.a}, {"B", pair.b}, {"r1", pair.r1()}, {"r2", pair.r2()},
            {"sum_rate", pair.r1() + pair.r2()}};
}

json report_to_json(const BoundReport& report) {
    json j;
    j["schema"] = kSchema;
    j["tool"] = {{"name", "twzec"}, {"version", kToolVersion}};
    j["seed"] = report.seed;
    j["channel_digest"] = report.digest;
    json methods = json::array();
    for (auto m : report.methods) methods.push_back(outer_method_name(m));
    j["options"] = {{"lambda_grid", report.grid.size()}, {"minimize_q", report.minimize_q}, {"methods", methods}};

    json outer = json::array();
    for (const auto& b : report.outer) outer.push_back(lambda_bound_to_json(b, report.minimize_q));
    j["outer"] = outer;
    json inner = json::array();
    for (const auto& p : report.inner) inner.push_back(inner_point_to_json(p));
    j["inner"] = inner;

    json sum = {{"outer", json::object()}, {"inner", json::object()}};
    for (const auto& b : report.outer)
        if (is_half(b.lambda)) sum["outer"][outer_method_name(b.method)] = 2.0 * b.value;
    for (const auto& p : report.inner) {
        const std::string name = inner_method_name(p.method);
        const double v = p.r1 + p.r2;
        if (!sum["inner"].contains(name) || sum["inner"][name].get<double>() < v) sum["inner"][name] = v;
    }
    j["sum_rate"] = sum;

    if (report.one_shot) j["one_shot"] = one_shot_to_json(*report.one_shot);
    auto poly = [](const std::vector<Point2>& pts) {
        json a = json::array();
        for (const auto& [x, y] : pts) a.push_back({x, y});
        return a;
    };
    j["regions"] = {{"outer", poly(report.outer_region)}, {"inner", poly(report.inner_region)}};
    json viol = json::array();
    for (const auto& v : report_consistency(report))
        viol.push_back({{"lambda", v.lambda}, {"kind", v.kind}, {"detail", v.detail}});
    j["consistency"] = {{"ok", viol.empty()}, {"violations", viol}};
    j["flags"] = report.flags;
    j["notes"] = report.notes;
    return j;
}

void write_csv(std::ostream& out, const BoundReport& report) {
    out << "lambda,method,value,residual\n";
    out << std::setprecision(17);
    for (const auto& b : report.outer)
        out << b.lambda << ',' << outer_method_name(b.method) << ',' << b.value << ',' << b.residual << '\n';
    for (const auto& p : report.inner) {
        if (p.method == InnerMethod::exhaustive) continue;
        out << p.lambda << ',' << inner_method_name(p.method) << ',' << p.lambda * p.r1 + (1.0 - p.lambda) * p.r2
            << ',' << 0 << '\n';
    }
}

}  // namespace twzec
