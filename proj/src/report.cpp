#include "cwcmatch/report.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace cwcmatch {

std::string rational_string(const BigRational& r) {
    const BigCount num = boost::multiprecision::numerator(r);
    const BigCount den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::string fixed_decimal(const BigRational& r, int places) {
    BigCount scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const BigCount num = boost::multiprecision::numerator(r);
    const BigCount den = boost::multiprecision::denominator(r);
    const bool negative = num < 0;
    const BigCount scaled = ((negative ? BigCount(-num) : num) * scale * 2 + den) / (den * 2);
    const BigCount whole = scaled / scale;
    std::string frac = BigCount(scaled % scale).str();
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
    if (places > 0) out += "." + frac;
    return out;
}

double rounded_decimal(const BigRational& r, int places) { return std::stod(fixed_decimal(r, places)); }

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json count(const BigCount& x) { return x.str(); }

Json optional_count(const std::optional<BigCount>& x) { return x ? Json(x->str()) : Json(nullptr); }

Json optional_double(const std::optional<double>& x, int places = 6) {
    if (!x) return nullptr;
    const double scale = std::pow(10.0, places);
    return std::round(*x * scale) / scale;
}

std::string mode_string(DegreeMode m) { return m == DegreeMode::closed_form ? "closed-form" : "empirical"; }

std::string violation_kind(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::weight: return "weight";
        case Violation::Kind::composition: return "composition";
        case Violation::Kind::distance: return "distance";
    }
    return "unknown";
}

}  // namespace

Json spec_json(const CodeSpec& spec) {
    Json j;
    j["q"] = spec.q();
    j["n"] = spec.n();
    j["d"] = spec.d();
    j["kind"] = spec.kind() == CodeKind::cwc ? "cwc" : "ccc";
    if (spec.kind() == CodeKind::cwc) {
        j["w"] = spec.w();
    } else {
        const auto counts = spec.composition().counts();
        j["wbar"] = std::vector<int>(counts.begin(), counts.end());
    }
    j["t"] = spec.t();
    return j;
}

Json bound_json(const CodeSpec& spec, const BoundReport& report) {
    Json j = spec_json(spec);
    j["t"] = report.t;
    j["bound"] = count(report.bound);
    j["parity"] = to_string(report.parity);
    j["formula"] = to_string(report.formula);
    j["f"] = optional_count(report.f_value);
    j["witness"] = report.witness ? Json(*report.witness) : Json(nullptr);
    return j;
}

Json config_json(const MatchConfig& config) {
    Json j;
    j["algorithm"] = to_string(config.algorithm);
    j["seed"] = config.seed;
    j["bite_fraction"] = config.bite_fraction;
    j["max_rounds"] = config.max_rounds;
    j["completion"] = config.completion;
    j["sample_budget"] = config.sample_budget;
    return j;
}

Json run_report_json(const RunReport& report) {
    Json j;
    j["spec"] = spec_json(report.spec);
    j["config"] = config_json(report.config);
    j["code_size"] = report.code_size;
    j["bound"] = count(report.bound);
    j["ratio"] = rational_string(report.ratio);
    j["ratio_decimal"] = rounded_decimal(report.ratio);
    j["maximal"] = report.maximal;
    j["sampled"] = report.sampled;
    j["rounds_executed"] = report.rounds_executed;
    j["candidates_examined"] = report.candidates_examined;
    return j;
}

Json verify_json(const Code& code, const Verdict& verdict) {
    Json j;
    j["spec"] = spec_json(code.spec());
    j["size"] = code.size();
    j["valid"] = verdict.ok();
    if (verdict.ok()) {
        j["violation"] = nullptr;
        return j;
    }
    const Violation& v = *verdict.violation;
    Json vj;
    vj["kind"] = violation_kind(v.kind);
    vj["first"] = v.first + 1;
    vj["second"] = v.second ? Json(*v.second + 1) : Json(nullptr);
    vj["observed"] = v.observed;
    vj["reason"] = v.reason;
    j["violation"] = vj;
    return j;
}

Json stats_json(const CodeSpec& spec, const DegreeStats& stats,
                const std::optional<ConflictDiagnostics>& diagnostics) {
    Json j;
    j["spec"] = spec_json(spec);
    j["mode"] = mode_string(stats.mode);
    j["max_degree"] = count(stats.max_degree);
    j["closed_form"] = count(stats.closed_form);
    j["max_codegree"] = count(stats.max_codegree);
    j["codegree_envelope"] = count(stats.codegree_envelope);
    j["alpha_fc"] = rational_string(stats.alpha_fc);
    j["conflict_degree_max"] = optional_count(stats.conflict_degree_max);
    j["conflict_degree_envelope"] = optional_count(stats.conflict_degree_envelope);
    if (!diagnostics) {
        j["diagnostics"] = nullptr;
        return j;
    }
    Json dj;
    dj["D"] = count(diagnostics->D);
    dj["codegree"] = count(diagnostics->codegree);
    dj["delta2"] = count(diagnostics->delta2);
    dj["delta2_envelope"] = count(diagnostics->delta2_envelope);
    dj["beta"] = optional_double(diagnostics->beta);
    dj["d_power"] = optional_double(diagnostics->d_power);
    dj["delta2_ratio"] = optional_double(diagnostics->delta2_ratio);
    dj["codegree_ratio"] = optional_double(diagnostics->codegree_ratio);
    j["diagnostics"] = dj;
    return j;
}

Json exact_json(const ExactResult& result, const std::optional<std::string>& witness_file) {
    Json j;
    j["spec"] = spec_json(result.witness.spec());
    j["value"] = result.value;
    j["upper"] = result.upper;
    j["bound"] = count(result.bound);
    j["tight"] = result.tight();
    j["status"] = to_string(result.status);
    j["witness_file"] = witness_file ? Json(*witness_file) : Json(nullptr);
    return j;
}

Json sweep_json(const SweepPlan& plan, const std::vector<SweepRow>& rows) {
    Json j;
    Json pj;
    pj["q"] = plan.q;
    pj["d"] = plan.d;
    if (const auto* w = std::get_if<int>(&plan.weight)) {
        pj["kind"] = "cwc";
        pj["w"] = *w;
    } else {
        const auto counts = std::get<Composition>(plan.weight).counts();
        pj["kind"] = "ccc";
        pj["wbar"] = std::vector<int>(counts.begin(), counts.end());
    }
    pj["n_values"] = plan.n_values;
    pj["seeds"] = plan.seeds;
    Json config = config_json(plan.config);
    config.erase("seed");
    pj["config"] = config;
    j["plan"] = pj;

    Json rj = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["n"] = row.n;
        r["bound"] = count(row.bound);
        r["best_size"] = row.best_size;
        r["mean_size"] = rational_string(row.mean_size);
        r["mean_size_decimal"] = rounded_decimal(row.mean_size);
        r["ratio"] = rational_string(row.ratio);
        r["ratio_decimal"] = rounded_decimal(row.ratio);
        r["sizes"] = row.sizes;
        r["error"] = row.error ? Json(*row.error) : Json(nullptr);
        rj.push_back(r);
    }
    j["rows"] = rj;
    return j;
}

std::string bound_csv(const CodeSpec& spec, const BoundReport& report) {
    std::ostringstream out;
    out << "kind,q,n,d,weight,t,bound,parity,formula,f,witness\n";
    out << (spec.kind() == CodeKind::cwc ? "cwc" : "ccc") << ',' << spec.q() << ',' << spec.n() << ','
        << spec.d() << ',';
    if (spec.kind() == CodeKind::cwc) {
        out << spec.w();
    } else {
        const auto counts = spec.composition().counts();
        for (std::size_t i = 0; i < counts.size(); ++i) out << (i ? ";" : "") << counts[i];
    }
    out << ',' << report.t << ',' << report.bound << ',' << to_string(report.parity) << ','
        << to_string(report.formula) << ',';
    if (report.f_value) out << *report.f_value;
    out << ',';
    if (report.witness)
        for (std::size_t i = 0; i < report.witness->size(); ++i) out << (i ? ";" : "") << (*report.witness)[i];
    out << '\n';
    return out.str();
}

}  // namespace cwcmatch
