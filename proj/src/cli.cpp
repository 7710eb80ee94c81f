#include "cwcmatch/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/code_file.hpp"
#include "cwcmatch/errors.hpp"
#include "cwcmatch/exact.hpp"
#include "cwcmatch/hyper.hpp"
#include "cwcmatch/matcher.hpp"
#include "cwcmatch/report.hpp"
#include "cwcmatch/sweep.hpp"

namespace cwcmatch {
namespace {

/// Timestamped sidecar log; result files never carry timing data.
class SideLog {
public:
    void open(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::app);
        if (!file_) throw std::runtime_error("cannot open log " + path);
    }

    void line(const std::string& message) {
        if (!file_.is_open()) return;
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        file_ << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << ' ' << message << '\n';
        file_.flush();
    }

private:
    std::ofstream file_;
};

struct Globals {
    unsigned threads = 1;
    std::string log_path;
    std::string format = "json";
};

struct SpecArgs {
    int q = 0;
    int n = 0;
    std::vector<int> n_values;
    int d = 0;
    int w = 0;
    std::vector<int> wbar;
    CLI::Option* w_opt = nullptr;
    CLI::Option* wbar_opt = nullptr;

    void add(CLI::App* app, bool n_list) {
        app->add_option("--q", q, "alphabet size")->required();
        if (n_list)
            app->add_option("--n", n_values, "lengths, comma separated and increasing")->required()->delimiter(',');
        else
            app->add_option("--n", n, "length")->required();
        app->add_option("--d", d, "minimum distance")->required();
        w_opt = app->add_option("--w", w, "weight (constant weight code)");
        wbar_opt = app->add_option("--wbar", wbar, "composition w1,...,w_{q-1} (constant composition code)")
                       ->delimiter(',');
        w_opt->excludes(wbar_opt);
        wbar_opt->excludes(w_opt);
    }

    std::variant<int, Composition> weight() const {
        if (w_opt->count() > 0) return w;
        if (wbar_opt->count() > 0) return Composition(wbar);
        throw std::invalid_argument("one of --w or --wbar is required");
    }

    CodeSpec spec() const {
        const auto wt = weight();
        if (const auto* v = std::get_if<int>(&wt)) return CodeSpec::cwc(q, n, d, *v);
        return CodeSpec::ccc(q, n, d, std::get<Composition>(wt));
    }
};

struct ConfigArgs {
    std::string algo = "greedy";
    MatchConfig config;
    bool no_completion = false;

    void add(CLI::App* app) {
        app->add_option("--algo", algo, "greedy or nibble")->check(CLI::IsMember({"greedy", "nibble"}));
        app->add_option("--bite", config.bite_fraction, "nibble bite fraction in (0, 1]");
        app->add_option("--rounds", config.max_rounds, "nibble round limit");
        app->add_flag("--no-completion", no_completion, "skip the greedy pass after the nibble");
        app->add_option("--budget", config.sample_budget, "enumeration threshold and draw budget");
    }

    MatchConfig resolve() const {
        MatchConfig c = config;
        c.algorithm = parse_algorithm(algo);
        c.completion = !no_completion;
        return c;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed2(double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << x;
    return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct, verify and bound q-ary constant weight and constant composition codes."};
    app.name("cwcmatch");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--threads", g.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--log", g.log_path, "append timing and progress lines to this file");
    app.add_option("--format", g.format, "json or csv (bound and sweep)")->check(CLI::IsMember({"json", "csv"}));

    SpecArgs bound_spec;
    auto* bound = app.add_subcommand("bound", "Johnson-type upper bound");
    bound_spec.add(bound, false);

    SpecArgs construct_spec;
    ConfigArgs construct_cfg;
    std::string construct_out, construct_report;
    auto* construct_cmd = app.add_subcommand("construct", "build a code with the greedy or nibble matcher");
    construct_spec.add(construct_cmd, false);
    construct_cfg.add(construct_cmd);
    construct_cmd->add_option("--seed", construct_cfg.config.seed, "random seed");
    construct_cmd->add_option("--out", construct_out, "write the code file here");
    construct_cmd->add_option("--report", construct_report, "also write the run report JSON here");

    std::string verify_in;
    auto* verify_cmd = app.add_subcommand("verify", "check a code file");
    verify_cmd->add_option("--in", verify_in, "code file")->required();

    SpecArgs exact_spec;
    double time_limit_s = 60.0;
    std::size_t vertex_cap = kDefaultVertexCap;
    std::string witness_path;
    auto* exact_cmd = app.add_subcommand("exact", "exact A by maximum clique on small instances");
    exact_spec.add(exact_cmd, false);
    exact_cmd->add_option("--time-limit-s", time_limit_s, "search time limit in seconds")
        ->check(CLI::PositiveNumber);
    exact_cmd->add_option("--vertex-cap", vertex_cap, "largest word space accepted");
    exact_cmd->add_option("--witness", witness_path, "write the best code found here");

    SpecArgs stats_spec;
    std::string stats_mode = "closed-form";
    std::uint64_t stats_budget = kDefaultStatsBudget;
    auto* stats_cmd = app.add_subcommand("stats", "auxiliary hypergraph degree statistics");
    stats_spec.add(stats_cmd, false);
    stats_cmd->add_option("--mode", stats_mode, "closed-form or empirical")
        ->check(CLI::IsMember({"closed-form", "empirical"}));
    stats_cmd->add_option("--budget", stats_budget, "empirical enumeration budget");

    SpecArgs sweep_spec;
    ConfigArgs sweep_cfg;
    std::vector<std::uint64_t> sweep_seeds{0, 1, 2, 3, 4};
    std::string sweep_csv_path, sweep_json_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "constructions over increasing n");
    sweep_spec.add(sweep_cmd, true);
    sweep_cfg.add(sweep_cmd);
    sweep_cmd->add_option("--seeds", sweep_seeds, "seeds, comma separated")->delimiter(',');
    sweep_cmd->add_option("--csv", sweep_csv_path, "write the CSV table here");
    sweep_cmd->add_option("--json", sweep_json_path, "write the JSON table here");

    std::vector<std::string> argv_storage{"cwcmatch"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    SideLog log;
    try {
        log.open(g.log_path);
        const auto start = std::chrono::steady_clock::now();

        if (bound->parsed()) {
            const CodeSpec spec = bound_spec.spec();
            const BoundReport r = upper_bound(spec);
            out << (g.format == "csv" ? bound_csv(spec, r) : json_text(bound_json(spec, r)));
            log.line("bound " + spec.describe() + " ms=" + fixed2(elapsed_ms(start)));
            return kExitOk;
        }

        if (construct_cmd->parsed()) {
            const CodeSpec spec = construct_spec.spec();
            const Construction c = construct(spec, construct_cfg.resolve());
            log.line("construct " + spec.describe() + " seed=" + std::to_string(c.report.config.seed) +
                     " size=" + std::to_string(c.report.code_size) + " ms=" + fixed2(c.report.wall_time_ms));
            const Verdict verdict = verify(c.code);
            if (!verdict.ok()) {
                err << "error: constructed code failed verification: " << verdict.violation->reason << '\n';
                return kExitVerificationFailed;
            }
            if (!construct_out.empty()) write_code_file(construct_out, c.code);
            const std::string report = json_text(run_report_json(c.report));
            if (!construct_report.empty()) write_text(construct_report, report);
            out << report;
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const Code code = read_code_file(verify_in);
            const Verdict verdict = verify(code);
            out << json_text(verify_json(code, verdict));
            log.line("verify " + verify_in + " valid=" + (verdict.ok() ? "true" : "false") +
                     " ms=" + fixed2(elapsed_ms(start)));
            return verdict.ok() ? kExitOk : kExitVerificationFailed;
        }

        if (exact_cmd->parsed()) {
            const CodeSpec spec = exact_spec.spec();
            const auto limit = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit_s * 1000.0));
            const ExactResult r = exact_A(spec, limit, vertex_cap);
            std::optional<std::string> witness_file;
            if (!witness_path.empty()) {
                write_code_file(witness_path, r.witness);
                witness_file = witness_path;
            }
            out << json_text(exact_json(r, witness_file));
            log.line("exact " + spec.describe() + " status=" + to_string(r.status) +
                     " ms=" + fixed2(elapsed_ms(start)));
            return r.status == SearchStatus::exact ? kExitOk : kExitCapOrTimeout;
        }

        if (stats_cmd->parsed()) {
            const CodeSpec spec = stats_spec.spec();
            const DegreeMode mode = stats_mode == "empirical" ? DegreeMode::empirical : DegreeMode::closed_form;
            const DegreeStats stats = degree_stats(spec, mode, stats_budget);
            std::optional<ConflictDiagnostics> diagnostics;
            if (spec.kind() == CodeKind::ccc) diagnostics = conflict_diagnostics(spec, mode, stats_budget);
            out << json_text(stats_json(spec, stats, diagnostics));
            log.line("stats " + spec.describe() + " mode=" + stats_mode + " ms=" + fixed2(elapsed_ms(start)));
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            SweepPlan plan;
            plan.q = sweep_spec.q;
            plan.d = sweep_spec.d;
            plan.weight = sweep_spec.weight();
            plan.n_values = sweep_spec.n_values;
            plan.seeds = sweep_seeds;
            plan.config = sweep_cfg.resolve();
            const auto rows = run_sweep(plan, g.threads);
            for (const auto& row : rows)
                log.line("sweep n=" + std::to_string(row.n) + " best=" + std::to_string(row.best_size) +
                         " ms=" + fixed2(row.wall_time_ms));
            const std::string csv = sweep_csv(rows);
            const std::string json = json_text(sweep_json(plan, rows));
            if (!sweep_csv_path.empty()) write_text(sweep_csv_path, csv);
            if (!sweep_json_path.empty()) write_text(sweep_json_path, json);
            out << (g.format == "csv" ? csv : json);
            return kExitOk;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        log.line(std::string("budget exceeded: ") + e.what());
        return kExitCapOrTimeout;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        log.line(std::string("error: ") + e.what());
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

}  // namespace cwcmatch
