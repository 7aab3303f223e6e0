#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crossint/bounds.hpp"
#include "crossint/oracle.hpp"
#include "crossint/subsets.hpp"
#include "crossint/suites.hpp"

namespace crossint::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    int n = 0;
    std::vector<int> ks;
    std::string suite;
    int n_max = 8;
    int t_max = 4;
    std::uint64_t seed = 1;
    int trials = 1000;
    std::uint64_t budget_nodes = 500'000'000;
    double budget_seconds = 0.0;
    unsigned threads = 1;
    std::uint64_t max_space = 10'000'000;
    std::string format = "json";
    std::string out_path;
    bool no_timing = false;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact integers: a JSON number when it fits in 64 bits, a decimal string otherwise.
json count_json(const Count& c) {
    if (auto v = to_u64(c)) {
        return *v;
    }
    return to_string(c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') {
            q += '"';
        }
        q += ch;
    }
    return q + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

Params make_params(const RunConfig& cfg, std::ostream& err) {
    if (cfg.ks.empty()) {
        throw ConfigError("--ks is required");
    }
    Params p{cfg.n, cfg.ks};
    if (!std::is_sorted(p.ks.begin(), p.ks.end(), std::greater<>())) {
        std::sort(p.ks.begin(), p.ks.end(), std::greater<>());
        err << "warning: --ks reordered to " << p.ks_string() << "\n";
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

SearchLimits limits_of(const RunConfig& cfg) {
    SearchLimits l;
    l.max_nodes = cfg.budget_nodes;
    l.max_seconds = cfg.budget_seconds;
    l.threads = cfg.threads;
    return l;
}

json params_json(const Params& p) { return json{{"n", p.n}, {"ks", p.ks}}; }

json tuple_json(const SystemIDs& sys) {
    json ids = json::array();
    for (const auto& id : sys.ids) {
        ids.push_back(id.to_string());
    }
    return json{{"ids", ids}, {"class", label_name(classify_extremal(sys).label)}, {"size", count_json(sys.total_size())}};
}

// Every report carries the same top-level fields.
json report(const std::string& command) {
    return json{{"command", command}, {"params", nullptr}, {"regime", nullptr}, {"values", json::object()},
                {"tuples", json::array()}, {"classes", json::array()}, {"checks", 0}, {"failures", 0},
                {"runtime_ms", 0}};
}

const char* kCsvHeader = "n,t,ks,regime,lambda1,lambda2,bound,oracle,match,classes,elapsed_ms";

std::string csv_row(const Params& p, const std::string& regime, const std::optional<BoundBranches>& br,
                    const std::optional<Count>& oracle, std::optional<bool> match, const std::vector<std::string>& classes,
                    double elapsed_ms) {
    std::vector<std::string> f{std::to_string(p.n), std::to_string(p.t()), csv_field(p.ks_string()), regime};
    f.push_back(br ? to_string(br->star) : "");
    f.push_back(br ? to_string(br->kernel) : "");
    f.push_back(br ? to_string(br->max()) : "");
    f.push_back(oracle ? to_string(*oracle) : "");
    f.push_back(match ? (*match ? "true" : "false") : "");
    f.push_back(csv_field(join(classes, ";")));
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(3);
    ms << elapsed_ms;
    f.push_back(ms.str());
    return join(f, ",");
}

std::optional<BoundBranches> branches_for(const Params& p) {
    if (p.is_mixed()) {
        return lambda_values(p);
    }
    if (p.is_nonmixed()) {
        return nonmixed_branches(p);
    }
    return std::nullopt;
}

std::string branch_label(const BoundBranches& br) {
    if (br.star == br.kernel) {
        return "tie";
    }
    return br.star > br.kernel ? "star" : "kernel";
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct Outcome {
    int code = kSuccess;
    std::string text;  // full report body
};

Outcome cmd_bound(const RunConfig& cfg, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const Params p = make_params(cfg, err);
    const auto br = branches_for(p);
    if (!br) {
        throw ConfigError("no closed-form bound for n=" + std::to_string(p.n) + " ks=" + p.ks_string() +
                          " (needs k1+k3 <= n < k1+k2 with t >= 3, or n >= k1+k2)");
    }
    const std::string regime = regime_label(p);
    const double ms = cfg.no_timing ? 0.0 : elapsed_since(start);
    if (cfg.format == "csv") {
        return {kSuccess, std::string(kCsvHeader) + "\n" + csv_row(p, regime, br, std::nullopt, std::nullopt, {}, ms) + "\n"};
    }
    json r = report("bound");
    r["params"] = params_json(p);
    r["regime"] = regime;
    r["values"] = json{{"lambda1", count_json(br->star)},
                       {"lambda2", count_json(br->kernel)},
                       {"bound", count_json(br->max())},
                       {"branch", branch_label(*br)}};
    r["runtime_ms"] = ms;
    return {kSuccess, r.dump(2) + "\n"};
}

Outcome cmd_oracle(const RunConfig& cfg, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const Params p = make_params(cfg, err);
    if (p.n > kMaxOracleGround) {
        throw ConfigError("oracle supports n <= " + std::to_string(kMaxOracleGround));
    }
    const std::string regime = regime_label(p);
    const auto br = branches_for(p);
    MaxResult res = exact_max(p, limits_of(cfg));
    std::set<std::string> labels;
    json tuples = json::array();
    for (const auto& sys : res.extremal) {
        labels.insert(label_name(classify_extremal(sys).label));
        tuples.push_back(tuple_json(sys));
    }
    const std::vector<std::string> classes(labels.begin(), labels.end());
    std::optional<bool> match;
    if (br) {
        match = res.value == br->max();
    }
    const int code = match.value_or(true) ? kSuccess : kVerificationFailed;
    if (!match.value_or(true)) {
        err << "error: oracle " << to_string(res.value) << " differs from bound " << to_string(br->max()) << "\n";
    }
    const double ms = cfg.no_timing ? 0.0 : elapsed_since(start);
    if (cfg.format == "csv") {
        return {code, std::string(kCsvHeader) + "\n" + csv_row(p, regime, br, res.value, match, classes, ms) + "\n"};
    }
    json r = report("oracle");
    r["params"] = params_json(p);
    r["regime"] = regime;
    r["values"] = json{{"oracle", count_json(res.value)},
                       {"bound", br ? count_json(br->max()) : json(nullptr)},
                       {"match", match ? json(*match) : json(nullptr)},
                       {"nodes", res.nodes}};
    r["tuples"] = tuples;
    r["classes"] = classes;
    r["checks"] = match ? 1 : 0;
    r["failures"] = match && !*match ? 1 : 0;
    r["runtime_ms"] = ms;
    return {code, r.dump(2) + "\n"};
}

Outcome cmd_profile(const RunConfig& cfg, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const Params p = make_params(cfg, err);
    if (!p.is_mixed()) {
        throw ConfigError("profile needs the mixed window k1+k3 <= n < k1+k2");
    }
    const BoundBranches br = lambda_values(p);
    const auto members = id_window(p, 1).members();
    const auto profile = f_profile(p);
    const ProfileVerdict verdict = profile_verdict(profile);
    const Count top = *std::max_element(profile.begin(), profile.end());
    const double ms = cfg.no_timing ? 0.0 : elapsed_since(start);
    if (cfg.format == "csv") {
        std::string out = "index,id,f\n";
        for (std::size_t i = 0; i < profile.size(); ++i) {
            out += std::to_string(i + 1) + "," + csv_field(members[i].to_string()) + "," + to_string(profile[i]) + "\n";
        }
        return {kSuccess, out};
    }
    json values = json::array();
    json ids = json::array();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        values.push_back(count_json(profile[i]));
        ids.push_back(members[i].to_string());
    }
    json r = report("profile");
    r["params"] = params_json(p);
    r["regime"] = regime_label(p);
    r["values"] = json{{"profile", values},
                       {"ids", ids},
                       {"lambda1", count_json(br.star)},
                       {"lambda2", count_json(br.kernel)},
                       {"first_is_lambda1", profile.front() == br.star},
                       {"last_is_lambda2", profile.back() == br.kernel},
                       {"max", count_json(top)},
                       {"verdict", verdict_name(verdict)}};
    r["runtime_ms"] = ms;
    return {kSuccess, r.dump(2) + "\n"};
}

Outcome cmd_verify(const RunConfig& cfg, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
        throw ConfigError("unknown suite '" + cfg.suite + "' (expected one of " + join(names, ", ") + ")");
    }
    SuiteOptions opts;
    opts.n_max = cfg.n_max;
    opts.seed = cfg.seed;
    opts.kk_trials = cfg.trials;
    opts.max_space = cfg.max_space;
    opts.limits = limits_of(cfg);
    SuiteResult res = run_suite(cfg.suite, opts);
    const int code = res.passed() ? kSuccess : kVerificationFailed;
    for (const auto& s : res.samples) {
        err << "fail: " << s << "\n";
    }
    const double ms = cfg.no_timing ? 0.0 : elapsed_since(start);
    if (cfg.format == "csv") {
        return {code, "suite,n_max,seed,checks,failures\n" + cfg.suite + "," + std::to_string(cfg.n_max) + "," +
                          std::to_string(cfg.seed) + "," + std::to_string(res.checks) + "," +
                          std::to_string(res.failures) + "\n"};
    }
    json r = report("verify");
    r["values"] = json{{"suite", cfg.suite},
                       {"n_max", cfg.n_max},
                       {"seed", cfg.seed},
                       {"passed", res.passed()},
                       {"failing", res.failing},
                       {"samples", res.samples},
                       {"notes", res.notes}};
    r["checks"] = res.checks;
    r["failures"] = res.failures;
    r["runtime_ms"] = ms;
    return {code, r.dump(2) + "\n"};
}

Outcome cmd_sweep(const RunConfig& cfg, std::ostream& /*err*/) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.n_max > kMaxOracleGround) {
        throw ConfigError("sweep supports --n-max <= " + std::to_string(kMaxOracleGround));
    }
    std::vector<Params> grid = mixed_grid(cfg.n_max, 3, cfg.t_max, cfg.max_space);
    for (const Params& p : nonmixed_grid(cfg.n_max, 2, cfg.t_max, cfg.max_space)) {
        grid.push_back(p);
    }
    std::sort(grid.begin(), grid.end(), [](const Params& a, const Params& b) {
        return std::tie(a.n, a.ks) < std::tie(b.n, b.ks);
    });
    const SearchLimits limits = limits_of(cfg);
    std::unique_ptr<CrossTables> tables;
    std::vector<SweepRow> rows;
    for (const Params& p : grid) {
        if (!tables || tables->ground() != p.n) {
            tables = std::make_unique<CrossTables>(p.n);
        }
        rows.push_back(evaluate_row(p, *tables, limits));
        if (cfg.no_timing) {
            rows.back().elapsed_ms = 0.0;
        }
    }
    std::uint64_t mismatches = 0;
    std::uint64_t exhausted = 0;
    for (const auto& row : rows) {
        if (!row.oracle) {
            ++exhausted;
        } else if (!row.match) {
            ++mismatches;
        }
    }
    const int code = mismatches ? kVerificationFailed : exhausted ? kBudgetExhausted : kSuccess;
    const double ms = cfg.no_timing ? 0.0 : elapsed_since(start);
    if (cfg.format == "csv") {
        std::string out = std::string(kCsvHeader) + "\n";
        for (const auto& row : rows) {
            const BoundBranches br{row.lambda1, row.lambda2};
            out += csv_row(row.params, row.regime, br, row.oracle,
                           row.oracle ? std::optional<bool>(row.match) : std::nullopt, row.classes, row.elapsed_ms) +
                   "\n";
        }
        return {code, out};
    }
    json jrows = json::array();
    std::set<std::string> all_classes;
    for (const auto& row : rows) {
        json tuples = json::array();
        for (const auto& sys : row.extremal) {
            tuples.push_back(tuple_json(sys));
        }
        all_classes.insert(row.classes.begin(), row.classes.end());
        jrows.push_back(json{{"params", params_json(row.params)},
                             {"regime", row.regime},
                             {"lambda1", count_json(row.lambda1)},
                             {"lambda2", count_json(row.lambda2)},
                             {"bound", count_json(row.bound)},
                             {"oracle", row.oracle ? count_json(*row.oracle) : json(nullptr)},
                             {"match", row.oracle ? json(row.match) : json(nullptr)},
                             {"classes", row.classes},
                             {"tuples", tuples},
                             {"elapsed_ms", row.elapsed_ms}});
    }
    json r = report("sweep");
    r["params"] = json{{"n_max", cfg.n_max}, {"t_max", cfg.t_max}, {"max_space", cfg.max_space}};
    r["regime"] = "all";
    r["values"] = json{{"rows", jrows}, {"budget_exhausted", exhausted}};
    r["classes"] = std::vector<std::string>(all_classes.begin(), all_classes.end());
    r["checks"] = rows.size() - exhausted;
    r["failures"] = mismatches;
    r["runtime_ms"] = ms;
    return {code, r.dump(2) + "\n"};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact bounds and brute-force verification for pairwise cross-intersecting families", "crossint"};
    app.require_subcommand(1);

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "ground set size")->required()->check(CLI::Range(1, kMaxGround));
        sub->add_option("--ks", cfg.ks, "family sizes, comma separated")->required()->delimiter(',');
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget-nodes", cfg.budget_nodes, "search node budget")->check(CLI::PositiveNumber);
        sub->add_option("--budget-seconds", cfg.budget_seconds, "search time budget (0: none)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--threads", cfg.threads, "search threads")->check(CLI::Range(1u, 256u));
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write the report to a file");
        sub->add_flag("--no-timing", cfg.no_timing, "report zero timings for reproducible output");
    };

    CLI::App* bound = app.add_subcommand("bound", "closed-form maximum and its two branches");
    add_params(bound);
    add_output(bound);

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive maximum over lex-initial systems");
    add_params(oracle);
    add_budget(oracle);
    add_output(oracle);

    CLI::App* profile = app.add_subcommand("profile", "system size along the first ID window");
    add_params(profile);
    add_output(profile);

    CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("--suite", cfg.suite, "lex, partners, increments, oracle, kk or bounds")->required();
    verify->add_option("--n-max", cfg.n_max, "largest ground size")->check(CLI::Range(1, kMaxOracleGround));
    verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--trials", cfg.trials, "random pairs per ground size (kk)")->check(CLI::PositiveNumber);
    verify->add_option("--max-space", cfg.max_space, "skip oracle tuples with a larger search space")
        ->check(CLI::PositiveNumber);
    add_budget(verify);
    add_output(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "bound against oracle over a parameter grid");
    sweep->add_option("--n-max", cfg.n_max, "largest ground size")->check(CLI::Range(1, kMaxOracleGround));
    sweep->add_option("--t-max", cfg.t_max, "largest number of families")->check(CLI::Range(2, 8));
    sweep->add_option("--max-space", cfg.max_space, "skip tuples with a larger search space")->check(CLI::PositiveNumber);
    add_budget(sweep);
    add_output(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidConfig;
    }

    Outcome result;
    try {
        if (bound->parsed()) {
            result = cmd_bound(cfg, err);
        } else if (oracle->parsed()) {
            result = cmd_oracle(cfg, err);
        } else if (profile->parsed()) {
            result = cmd_profile(cfg, err);
        } else if (verify->parsed()) {
            result = cmd_verify(cfg, err);
        } else {
            result = cmd_sweep(cfg, err);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const BudgetExceeded& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kBudgetExhausted;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    }

    if (cfg.out_path.empty()) {
        out << result.text;
    } else {
        std::ofstream file(cfg.out_path);
        if (!file) {
            err << "error: cannot write " << cfg.out_path << "\n";
            return kInvalidConfig;
        }
        file << result.text;
    }
    return result.code;
}

}  // namespace crossint::cli
