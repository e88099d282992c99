// hood: batch front end. Jobs come in as JSON (a file path or inline text);
// reports go to stdout as JSON or, with --format=table, as plain text.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hood/hood.hpp"

namespace {

using nlohmann::json;

json load_job(const std::string& arg) {
    std::string text = arg;
    auto first = arg.find_first_not_of(" \t\r\n");
    bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
    if (!inline_json) {
        std::ifstream in(arg);
        if (!in) throw hood::SchemaError("cannot open job file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw hood::SchemaError(std::string("job is not valid JSON: ") + e.what());
    }
}

struct Flags {
    std::string format = "json";
    std::uint64_t seed = 0;
    long sweep = 6, horizon = 40, window = 8;
    bool no_timestamp = false;

    hood::jobs::RunOptions options() const {
        hood::jobs::RunOptions o;
        o.defaults = {sweep, horizon, window};
        o.timestamp = !no_timestamp;
        return o;
    }
};

int emit(const hood::jobs::Outcome& out, const Flags& f) {
    if (f.format == "table")
        std::cout << hood::jobs::render_table(out.report);
    else
        std::cout << out.report.dump(2) << "\n";
    return out.exit_code;
}

int run_command(const std::string& task, const std::string& job_arg, const Flags& f) {
    json job;
    try {
        job = load_job(job_arg);
    } catch (const hood::Error& e) {
        hood::jobs::Outcome out;
        out.report = {{"status", "rejected"}, {"error", e.kind()}, {"diagnostic", e.what()}};
        out.exit_code = hood::jobs::Schema;
        return emit(out, f);
    }
    return emit(hood::jobs::run_batch(job, f.options(), task), f);
}

int run_suite(const std::string& name, const Flags& f) {
    hood::OracleParams params{f.sweep, f.horizon, f.window};
    hood::suites::SuiteResult r = hood::suites::run(name, f.seed, params);
    if (f.format == "table") {
        std::cout << r.table();
    } else {
        json rows = json::array();
        for (const auto& row : r.rows) rows.push_back({{"case", row.label}, {"passed", row.passed}, {"detail", row.detail}});
        json report = {{"suite", name}, {"seed", f.seed}, {"passed", r.passed()}, {"cases", rows}};
        if (!f.no_timestamp) report["timestamp"] = hood::jobs::detail::utc_now();
        std::cout << report.dump(2) << "\n";
    }
    return r.passed() ? 0 : hood::jobs::SuiteFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hood: exact entropy computations on p-adic and Heisenberg groups"};
    app.require_subcommand(1);
    Flags f;
    app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", f.seed, "seed for randomized suites");
    app.add_option("--sweep", f.sweep, "largest scale m of the window sweep V_m = p^-m Z_p^n");
    app.add_option("--horizon", f.horizon, "cotrajectory length N");
    app.add_option("--window", f.window, "stabilization window w");
    app.add_flag("--no-timestamp", f.no_timestamp, "omit the timestamp field");

    std::string job_arg, suite_name;
    bool heis_oracle = false;
    int code = 0;

    struct Cmd { const char* name; const char* task; const char* help; };
    const Cmd cmds[] = {
        {"entropy", "entropy-matrix", "entropy of a matrix via its Newton polygon (or a sum over primes)"},
        {"oracle", "entropy-oracle", "entropy of a matrix via the cotrajectory oracle"},
        {"heisenberg", "entropy-heisenberg", "entropy of a graded Heisenberg endomorphism"},
        {"classify", "classify", "classify a group descriptor"},
        {"rank", "rank", "p-rank of a descriptor"},
        {"dual", "dual", "Pontryagin dual of a PadicLCA descriptor"},
        {"frattini", "frattini", "Frattini subgroup and rank of a finite Heisenberg or cyclic group"},
        {"verify-at", "verify-addition", "compare formula and oracle on one input"},
        {"run", "", "run jobs that name their own task"},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("job", job_arg, "job file or inline JSON")->required();
        if (std::string(c.name) == "heisenberg")
            sub->add_flag("--oracle", heis_oracle, "use the filtration oracle instead of the formula");
        std::string task = c.task;
        sub->callback([&, task] {
            std::string t = task;
            if (t == "entropy-heisenberg" && heis_oracle) t = "oracle-heisenberg";
            code = run_command(t, job_arg, f);
        });
    }
    CLI::App* suite = app.add_subcommand("suite", "run an acceptance suite");
    suite->add_option("name", suite_name, "suite name")->required()->check(CLI::IsMember(hood::suites::names()));
    suite->callback([&] { code = run_suite(suite_name, f); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : hood::jobs::Schema;
    } catch (const hood::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return hood::jobs::Compute;
    }
    return code;
}
