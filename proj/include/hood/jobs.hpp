#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hood/classifier.hpp"
#include "hood/cotrajectory.hpp"
#include "hood/finite_group.hpp"
#include "hood/heisenberg.hpp"
#include "hood/json_io.hpp"
#include "hood/newton.hpp"

namespace hood::jobs {

using nlohmann::json;

enum ExitCode : int { Ok = 0, SuiteFailed = 1, Schema = 2, Compute = 3, NotStabilized = 4 };

struct RunOptions {
    OracleParams defaults;
    bool timestamp = true;
};

struct Outcome {
    json report;
    int exit_code = Ok;
};

inline const std::vector<std::string>& task_names() {
    static const std::vector<std::string> t = {"entropy-matrix", "entropy-oracle",  "entropy-heisenberg",
                                               "oracle-heisenberg", "classify",   "rank",
                                               "dual",          "frattini",        "verify-addition"};
    return t;
}

/// CLI command name -> job task.
inline const std::map<std::string, std::string>& command_tasks() {
    static const std::map<std::string, std::string> m = {
        {"entropy", "entropy-matrix"}, {"oracle", "entropy-oracle"}, {"heisenberg", "entropy-heisenberg"},
        {"heisenberg-oracle", "oracle-heisenberg"}, {"classify", "classify"}, {"rank", "rank"},
        {"dual", "dual"}, {"frattini", "frattini"}, {"verify-at", "verify-addition"}};
    return m;
}

namespace detail {

using json_io::allow_only;
using json_io::field;
using json_io::get_int;
using json_io::get_int_or;
using json_io::get_matrix;
using json_io::get_prime;
using json_io::to_json;

inline OracleParams oracle_params(const json& job, const RunOptions& opt) {
    OracleParams p = opt.defaults;
    p.sweep = get_int_or(job, "sweep", p.sweep, "job");
    p.horizon = get_int_or(job, "horizon", p.horizon, "job");
    p.window = get_int_or(job, "window", p.window, "job");
    try {
        p.validate();
    } catch (const Error& e) {
        throw SchemaError(e.what());
    }
    return p;
}

inline PadicMatrix job_matrix(const json& job) {
    Prime p = get_prime(job, "prime", "job");
    PadicMatrix m = get_matrix(field(job, "matrix", "job"), p, "matrix");
    if (!m.is_square()) throw SchemaError("matrix must be square");
    return m;
}

inline void oracle_into(const OracleReport& r, json& report, int& code) {
    report["result"] = to_json(r);
    if (!r.ok()) {
        report["status"] = "not-stabilized";
        report["diagnostic"] = r.diagnostic;
        code = NotStabilized;
    }
}

inline json classification_citations(const ClassificationResult& r) {
    json c = json::array();
    for (const auto& t : r.trace) c.push_back(t.rule + ": " + t.citation);
    return c;
}

inline void dispatch(const std::string& task, const json& job, const RunOptions& opt, json& report, int& code) {
    json citations = json::array();

    if (task == "entropy-matrix") {
        allow_only(job, {"task", "prime", "matrix", "parts"}, "entropy-matrix job");
        if (job.contains("parts")) {
            if (job.contains("prime") || job.contains("matrix"))
                throw SchemaError("give either parts or prime/matrix");
            std::vector<std::pair<Prime, PadicMatrix>> parts;
            for (const auto& part : job.at("parts")) {
                allow_only(part, {"prime", "matrix"}, "part");
                parts.emplace_back(get_prime(part, "prime", "part"), job_matrix(part));
            }
            report["result"] = {{"entropy", to_json(entropy_sum_over_primes(parts))}};
            citations.push_back(json_io::json(citation_catalog().at("product.entropy-sum")));
        } else {
            PadicMatrix m = job_matrix(job);
            PadicPolynomial f = char_poly(m);
            report["result"] = {{"entropy", to_json(yuzvinski_entropy(m))},
                                {"char_poly", to_json(f)},
                                {"newton_polygon", to_json(newton_polygon(f))},
                                {"invariant_basis", invariant_basis_certificate(m)}};
        }
        citations.push_back(citation_catalog().at("padic.yuzvinski"));
    } else if (task == "entropy-oracle") {
        allow_only(job, {"task", "prime", "matrix", "sweep", "horizon", "window"}, "entropy-oracle job");
        PadicMatrix m = job_matrix(job);
        oracle_into(cotrajectory_entropy(m, oracle_params(job, opt)), report, code);
    } else if (task == "entropy-heisenberg") {
        allow_only(job, {"task", "endo"}, "entropy-heisenberg job");
        GradedEndo e = json_io::endo_from_json(field(job, "endo", "job"));
        report["result"] = {{"entropy", to_json(heisenberg_entropy(e))}};
        citations.push_back(citation_catalog().at("heisenberg.entropy-class"));
    } else if (task == "oracle-heisenberg") {
        allow_only(job, {"task", "endo", "sweep", "horizon", "window"}, "oracle-heisenberg job");
        GradedEndo e = json_io::endo_from_json(field(job, "endo", "job"));
        oracle_into(heisenberg_cotrajectory_oracle(e, oracle_params(job, opt)), report, code);
    } else if (task == "classify") {
        allow_only(job, {"task", "descriptor"}, "classify job");
        ClassificationResult r = classify(json_io::descriptor_from_json(field(job, "descriptor", "job")));
        report["result"] = to_json(r);
        citations = classification_citations(r);
    } else if (task == "rank") {
        allow_only(job, {"task", "descriptor"}, "rank job");
        GroupDescriptor g = json_io::descriptor_from_json(field(job, "descriptor", "job"));
        report["result"] = {{"p_rank", p_rank(g)}};
        citations.push_back(citation_catalog().at(std::holds_alternative<PadicLCA>(g) ? "padic.rank" : "heisenberg.rank"));
    } else if (task == "dual") {
        allow_only(job, {"task", "descriptor"}, "dual job");
        GroupDescriptor g = json_io::descriptor_from_json(field(job, "descriptor", "job"));
        const auto* pd = std::get_if<PadicLCA>(&g);
        if (!pd) throw SchemaError("dual needs a PadicLCA descriptor");
        PadicLCA d = pontryagin_dual(*pd);
        report["result"] = {{"dual", json_io::to_json(d)}, {"p_rank", p_rank(d)}};
        citations.push_back(citation_catalog().at("padic.duality"));
    } else if (task == "frattini") {
        allow_only(job, {"task", "group", "p", "k", "n", "omega"}, "frattini job");
        std::string kind = job.value("group", "heisenberg");
        Prime p = get_prime(job, "p", "job");
        long k = get_int(job, "k", "job");
        if (k < 1) throw SchemaError("k must be positive");
        FiniteGroup g = [&] {
            if (kind == "heisenberg") {
                long n = get_int(job, "n", "job");
                if (n < 1) throw SchemaError("n must be positive");
                return finite_heisenberg_group(p, static_cast<unsigned>(k), static_cast<unsigned>(n));
            }
            if (kind == "cyclic") return cyclic_group(p, static_cast<unsigned>(k));
            throw SchemaError("group must be 'heisenberg' or 'cyclic'");
        }();
        auto fr = frattini_and_rank(g);
        json result = {{"group", g.model().name},
                       {"order", g.order()},
                       {"frattini_order", fr.frattini.order()},
                       {"rank", fr.rank},
                       {"center_order", g.center().order()}};
        if (job.contains("omega")) {
            long w = get_int(job, "omega", "job");
            if (w < 1) throw SchemaError("omega must be positive");
            auto om = omega_series(g, static_cast<unsigned>(w));
            result["omega_lower_order"] = om.lower.order();
            result["omega_upper_order"] = om.upper.order();
        }
        report["result"] = result;
        citations.push_back(citation_catalog().at("heisenberg.rank"));
    } else if (task == "verify-addition") {
        allow_only(job, {"task", "prime", "matrix", "endo", "sweep", "horizon", "window"}, "verify-addition job");
        OracleParams params = oracle_params(job, opt);
        EntropyValue formula;
        OracleReport oracle;
        if (job.contains("endo")) {
            GradedEndo e = json_io::endo_from_json(job.at("endo"));
            formula = heisenberg_entropy(e);
            oracle = heisenberg_cotrajectory_oracle(e, params);
        } else {
            PadicMatrix m = job_matrix(job);
            formula = yuzvinski_entropy(m);
            oracle = cotrajectory_entropy(m, params);
        }
        oracle_into(oracle, report, code);
        report["result"]["formula"] = to_json(formula);
        report["result"]["equal"] = oracle.ok() && *oracle.entropy == formula;
        if (oracle.ok() && !(*oracle.entropy == formula)) {
            report["status"] = "rejected";
            report["diagnostic"] = "formula and oracle disagree";
            code = Compute;
        }
        citations.push_back(citation_catalog().at("padic.yuzvinski"));
    } else {
        throw SchemaError("unknown task '" + task + "'");
    }
    report["citations"] = citations;
}

inline std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

/// Runs one job. `forced_task`, when nonempty, is the task implied by the
/// CLI command; a job carrying a different task is a schema error.
inline Outcome run_job(const json& job, const RunOptions& opt = {}, const std::string& forced_task = {}) {
    Outcome out;
    out.report = {{"job", job}, {"status", "ok"}};
    try {
        json_io::require_object(job, "job");
        std::string task = forced_task;
        if (job.contains("task")) {
            if (!job.at("task").is_string()) throw SchemaError("task must be a string");
            std::string named = job.at("task").get<std::string>();
            if (!task.empty() && named != task) throw SchemaError("job task '" + named + "' does not match '" + task + "'");
            task = named;
        }
        if (task.empty()) throw SchemaError("job has no task");
        detail::dispatch(task, job, opt, out.report, out.exit_code);
    } catch (const SchemaError& e) {
        out.report["status"] = "rejected";
        out.report["error"] = e.kind();
        out.report["diagnostic"] = e.what();
        out.exit_code = Schema;
    } catch (const Error& e) {
        out.report["status"] = "rejected";
        out.report["error"] = e.kind();
        out.report["diagnostic"] = e.what();
        out.exit_code = Compute;
    } catch (const nlohmann::json::exception& e) {
        out.report["status"] = "rejected";
        out.report["error"] = "SchemaError";
        out.report["diagnostic"] = e.what();
        out.exit_code = Schema;
    }
    if (opt.timestamp) out.report["timestamp"] = detail::utc_now();
    return out;
}

/// A batch is either a single job object or an array of jobs. Jobs run
/// concurrently; reports keep input order. The exit code is the largest one.
inline Outcome run_batch(const json& input, const RunOptions& opt = {}, const std::string& forced_task = {}) {
    if (!input.is_array()) return run_job(input, opt, forced_task);
    std::vector<std::future<Outcome>> pending;
    for (const auto& job : input)
        pending.push_back(std::async(std::launch::async, [&job, &opt, &forced_task] { return run_job(job, opt, forced_task); }));
    Outcome all;
    all.report = json::array();
    for (auto& f : pending) {
        Outcome o = f.get();
        all.report.push_back(std::move(o.report));
        all.exit_code = std::max(all.exit_code, o.exit_code);
    }
    return all;
}

/// Plain-text rendering of a report for --format=table.
inline std::string render_table(const json& report) {
    if (report.is_array()) {
        std::string out;
        for (const auto& r : report) out += render_table(r) + "\n";
        return out;
    }
    std::ostringstream os;
    os << "status      " << report.value("status", "?") << "\n";
    if (report.contains("job") && report["job"].contains("task"))
        os << "task        " << report["job"]["task"].get<std::string>() << "\n";
    if (report.contains("diagnostic")) os << "diagnostic  " << report["diagnostic"].get<std::string>() << "\n";
    if (report.contains("result")) {
        const json& r = report["result"];
        for (auto it = r.begin(); it != r.end(); ++it) {
            const json& v = it.value();
            if (v.is_object() && v.contains("exact")) {
                os << it.key() << std::string(it.key().size() < 12 ? 12 - it.key().size() : 1, ' ')
                   << v["exact"].get<std::string>() << "  (" << v["decimal"].get<std::string>() << ", display only)\n";
            } else if (it.key() == "evidence") {
                os << "evidence    m  rate  log-index table\n";
                for (const auto& row : v) {
                    os << "            " << row["m"].get<long>() << "  "
                       << (row["rate"].is_null() ? std::string("-") : std::to_string(row["rate"].get<long>())) << "  ";
                    for (const auto& x : row["log_indices"]) os << x.get<long>() << " ";
                    os << "\n";
                }
            } else if (it.key() == "trace") {
                for (const auto& t : v) os << "trace       " << t["rule"].get<std::string>() << "\n";
            } else {
                os << it.key() << std::string(it.key().size() < 12 ? 12 - it.key().size() : 1, ' ') << v.dump() << "\n";
            }
        }
    }
    if (report.contains("citations"))
        for (const auto& c : report["citations"]) os << "cite        " << c.get<std::string>() << "\n";
    return os.str();
}

} // namespace hood::jobs
