#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "decompose.hpp"
#include "expansion.hpp"
#include "generators.hpp"
#include "graph.hpp"

namespace linforest {

struct ExperimentRecord {
    GeneratorSpec spec;
    int n = 0;
    long long m = 0;
    int dmax = 0, dmin = 0, gap = 0;
    std::string expansion;  // "holds" / "fails" / "skipped"
    std::string route;
    std::string status;
    bool success = false;
    int count = 0;
    int bound = 0;
    int oracle = -1;  // -1 when the instance is out of oracle range
    std::string reason;
    std::string error;  // nonempty when the instance raised
    double wall_ms = 0.0;
};

inline nlohmann::json spec_to_json(const GeneratorSpec& s) {
    return {{"family", to_string(s.family)}, {"n", s.n},    {"p", s.p.str()},
            {"r", s.r},                      {"eps", s.eps.str()}, {"seed", s.seed}};
}

inline GeneratorSpec spec_from_json(const nlohmann::json& j) {
    GeneratorSpec s;
    s.family = family_from_string(j.at("family").get<std::string>());
    s.n = j.at("n").get<int>();
    s.p = Rational::parse(j.at("p").get<std::string>());
    s.r = j.at("r").get<int>();
    s.eps = Rational::parse(j.at("eps").get<std::string>());
    s.seed = j.at("seed").get<uint64_t>();
    return s;
}

inline nlohmann::json record_to_json(const ExperimentRecord& r) {
    return {{"spec", spec_to_json(r.spec)},
            {"n", r.n},
            {"m", r.m},
            {"dmax", r.dmax},
            {"dmin", r.dmin},
            {"gap", r.gap},
            {"expansion", r.expansion},
            {"route", r.route},
            {"status", r.status},
            {"success", r.success},
            {"count", r.count},
            {"bound", r.bound},
            {"oracle", r.oracle},
            {"reason", r.reason},
            {"error", r.error},
            {"wall_ms", r.wall_ms}};
}

inline ExperimentRecord record_from_json(const nlohmann::json& j) {
    ExperimentRecord r;
    r.spec = spec_from_json(j.at("spec"));
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<long long>();
    r.dmax = j.at("dmax").get<int>();
    r.dmin = j.at("dmin").get<int>();
    r.gap = j.at("gap").get<int>();
    r.expansion = j.at("expansion").get<std::string>();
    r.route = j.at("route").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.success = j.at("success").get<bool>();
    r.count = j.at("count").get<int>();
    r.bound = j.at("bound").get<int>();
    r.oracle = j.at("oracle").get<int>();
    r.reason = j.at("reason").get<std::string>();
    r.error = j.at("error").get<std::string>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

struct RunParams {
    DecomposeOptions options{};
    ExpanderParams expander{Rational{1, 8}, Rational{1, 4}};
    int expander_exact_cap = 16;
    long long expander_trials = 400;
    int oracle_cap = 10;
    bool with_oracle = true;
};

// Runs one instance end to end; any throw lands in record.error so a bad
// instance never takes the batch down.
inline ExperimentRecord run_instance(const GeneratorSpec& spec, const RunParams& params) {
    ExperimentRecord rec;
    rec.spec = spec;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        SimpleGraph g = generate(spec);
        rec.n = g.size();
        rec.m = g.edge_count();
        rec.dmax = max_degree(g);
        rec.dmin = min_degree(g);
        rec.gap = rec.dmax - rec.dmin;
        if (rec.n <= params.expander_exact_cap) {
            auto v = is_robust_expander_exact(g, params.expander, params.expander_exact_cap);
            rec.expansion = v.holds ? "holds" : "fails";
        } else {
            auto v = is_robust_expander_sampled(g, params.expander, params.expander_trials, spec.seed + 1);
            rec.expansion = v.holds ? "holds" : "fails";
        }
        auto out = decompose(g, params.options);
        rec.route = to_string(out.route);
        rec.status = to_string(out.status);
        rec.success = out.success && out.status == SearchStatus::Found;
        rec.count = out.count;
        rec.bound = out.bound;
        rec.reason = out.reason;
        if (params.with_oracle && rec.n <= params.oracle_cap) {
            auto ex = la_exact(g, params.options.params.budget, params.oracle_cap);
            if (ex.status == SearchStatus::Found) rec.oracle = ex.count;
        }
    } catch (const std::exception& ex) {
        rec.error = ex.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// Serial worker pool: each instance is owned end to end and appended in spec
// order, so reruns with the same seeds reproduce the file modulo wall time.
inline std::vector<ExperimentRecord> run_experiment(const std::vector<GeneratorSpec>& specs,
                                                    const RunParams& params, const std::string& out_path) {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    nlohmann::json header = {{"header", {{"version", 1}, {"instances", specs.size()}}}};
    os << header.dump() << "\n";
    std::vector<ExperimentRecord> records;
    records.reserve(specs.size());
    for (const auto& spec : specs) {
        records.push_back(run_instance(spec, params));
        os << record_to_json(records.back()).dump() << "\n";
        os.flush();
    }
    return records;
}

struct RouteSummary {
    int instances = 0;
    int successes = 0;
    int at_half = 0;       // count <= ceil(dmax / 2)
    int at_target = 0;     // count == ceil((dmax + 1) / 2) when that exceeds ceil(dmax / 2)
    int above = 0;         // count > target with non-success status
    int oracle_checked = 0;
    int oracle_matched = 0;
    int errors = 0;
};

struct Summary {
    // keyed by family, then by route ("-" for errored instances)
    std::map<std::string, std::map<std::string, RouteSummary>> table;
    std::vector<std::string> malformed;  // "line N: why"
    int total = 0;

    std::string csv() const {
        std::ostringstream os;
        os << "family,route,instances,successes,at_half,at_target,above,oracle_checked,oracle_matched,errors\n";
        for (const auto& [family, routes] : table)
            for (const auto& [route, s] : routes)
                os << family << ',' << route << ',' << s.instances << ',' << s.successes << ',' << s.at_half
                   << ',' << s.at_target << ',' << s.above << ',' << s.oracle_checked << ','
                   << s.oracle_matched << ',' << s.errors << "\n";
        return os.str();
    }
};

inline void add_to_summary(Summary& sum, const ExperimentRecord& rec) {
    ++sum.total;
    const std::string family = to_string(rec.spec.family);
    if (!rec.error.empty()) {
        auto& s = sum.table[family]["-"];
        ++s.instances;
        ++s.errors;
        return;
    }
    auto& s = sum.table[family][rec.route];
    ++s.instances;
    if (rec.success) ++s.successes;
    const int half = (rec.dmax + 1) / 2;
    const int target = (rec.dmax + 2) / 2;
    if (rec.count <= half)
        ++s.at_half;
    else if (rec.count <= target)
        ++s.at_target;
    else
        ++s.above;
    if (rec.oracle >= 0) {
        ++s.oracle_checked;
        if (rec.oracle == rec.count) ++s.oracle_matched;
    }
}

inline Summary summarize(const std::string& records_path) {
    std::ifstream is(records_path);
    if (!is) throw std::runtime_error("cannot open '" + records_path + "' for reading");
    Summary sum;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            if (j.contains("header")) continue;
            add_to_summary(sum, record_from_json(j));
        } catch (const std::exception& ex) {
            sum.malformed.push_back("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return sum;
}

}  // namespace linforest
