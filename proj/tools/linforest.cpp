#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linforest/decompose.hpp"
#include "linforest/expansion.hpp"
#include "linforest/experiment.hpp"
#include "linforest/generators.hpp"
#include "linforest/graph.hpp"
#include "linforest/io.hpp"
#include "linforest/matching.hpp"
#include "linforest/realize.hpp"

using nlohmann::json;
using namespace linforest;

// exit codes: 0 success, 1 verdict-negative, 2 usage error, 3 budget exhausted
namespace {

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
        os = &file;
    }
    std::ostream& get() { return *os; }
};

std::string slurp(const std::string& path) {
    std::ostringstream ss;
    if (path.empty() || path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
        ss << f.rdbuf();
    }
    return ss.str();
}

SimpleGraph load_graph(const std::string& path, std::string fmt) {
    std::string text = slurp(path);
    std::istringstream is(text);
    std::string line;
    if (!linforest::detail::next_data_line(is, line)) throw std::invalid_argument("input graph: empty input");
    if (fmt == "auto") fmt = line.find_first_of(" \t") != std::string::npos ? "edgelist" : "graph6";
    if (fmt == "edgelist") return read_edge_list(text);
    if (fmt == "graph6") {
        while (!line.empty() && isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        return read_graph6(line);
    }
    throw std::invalid_argument("input graph: unknown format '" + fmt + "'");
}

json edges_json(const std::vector<Edge>& edges) {
    json a = json::array();
    for (const auto& e : edges) a.push_back({e.first, e.second});
    return a;
}

json forests_json(const std::vector<LinearForest>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back(edges_json(f.edges));
    return a;
}

template <class G>
void emit_graph(std::ostream& os, const G& g, const std::string& format) {
    if (format == "edgelist") {
        write_edge_list(os, g);
        return;
    }
    if (format == "csv") {
        os << "u,v\n";
        auto es = g.edges();
        std::sort(es.begin(), es.end());
        for (const auto& e : es) os << e.first << ',' << e.second << '\n';
        return;
    }
    json j = {{"n", g.size()}, {"m", g.edge_count()}, {"edges", edges_json(g.edges())}};
    os << j.dump(2) << '\n';
}

void emit_report(std::ostream& os, const json& j, const std::string& format) {
    if (format == "csv") {
        for (auto it = j.begin(); it != j.end(); ++it)
            os << it.key() << ',' << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
        return;
    }
    os << j.dump(2) << '\n';
}

SearchBudget budget_for(long long budget_ms) {
    if (budget_ms > 0) return SearchBudget::nodes(budget_ms * 20000);
    return SearchBudget::from_env();
}

int status_code(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return 0;
        case SearchStatus::None: return 1;
        default: return 3;
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linforest: linear-forest decomposition toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global options after the subcommand name too

    uint64_t seed = 0;
    std::string format = "json", out_path;
    app.add_option("--seed", seed, "master random seed");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "edgelist"}));
    app.add_option("--out", out_path, "output file (default stdout)");

    std::string in_path, in_format = "auto";
    long long budget_ms = 0;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--in", in_path, "input graph file (default stdin)");
        cmd->add_option("--informat", in_format, "input format")
            ->check(CLI::IsMember({"auto", "edgelist", "graph6"}));
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget-ms", budget_ms, "search budget in milliseconds (20000 nodes/ms)");
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph from a named family");
    std::string family_name = "gnp", p_str = "1/2", eps_str = "1/20";
    int gen_n = 10, gen_r = 0;
    gen->add_option("--family", family_name, "family name")->required();
    gen->add_option("-n,--n", gen_n, "number of vertices");
    gen->add_option("--p", p_str, "edge probability / density (rational or decimal)");
    gen->add_option("--r", gen_r, "regular degree");
    gen->add_option("--eps", eps_str, "epsilon parameter");

    // check-expander
    auto* chk = app.add_subcommand("check-expander", "robust-expansion verdict");
    std::string nu_str = "1/8", tau_str = "1/4";
    int exact_cap = 16;
    long long trials = 2000;
    add_input(chk);
    chk->add_option("--nu", nu_str, "robustness parameter");
    chk->add_option("--tau", tau_str, "size-window parameter");
    chk->add_option("--exact-cap", exact_cap, "largest order checked exhaustively");
    chk->add_option("--trials", trials, "sampled trials beyond the cap");

    // deficiency
    auto* def = app.add_subcommand("deficiency", "matching deficiency and certificate");
    int def_cap = 16;
    add_input(def);
    def->add_option("--cap", def_cap, "largest order for the certificate search");

    // realize
    auto* rel = app.add_subcommand("realize", "realize a degree sequence");
    std::string degrees_str;
    bool want_simple = false;
    rel->add_option("--degrees", degrees_str, "comma-separated degree sequence")->required();
    rel->add_flag("--simple", want_simple, "realize as a simple graph instead of a multigraph");

    // hamilton
    auto* ham = app.add_subcommand("hamilton", "hamilton paths, cycles, decompositions");
    std::string ham_mode = "decompose";
    int ham_from = 0, ham_to = 1, ham_cap = 16;
    add_input(ham);
    add_budget(ham);
    ham->add_option("--mode", ham_mode, "what to search for")
        ->check(CLI::IsMember({"decompose", "cycle", "path"}));
    ham->add_option("--from", ham_from, "path start vertex");
    ham->add_option("--to", ham_to, "path end vertex");
    ham->add_option("--cap", ham_cap, "decomposition order cap");

    // la
    auto* la = app.add_subcommand("la", "exact linear arboricity");
    int la_cap = 12;
    add_input(la);
    add_budget(la);
    la->add_option("--cap", la_cap, "largest order the exact solver accepts");

    // decompose
    auto* dec = app.add_subcommand("decompose", "decompose into linear forests");
    std::string eta_str = "3/10", alpha_str = "1/2", strategy_str = "auto";
    int k_max = 2, pipe_cap = 16, oracle_cap = 12;
    add_input(dec);
    add_budget(dec);
    dec->add_option("--nu", nu_str, "expansion parameter (recorded in the trace)");
    dec->add_option("--tau", tau_str, "expansion parameter (recorded in the trace)");
    dec->add_option("--eta", eta_str, "degree-class threshold");
    dec->add_option("--alpha", alpha_str, "density parameter (recorded in the trace)");
    dec->add_option("--strategy", strategy_str, "route selection")
        ->check(CLI::IsMember({"auto", "oracle", "pipeline"}));
    dec->add_option("--k-max", k_max, "matching cap in the equalization stage");
    dec->add_option("--cap", pipe_cap, "pipeline order cap");
    dec->add_option("--oracle-cap", oracle_cap, "largest order for the exact fallback");

    // bench
    auto* bench = app.add_subcommand("bench", "run the experiment corpus");
    std::string families_str = "gnp,random_regular,dirac", records_path = "bench.jsonl";
    int bench_count = 20, bench_n = 10;
    bool no_oracle = false;
    add_budget(bench);
    bench->add_option("--families", families_str, "comma-separated family list");
    bench->add_option("--count", bench_count, "instances per family");
    bench->add_option("-n,--n", bench_n, "base order");
    bench->add_option("--records", records_path, "JSON-lines output path");
    bench->add_option("--oracle-cap", oracle_cap, "largest order cross-checked exactly");
    bench->add_flag("--no-oracle", no_oracle, "skip the exact cross-check");

    // summarize
    auto* summ = app.add_subcommand("summarize", "aggregate a records file");
    summ->add_option("--records", records_path, "JSON-lines records path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        OutStream out;
        out.open(out_path);

        if (gen->parsed()) {
            GeneratorSpec spec;
            spec.family = family_from_string(family_name);
            spec.n = gen_n;
            spec.p = Rational::parse(p_str);
            spec.r = gen_r;
            spec.eps = Rational::parse(eps_str);
            spec.seed = seed;
            emit_graph(out.get(), generate(spec), format);
            return 0;
        }

        if (chk->parsed()) {
            SimpleGraph g = load_graph(in_path, in_format);
            ExpanderParams params{Rational::parse(nu_str), Rational::parse(tau_str)};
            ExpansionVerdict v;
            std::string mode;
            if (g.size() <= exact_cap) {
                v = is_robust_expander_exact(g, params, exact_cap);
                mode = "exact";
            } else {
                v = is_robust_expander_sampled(g, params, trials, seed + 1);
                mode = "sampled";
            }
            json j = {{"holds", v.holds}, {"mode", mode}, {"sets_checked", v.sets_checked}};
            if (v.witness) {
                j["witness"] = {{"set", v.witness->set}, {"robust_neighborhood", v.witness->rn_size}};
            }
            emit_report(out.get(), j, format);
            return v.holds ? 0 : 1;
        }

        if (def->parsed()) {
            SimpleGraph g = load_graph(in_path, in_format);
            auto mm = max_matching(g);
            json j = {{"n", g.size()},
                      {"matching_size", mm.edges.size()},
                      {"deficiency", deficiency_value(g)}};
            if (g.size() <= def_cap) {
                auto cert = deficiency_certificate(g, def_cap);
                j["certificate"] = {{"x", cert.x}, {"components", cert.components}, {"df", cert.df}};
            }
            emit_report(out.get(), j, format);
            return 0;
        }

        if (rel->parsed()) {
            auto degrees = parse_int_list(degrees_str);
            if (want_simple) {
                SimpleGraph g = linforest::detail::havel_hakimi_simple(degrees);
                emit_graph(out.get(), g, format);
            } else {
                MultiGraph g = hakimi_multigraph(degrees);
                emit_graph(out.get(), g, format);
            }
            return 0;
        }

        if (ham->parsed()) {
            SimpleGraph g = load_graph(in_path, in_format);
            SearchBudget budget = budget_for(budget_ms);
            if (ham_mode == "decompose") {
                auto r = hamilton_decomposition(g, budget, std::max(ham_cap, g.size()));
                json j = {{"status", to_string(r.status)}, {"cycles", r.cycles}};
                emit_report(out.get(), j, format);
                return status_code(r.status);
            }
            if (ham_mode == "cycle") {
                auto r = hamilton_cycle(g, budget);
                json j = {{"status", to_string(r.status)}, {"cycle", r.path}};
                emit_report(out.get(), j, format);
                return status_code(r.status);
            }
            auto r = hamilton_path(g, ham_from, ham_to, budget);
            json j = {{"status", to_string(r.status)}, {"path", r.path}};
            emit_report(out.get(), j, format);
            return status_code(r.status);
        }

        if (la->parsed()) {
            SimpleGraph g = load_graph(in_path, in_format);
            auto r = la_exact(g, budget_for(budget_ms), la_cap);
            json j = {{"status", to_string(r.status)}, {"count", r.count}, {"forests", forests_json(r.forests)}};
            emit_report(out.get(), j, format);
            return status_code(r.status);
        }

        if (dec->parsed()) {
            SimpleGraph g = load_graph(in_path, in_format);
            DecomposeOptions opt;
            opt.params.nu = Rational::parse(nu_str);
            opt.params.tau = Rational::parse(tau_str);
            opt.params.eta = Rational::parse(eta_str);
            opt.params.alpha = Rational::parse(alpha_str);
            opt.params.k_max = k_max;
            opt.params.cap = pipe_cap;
            opt.params.budget = budget_for(budget_ms);
            opt.oracle_cap = oracle_cap;
            opt.strategy = strategy_str == "oracle"     ? Strategy::Oracle
                           : strategy_str == "pipeline" ? Strategy::Pipeline
                                                        : Strategy::Auto;
            auto r = decompose(g, opt);
            json j = {{"count", r.count},
                      {"bound", r.bound},
                      {"route", to_string(r.route)},
                      {"forests", forests_json(r.forests)},
                      {"status", to_string(r.status)},
                      {"success", r.success},
                      {"reason", r.reason}};
            emit_report(out.get(), j, format);
            return status_code(r.status);
        }

        if (bench->parsed()) {
            std::vector<GeneratorSpec> specs;
            uint64_t index = 0;
            std::istringstream fams(families_str);
            std::string fam;
            while (std::getline(fams, fam, ',')) {
                if (fam.empty()) continue;
                Family family = family_from_string(fam);
                for (int i = 0; i < bench_count; ++i) {
                    GeneratorSpec s;
                    s.family = family;
                    s.n = bench_n;
                    s.seed = derive_seed(seed, index++);
                    switch (family) {
                        case Family::gnp: s.p = Rational{1, 2}; break;
                        case Family::random_regular:
                            s.r = std::max(2, bench_n / 2);
                            if ((static_cast<long long>(s.n) * s.r) % 2 != 0) ++s.r;
                            break;
                        case Family::almost_regular:
                            s.n = bench_n | 1;
                            s.r = std::max(3, bench_n / 2) | 1;
                            if (s.r + 1 >= s.n) s.r = s.n - 2 - (s.n % 2);
                            break;
                        case Family::dirac: break;
                        case Family::quasirandom_blowup:
                            s.p = Rational{1, 2};
                            s.eps = Rational{1, 5};
                            break;
                        case Family::counterexample_k3_gadget: s.n = std::max(9, bench_n) + i; break;
                        case Family::counterexample_three_blocks:
                            s.n = 32 * (1 + i % 2);
                            s.eps = Rational{1, 16};
                            break;
                    }
                    specs.push_back(s);
                }
            }
            RunParams rp;
            rp.options.params.budget = budget_for(budget_ms);
            rp.oracle_cap = oracle_cap;
            rp.with_oracle = !no_oracle;
            auto records = run_experiment(specs, rp, records_path);
            Summary sum;
            for (const auto& r : records) add_to_summary(sum, r);
            if (format == "csv")
                out.get() << sum.csv();
            else
                emit_report(out.get(),
                            {{"records", records.size()}, {"path", records_path}, {"summary_csv", sum.csv()}},
                            format);
            return 0;
        }

        if (summ->parsed()) {
            auto sum = summarize(records_path);
            if (format == "csv") {
                out.get() << sum.csv();
                for (const auto& bad : sum.malformed) out.get() << "# " << bad << "\n";
            } else {
                json j = {{"total", sum.total}, {"malformed", sum.malformed}, {"csv", sum.csv()}};
                emit_report(out.get(), j, format);
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
