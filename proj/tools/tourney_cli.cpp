// Command-line front end: evaluate tournament solutions on a file, run
// experiment plans, query the exact small-n oracle, and run the
// majorization self-checks.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tourney/config.hpp"
#include "tourney/majorization.hpp"
#include "tourney/montecarlo.hpp"

namespace {

tourney::Tournament load_tournament(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tourney::IoError("cannot open tournament file: " + path);
    return tourney::parse_tournament(in);
}

std::string render_set(const tourney::AlternativeSet& s) {
    std::string out = "{";
    bool first = true;
    for (int i : s.members()) {
        if (!first) out.push_back(',');
        out += std::to_string(i + 1);  // 1-based labels in user-facing text
        first = false;
    }
    out.push_back('}');
    return out;
}

void cmd_solve(const std::string& path, const std::string& solution_list) {
    const tourney::Tournament t = load_tournament(path);
    for (tourney::Solution s : tourney::parse_solution_list(solution_list))
        std::cout << tourney::to_string(s) << ": " << render_set(tourney::choice_set(s, t)) << "\n";
}

void print_summary(const tourney::ExperimentResult& result) {
    std::printf("%-28s %6s %-6s %8s %12s %9s\n", "model", "n", "sol", "trials", "selects_all",
                "fraction");
    for (const auto& c : result.cells)
        std::printf("%-28s %6d %-6s %8lld %12lld %9.4f\n", c.model_text.c_str(), c.n,
                    tourney::to_string(c.solution), static_cast<long long>(c.trials),
                    static_cast<long long>(c.selects_all_count), c.fraction);
}

void cmd_simulate(const std::string& config_path, const std::string& preset_name,
                  const std::string& out_override, std::uint64_t seed_override, bool have_seed,
                  int workers) {
    tourney::Config cfg;
    if (!preset_name.empty()) {
        const tourney::Preset* p = tourney::find_preset(preset_name);
        if (!p) throw tourney::ConfigError("unknown preset '" + preset_name + "'");
        cfg = p->config;
    } else if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw tourney::IoError("cannot open config file: " + config_path);
        cfg = tourney::parse_config(in);
    } else {
        throw tourney::ConfigError("simulate needs --config or --preset");
    }
    if (!out_override.empty()) cfg.out = out_override;
    if (have_seed) cfg.seed = seed_override;

    const tourney::ExperimentResult result = tourney::run_experiment(tourney::to_plan(cfg), workers);
    const std::string csv = tourney::to_csv(result);
    if (cfg.out.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out || !(out << csv)) throw tourney::IoError("cannot write CSV to " + cfg.out);
    out.close();
    print_summary(result);
    std::printf("wrote %s\n", cfg.out.c_str());
}

void cmd_exact(int n, const std::string& model_text, const std::string& solution_name) {
    const tourney::ModelSpec model = tourney::parse_model(model_text);
    const tourney::Solution solution = tourney::parse_solution(solution_name);
    std::printf("%.12g\n", tourney::exact_probability(model, n, solution));
}

int cmd_verify_lemmas(const std::vector<int>& lemmas, int max_sum, long long trials,
                      std::uint64_t seed) {
    std::vector<int> run = lemmas.empty() ? std::vector<int>{6, 7, 9} : lemmas;
    bool all_pass = true;
    for (int id : run) {
        tourney::CheckReport report;
        switch (id) {
            case 6: report = tourney::check_subset_sum_expansion(trials, seed); break;
            case 7: report = tourney::check_degree_domination(5); break;
            case 9: report = tourney::check_move_equivalence(4, max_sum); break;
            default: throw tourney::ConfigError("unknown lemma id " + std::to_string(id));
        }
        std::printf("Lemma%d: %s (%s)\n", id, report.pass ? "PASS" : "FAIL", report.detail.c_str());
        all_pass = all_pass && report.pass;
    }
    return all_pass ? 0 : 1;
}

void cmd_presets() {
    for (const auto& p : tourney::presets()) {
        const auto& n = p.config.n_values;
        std::printf("%-10s %-52s n=%d..%d, trials=%lld\n", p.name, p.description, n.front(),
                    n.back(), static_cast<long long>(p.config.trials));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tournament solutions and seeded random-tournament experiments"};
    app.require_subcommand(1);

    int exit_code = 0;

    auto* solve = app.add_subcommand("solve", "evaluate solutions on a tournament file");
    std::string solve_file, solve_solutions = "COND,CNL,TC,UC,UCINF";
    solve->add_option("--file", solve_file, "tournament file")->required();
    solve->add_option("--solutions", solve_solutions, "comma-separated solution list");
    solve->callback([&] { cmd_solve(solve_file, solve_solutions); });

    auto* simulate = app.add_subcommand("simulate", "run an experiment plan and emit CSV");
    std::string sim_config, sim_preset, sim_out;
    std::uint64_t sim_seed = 0;
    int sim_workers = 1;
    simulate->add_option("--config", sim_config, "key=value config file");
    simulate->add_option("--preset", sim_preset, "bundled preset name (see 'presets')");
    simulate->add_option("--out", sim_out, "CSV output path (overrides config)");
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "root seed (overrides config)");
    simulate->add_option("--workers", sim_workers, "worker thread bound; output is identical for any value");
    simulate->callback([&] {
        cmd_simulate(sim_config, sim_preset, sim_out, sim_seed, seed_opt->count() > 0, sim_workers);
    });

    auto* exact = app.add_subcommand("exact", "exact selects-all probability by enumeration (n <= 6)");
    int exact_n = 0;
    std::string exact_model, exact_solution;
    exact->add_option("--n", exact_n, "number of alternatives")->required();
    exact->add_option("--model", exact_model, "model text, e.g. condorcet:p=0.5")->required();
    exact->add_option("--solution", exact_solution, "COND, CNL, TC, UC, or UCINF")->required();
    exact->callback([&] { cmd_exact(exact_n, exact_model, exact_solution); });

    auto* verify = app.add_subcommand("verify-lemmas", "run the majorization self-checks");
    std::vector<int> verify_lemmas;
    int verify_max_sum = 8;
    long long verify_trials = 1000;
    std::uint64_t verify_seed = 0;
    verify->add_option("--lemma", verify_lemmas, "check id (6, 7, or 9); repeatable; default all");
    verify->add_option("--max-sum", verify_max_sum, "vector sum bound for check 9");
    verify->add_option("--trials", verify_trials, "random pair count for check 6");
    verify->add_option("--seed", verify_seed, "seed for check 6");
    verify->callback([&] {
        exit_code = cmd_verify_lemmas(verify_lemmas, verify_max_sum, verify_trials, verify_seed);
    });

    auto* list = app.add_subcommand("presets", "list bundled experiment presets");
    list->callback([&] { cmd_presets(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const tourney::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const tourney::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
