#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "tourney/models.hpp"
#include "tourney/solutions.hpp"

namespace tourney {

/// Documented default root seed; fixed so fresh clones reproduce the
/// shipped CSV numbers and the acceptance suite.
inline constexpr std::uint64_t kDefaultSeed = 4;

/// One sweep over tournament sizes for a single model: per (n, solution)
/// cell, `trials` tournaments are drawn and each requested solution is
/// evaluated on the same sample.
struct ExperimentPlan {
    ModelSpec model;
    std::vector<int> n_values;
    std::vector<Solution> solutions;
    std::int64_t trials = 10000;
    std::uint64_t root_seed = kDefaultSeed;
};

struct CellResult {
    std::string model_text;
    int n = 0;
    std::string p_expr;   // empty for explicit matrices
    double p_value = 0.0; // NaN for explicit matrices
    Solution solution = Solution::Cond;
    std::int64_t trials = 0;
    std::int64_t selects_all_count = 0;
    double fraction = 0.0;  // selects_all_count / trials, exactly
};

struct ExperimentResult {
    std::vector<CellResult> cells;
    std::uint64_t root_seed = 0;
};

namespace detail {

struct CellContext {
    std::vector<EdgeProbabilityMatrix> voter_prefs;  // one shared matrix, or model-1 matrix
    int voters = 1;
    std::uint64_t stream_root = 0;
};

inline CellContext make_cell_context(const ModelSpec& model, int n, std::uint64_t root_seed,
                                     const std::string& model_text) {
    CellContext ctx;
    ctx.stream_root = derive_stream_root(root_seed, model_text, static_cast<std::uint64_t>(n));
    bool clamped = false;
    if (model.kind == ModelKind::Voters) {
        ctx.voters = model.voters;
        const double q = eval_pexpr_clamped(model.p, n, &clamped);
        ctx.voter_prefs.push_back(condorcet_matrix(n, q));
    } else {
        ctx.voters = 1;
        ctx.voter_prefs.push_back(instantiate_edge_matrix(model, n, &clamped));
    }
    if (clamped)
        std::fprintf(stderr, "warning: %s exceeds 0.5 at n=%d; clamped to 0.5\n", model_text.c_str(), n);
    return ctx;
}

inline Tournament sample_cell(const CellContext& ctx, std::uint64_t trial) {
    const Seed seed{ctx.stream_root, trial};
    if (ctx.voters == 1) return sample_model1(ctx.voter_prefs[0], seed);
    return sample_model2(ctx.voters, std::span<const EdgeProbabilityMatrix>(ctx.voter_prefs), seed);
}

}  // namespace detail

inline void validate_plan(const ExperimentPlan& plan) {
    if (plan.trials < 1) throw PlanError("trials must be at least 1");
    if (plan.n_values.empty()) throw PlanError("plan needs at least one n value");
    for (std::size_t i = 1; i < plan.n_values.size(); ++i)
        if (plan.n_values[i] <= plan.n_values[i - 1])
            throw PlanError("n values must be strictly increasing");
    if (plan.n_values.front() < 1) throw PlanError("n values must be positive");
    if (plan.solutions.empty()) throw PlanError("plan needs at least one solution");
    const std::string text = render_model(plan.model);
    for (int n : plan.n_values) {
        if (plan.model.kind == ModelKind::Gap && n < 2)
            throw PlanError("cell " + text + ", n=" + std::to_string(n) + ": gap model needs n >= 2");
        if (plan.model.kind == ModelKind::Explicit) {
            try {
                (void)instantiate_edge_matrix(plan.model, n);
            } catch (const Error& e) {
                throw PlanError("cell " + text + ", n=" + std::to_string(n) + ": " + e.what());
            }
        }
    }
}

/// Runs the plan.  Trials are partitioned across `workers` threads; every
/// trial outcome is a pure function of (root seed, model text, n, trial
/// index), so the result is identical for any worker count.
inline ExperimentResult run_experiment(const ExperimentPlan& plan, int workers = 1) {
    validate_plan(plan);
    if (workers < 1) workers = 1;

    const std::string model_text = render_model(plan.model);
    const std::size_t n_solutions = plan.solutions.size();

    ExperimentResult result;
    result.root_seed = plan.root_seed;

    for (int n : plan.n_values) {
        const detail::CellContext ctx = detail::make_cell_context(plan.model, n, plan.root_seed, model_text);

        const int used = static_cast<int>(std::min<std::int64_t>(workers, plan.trials));
        std::vector<std::vector<std::int64_t>> tallies(used, std::vector<std::int64_t>(n_solutions, 0));

        auto run_range = [&](int w, std::int64_t lo, std::int64_t hi) {
            DegreeVector degrees;
            for (std::int64_t t = lo; t < hi; ++t) {
                const Tournament trial = detail::sample_cell(ctx, static_cast<std::uint64_t>(t));
                degrees = out_degree_vector(trial);
                for (std::size_t s = 0; s < n_solutions; ++s)
                    if (selects_all_fast(plan.solutions[s], trial, degrees)) ++tallies[w][s];
            }
        };

        if (used == 1) {
            run_range(0, 0, plan.trials);
        } else {
            std::vector<std::thread> pool;
            const std::int64_t chunk = plan.trials / used, extra = plan.trials % used;
            std::int64_t at = 0;
            for (int w = 0; w < used; ++w) {
                const std::int64_t len = chunk + (w < extra ? 1 : 0);
                pool.emplace_back(run_range, w, at, at + len);
                at += len;
            }
            for (auto& th : pool) th.join();
        }

        std::string p_expr;
        double p_value = std::nan("");
        if (plan.model.kind != ModelKind::Explicit) {
            p_expr = render_pexpr(plan.model.p);
            p_value = eval_pexpr_clamped(plan.model.p, n);
        }
        for (std::size_t s = 0; s < n_solutions; ++s) {
            std::int64_t count = 0;
            for (int w = 0; w < used; ++w) count += tallies[w][s];
            CellResult cell;
            cell.model_text = model_text;
            cell.n = n;
            cell.p_expr = p_expr;
            cell.p_value = p_value;
            cell.solution = plan.solutions[s];
            cell.trials = plan.trials;
            cell.selects_all_count = count;
            cell.fraction = static_cast<double>(count) / static_cast<double>(plan.trials);
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

/// CSV rendering: one row per cell, floats with 6 significant digits, LF
/// newlines.  Byte-identical for identical plans.
inline std::string to_csv(const ExperimentResult& result) {
    std::string out = "model,n,p_expr,p_value,solution,trials,selects_all,fraction,root_seed\n";
    char buf[64];
    for (const auto& c : result.cells) {
        out += c.model_text;
        out += ',' + std::to_string(c.n) + ',' + c.p_expr + ',';
        if (!std::isnan(c.p_value)) {
            std::snprintf(buf, sizeof buf, "%.6g", c.p_value);
            out += buf;
        }
        out += ',';
        out += to_string(c.solution);
        out += ',' + std::to_string(c.trials) + ',' + std::to_string(c.selects_all_count) + ',';
        std::snprintf(buf, sizeof buf, "%.6g", c.fraction);
        out += buf;
        out += ',' + std::to_string(result.root_seed) + '\n';
    }
    return out;
}

/// Exact Pr[solution selects all alternatives] under independent-edge
/// probabilities, by exhaustive enumeration of all labeled tournaments.
/// Floating-point accumulation error is bounded by
/// 2^(n(n-1)/2) * n^2 * machine epsilon, negligible at the n <= 6 cap.
inline double exact_probability(const EdgeProbabilityMatrix& m, Solution solution) {
    const int n = m.size();
    if (n > kEnumerationCap)
        throw CapExceededError("exact probabilities are capped at n = " + std::to_string(kEnumerationCap));
    double total = 0.0;
    for_each_tournament(n, [&](const Tournament& t) {
        if (!selects_all(solution, t)) return;
        double w = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w *= t.edge(i, j) ? m.at(i, j) : m.at(j, i);
        total += w;
    });
    return total;
}

inline double exact_probability(const ModelSpec& model, int n, Solution solution) {
    if (n > kEnumerationCap)
        throw CapExceededError("exact probabilities are capped at n = " + std::to_string(kEnumerationCap));
    return exact_probability(instantiate_edge_matrix(model, n), solution);
}

/// Empirical check of the sparse-upset limit regime: runs the linear-order
/// model at upset probability c/n and reports how often COND, CNL, and TC
/// select everything, next to the limits 1-e^{-c}, 1-e^{-c}, (1-e^{-c})^2.
struct AnalyticLimitReport {
    double c = 0.0;
    int n = 0;
    std::int64_t trials = 0;
    double cond_fraction = 0.0, cnl_fraction = 0.0, tc_fraction = 0.0;
    double cond_target = 0.0, cnl_target = 0.0, tc_target = 0.0;
    double cond_stderr = 0.0, cnl_stderr = 0.0, tc_stderr = 0.0;
};

inline AnalyticLimitReport analytic_limit_check(double c, int n, std::int64_t trials,
                                                std::uint64_t root_seed, int workers = 1) {
    if (c < 0) throw RangeError("c must be nonnegative");
    if (n < 1 || c / n > 0.5) throw RangeError("need c/n <= 0.5; choose a larger n");

    ExperimentPlan plan;
    plan.model.kind = ModelKind::Condorcet;
    plan.model.p = PExpr{PExpr::Kind::Literal, c / n, 2};
    plan.n_values = {n};
    plan.solutions = {Solution::Cond, Solution::Cnl, Solution::TopCycle};
    plan.trials = trials;
    plan.root_seed = root_seed;
    const ExperimentResult res = run_experiment(plan, workers);

    AnalyticLimitReport rep;
    rep.c = c;
    rep.n = n;
    rep.trials = trials;
    rep.cond_fraction = res.cells[0].fraction;
    rep.cnl_fraction = res.cells[1].fraction;
    rep.tc_fraction = res.cells[2].fraction;
    const double limit = 1.0 - std::exp(-c);
    rep.cond_target = limit;
    rep.cnl_target = limit;
    rep.tc_target = limit * limit;
    auto se = [&](double f) { return std::sqrt(f * (1.0 - f) / static_cast<double>(trials)); };
    rep.cond_stderr = se(rep.cond_fraction);
    rep.cnl_stderr = se(rep.cnl_fraction);
    rep.tc_stderr = se(rep.tc_fraction);
    return rep;
}

}  // namespace tourney
