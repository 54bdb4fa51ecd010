#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tourney/montecarlo.hpp"

namespace tourney {

/// Declarative experiment description, read from flat key=value text.
///
///   model=condorcet | gap | voters:k=<odd> | explicit:file=<path>
///   p=<expression>            (omitted for explicit matrices)
///   n=<comma-separated sizes>
///   trials=<count>            (default 10000)
///   solutions=<comma list>    (default COND,TC,UC)
///   seed=<u64>                (default 314159)
///   out=<csv path>            (optional; stdout when omitted)
///
/// Blank lines and lines starting with '#' are ignored; unknown keys are
/// rejected.
struct Config {
    ModelSpec model;
    std::vector<int> n_values;
    std::vector<Solution> solutions = {Solution::Cond, Solution::TopCycle, Solution::Uncovered};
    std::int64_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::string out;

    bool operator==(const Config&) const = default;
};

namespace detail {

/// Model head without the p expression: condorcet, gap, voters:k=K,
/// explicit:file=PATH.
inline ModelSpec parse_model_kind(std::string_view text) {
    if (text == "condorcet") return {ModelKind::Condorcet, {}, 1, {}};
    if (text == "gap") return {ModelKind::Gap, {}, 1, {}};
    if (text.rfind("voters:", 0) == 0 || text.rfind("explicit:", 0) == 0) {
        // reuse the full parser with a placeholder p where needed
        if (text.rfind("explicit:", 0) == 0) return parse_model(text);
        ModelSpec m = parse_model(std::string(text) + ",p=0");
        m.p = PExpr{};
        return m;
    }
    throw ConfigError("unknown model '" + std::string(text) + "'");
}

inline std::string render_model_kind(const ModelSpec& m) {
    switch (m.kind) {
        case ModelKind::Condorcet: return "condorcet";
        case ModelKind::Gap: return "gap";
        case ModelKind::Voters: return "voters:k=" + std::to_string(m.voters);
        case ModelKind::Explicit: return "explicit:file=" + m.matrix_file;
    }
    return "?";
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t at = 0;
    while (at <= s.size()) {
        const std::size_t next = s.find(sep, at);
        if (next == std::string_view::npos) {
            out.emplace_back(s.substr(at));
            break;
        }
        out.emplace_back(s.substr(at, next - at));
        at = next + 1;
    }
    return out;
}

}  // namespace detail

inline std::vector<Solution> parse_solution_list(std::string_view text) {
    std::vector<Solution> out;
    for (const auto& item : detail::split(text, ','))
        if (!item.empty()) out.push_back(parse_solution(item));
    if (out.empty()) throw ConfigError("solution list is empty");
    return out;
}

inline std::string render_solution_list(const std::vector<Solution>& list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out.push_back(',');
        out += to_string(list[i]);
    }
    return out;
}

inline Config parse_config(std::istream& in) {
    Config cfg;
    bool have_model = false, have_n = false, have_p = false;
    PExpr p;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == '#') continue;
        const std::size_t end = line.find_last_not_of(" \t\r");
        const std::string_view body(line.data() + begin, end - begin + 1);
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        const std::string_view key = body.substr(0, eq);
        const std::string_view value = body.substr(eq + 1);

        if (key == "model") {
            cfg.model = detail::parse_model_kind(value);
            have_model = true;
        } else if (key == "p") {
            p = parse_pexpr(value);
            have_p = true;
        } else if (key == "n") {
            cfg.n_values.clear();
            for (const auto& item : detail::split(value, ',')) {
                try {
                    cfg.n_values.push_back(std::stoi(item));
                } catch (...) {
                    throw ConfigError("invalid n value '" + item + "'");
                }
            }
            have_n = true;
        } else if (key == "trials") {
            try {
                cfg.trials = std::stoll(std::string(value));
            } catch (...) {
                throw ConfigError("invalid trials value");
            }
        } else if (key == "solutions") {
            cfg.solutions = parse_solution_list(value);
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(std::string(value));
            } catch (...) {
                throw ConfigError("invalid seed value");
            }
        } else if (key == "out") {
            cfg.out = std::string(value);
        } else {
            throw ConfigError("unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_model) throw ConfigError("missing required key 'model'");
    if (!have_n) throw ConfigError("missing required key 'n'");
    if (cfg.model.kind == ModelKind::Explicit) {
        if (have_p) throw ConfigError("explicit model takes no p expression");
    } else {
        if (!have_p) throw ConfigError("missing required key 'p'");
        cfg.model.p = p;
    }
    return cfg;
}

inline Config parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline std::string render_config(const Config& cfg) {
    std::string out = "model=" + detail::render_model_kind(cfg.model) + "\n";
    if (cfg.model.kind != ModelKind::Explicit) out += "p=" + render_pexpr(cfg.model.p) + "\n";
    out += "n=";
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(cfg.n_values[i]);
    }
    out += "\ntrials=" + std::to_string(cfg.trials);
    out += "\nsolutions=" + render_solution_list(cfg.solutions);
    out += "\nseed=" + std::to_string(cfg.seed);
    if (!cfg.out.empty()) out += "\nout=" + cfg.out;
    out += "\n";
    return out;
}

inline ExperimentPlan to_plan(const Config& cfg) {
    ExperimentPlan plan;
    plan.model = cfg.model;
    plan.n_values = cfg.n_values;
    plan.solutions = cfg.solutions;
    plan.trials = cfg.trials;
    plan.root_seed = cfg.seed;
    return plan;
}

// --- bundled presets -----------------------------------------------------------
//
// Twelve panel presets sweep the linear-order and rank-gap models over the
// probability schedules 0.5 (or 0 for gap), 0.3, 1/n, 1/n^2,
// sqrt(2*log(n)/n), and 0.6*sqrt(log(n)/n); the threshold schedules use
// sizes 50..1000 and the others the standard grids.  One extra preset
// exercises the three-voter majority model at its own threshold schedule.

struct Preset {
    const char* name;
    const char* description;
    Config config;
};

namespace detail {

inline const std::vector<int>& grid_small() {
    static const std::vector<int> g = {5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    return g;
}
inline const std::vector<int>& grid_double() {
    static const std::vector<int> g = {10, 20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
    return g;
}
inline const std::vector<int>& grid_large() {
    static const std::vector<int> g = {50, 100, 150, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
    return g;
}

inline Config panel(ModelKind kind, const char* p, const std::vector<int>& grid, const char* out) {
    Config cfg;
    cfg.model.kind = kind;
    cfg.model.p = parse_pexpr(p);
    cfg.n_values = grid;
    cfg.out = out;
    return cfg;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    using detail::grid_double;
    using detail::grid_large;
    using detail::grid_small;
    using detail::panel;
    static const std::vector<Preset> table = [] {
        std::vector<Preset> t;
        t.push_back({"figure1a", "linear-order model, p=0.5",
                     panel(ModelKind::Condorcet, "0.5", grid_small(), "figure1a.csv")});
        t.push_back({"figure1b", "linear-order model, p=0.3",
                     panel(ModelKind::Condorcet, "0.3", grid_small(), "figure1b.csv")});
        t.push_back({"figure1c", "linear-order model, p=1/n",
                     panel(ModelKind::Condorcet, "1/n", grid_small(), "figure1c.csv")});
        t.push_back({"figure1d", "linear-order model, p=1/n^2",
                     panel(ModelKind::Condorcet, "1/n^2", grid_small(), "figure1d.csv")});
        t.push_back({"figure1e", "linear-order model, p=sqrt(2*log(n)/n)",
                     panel(ModelKind::Condorcet, "sqrt(2*log(n)/n)", grid_large(), "figure1e.csv")});
        t.push_back({"figure1f", "linear-order model, p=0.6*sqrt(log(n)/n)",
                     panel(ModelKind::Condorcet, "0.6*sqrt(log(n)/n)", grid_large(), "figure1f.csv")});
        t.push_back({"figure2a", "rank-gap model, p=0",
                     panel(ModelKind::Gap, "0", grid_double(), "figure2a.csv")});
        t.push_back({"figure2b", "rank-gap model, p=0.3",
                     panel(ModelKind::Gap, "0.3", grid_double(), "figure2b.csv")});
        t.push_back({"figure2c", "rank-gap model, p=1/n",
                     panel(ModelKind::Gap, "1/n", grid_double(), "figure2c.csv")});
        t.push_back({"figure2d", "rank-gap model, p=1/n^2",
                     panel(ModelKind::Gap, "1/n^2", grid_double(), "figure2d.csv")});
        t.push_back({"figure2e", "rank-gap model, p=sqrt(2*log(n)/n)",
                     panel(ModelKind::Gap, "sqrt(2*log(n)/n)", grid_large(), "figure2e.csv")});
        t.push_back({"figure2f", "rank-gap model, p=0.6*sqrt(log(n)/n)",
                     panel(ModelKind::Gap, "0.6*sqrt(log(n)/n)", grid_large(), "figure2f.csv")});
        {
            Config cfg;
            cfg.model.kind = ModelKind::Voters;
            cfg.model.voters = 3;
            cfg.model.p = parse_pexpr("1*(log(n)/n)^(1/4)");
            cfg.n_values = {200};
            cfg.trials = 2000;
            cfg.out = "votersk3.csv";
            t.push_back({"votersk3", "three-voter majority model at its threshold schedule", cfg});
        }
        return t;
    }();
    return table;
}

inline const Preset* find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (name == p.name) return &p;
    return nullptr;
}

}  // namespace tourney
