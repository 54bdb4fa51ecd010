#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tourney/rng.hpp"
#include "tourney/tournament.hpp"

namespace tourney {

/// Independent-edge orientation probabilities: entry (i, j) is the
/// probability that a_i dominates a_j, with (i, j) + (j, i) = 1 off the
/// diagonal.  Diagonal entries are 0 and never read.
class EdgeProbabilityMatrix {
public:
    static constexpr double kComplementTolerance = 1e-12;

    static EdgeProbabilityMatrix from_grid(const std::vector<std::vector<double>>& rows) {
        const int n = static_cast<int>(rows.size());
        if (n < 1) throw DimensionError("probability matrix must have at least one row");
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != n) throw DimensionError("probability matrix must be square");
        EdgeProbabilityMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = rows[i][j];
                if (!(v >= 0.0 && v <= 1.0)) throw RangeError("probabilities must lie in [0,1]");
                m.p_[static_cast<std::size_t>(i) * n + j] = v;
            }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double s = m.at(i, j) + m.at(j, i);
                if (std::abs(s - 1.0) > kComplementTolerance)
                    throw RangeError("p(i,j) + p(j,i) must equal 1 for every pair");
            }
        return m;
    }

    int size() const noexcept { return n_; }
    double at(int i, int j) const noexcept { return p_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    explicit EdgeProbabilityMatrix(int n) : n_(n), p_(static_cast<std::size_t>(n) * n, 0.0) {}

    void set(int i, int j, double v) noexcept { p_[static_cast<std::size_t>(i) * n_ + j] = v; }

    int n_;
    std::vector<double> p_;

    friend EdgeProbabilityMatrix condorcet_matrix(int, double);
    friend EdgeProbabilityMatrix gap_matrix(int, double);
};

/// Linear-order model: the earlier alternative beats the later one with
/// probability 1-p, so every upset has probability p.
inline EdgeProbabilityMatrix condorcet_matrix(int n, double p) {
    if (n < 1) throw DimensionError("n must be at least 1");
    if (!(p >= 0.0 && p <= 0.5)) throw RangeError("condorcet model requires 0 <= p <= 0.5");
    EdgeProbabilityMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m.set(i, j, 1.0 - p);
            m.set(j, i, p);
        }
    return m;
}

/// Rank-gap model: the edge from a_i to a_j (i < j, 1-based) exists with
/// probability 0.5 + (0.5 - p)(j - i)/(n - 1), so adjacent alternatives are
/// near-even while a_1 beats a_n with probability 1-p.
inline EdgeProbabilityMatrix gap_matrix(int n, double p) {
    if (n == 1) throw DegenerateError("gap model is undefined for n = 1");
    if (n < 1) throw DimensionError("n must be at least 1");
    if (!(p >= 0.0 && p <= 0.5)) throw RangeError("gap model requires 0 <= p <= 0.5");
    EdgeProbabilityMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double q = 0.5 + (0.5 - p) * static_cast<double>(j - i) / (n - 1);
            m.set(i, j, q);
            m.set(j, i, 1.0 - q);
        }
    return m;
}

// --- probability matrix text format -----------------------------------------
//
// Line 1: n.  Lines 2..n+1: n probabilities per row.  '#' comments allowed.

inline EdgeProbabilityMatrix parse_probability_matrix(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_significant = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t at = line.find_first_not_of(" \t\r");
            if (at == std::string::npos) continue;
            if (line[at] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };
    std::string header;
    if (!next_significant(header)) throw ParseError(line_no + 1, "missing size line");
    int n = 0;
    {
        std::istringstream hs(header);
        if (!(hs >> n) || n < 1) throw ParseError(line_no, "size line must be a positive integer");
    }
    std::vector<std::vector<double>> grid;
    int first_row_line = 0;
    for (int i = 0; i < n; ++i) {
        std::string row_text;
        if (!next_significant(row_text))
            throw ParseError(line_no + 1, "expected " + std::to_string(n) + " matrix rows");
        if (i == 0) first_row_line = line_no;
        std::istringstream rs(row_text);
        std::vector<double> row;
        double v;
        while (rs >> v) row.push_back(v);
        if (static_cast<int>(row.size()) != n)
            throw ParseError(line_no, "expected " + std::to_string(n) + " entries in row");
        grid.push_back(std::move(row));
    }
    try {
        return EdgeProbabilityMatrix::from_grid(grid);
    } catch (const Error& e) {
        throw ParseError(first_row_line, e.what());
    }
}

inline EdgeProbabilityMatrix load_probability_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open probability matrix file: " + path);
    return parse_probability_matrix(in);
}

// --- samplers ----------------------------------------------------------------

/// Draws one tournament with independent pair orientations: for each pair
/// {i, j} with i < j, in pair-rank order, a_i dominates a_j iff the pair's
/// uniform draw is < p(i, j).  Strict comparison makes p = 0 and p = 1 exact.
inline Tournament sample_model1(const EdgeProbabilityMatrix& m, Seed seed) {
    const int n = m.size();
    TournamentBuilder b(n);
    const std::uint64_t tkey = trial_key(seed.root, seed.trial_index);
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++rank) {
            const double u = pair_voter_draw(tkey, rank, 0);
            if (u < m.at(i, j)) b.orient(i, j);
            else b.orient(j, i);
        }
    return b.take();
}

/// Majority relation of k voters with independent pairwise preferences.
/// `voter_prefs` holds either one matrix shared by every voter or k
/// per-voter matrices.  A single voter reproduces sample_model1 bit for bit.
inline Tournament sample_model2(int k, std::span<const EdgeProbabilityMatrix> voter_prefs, Seed seed) {
    if (k < 1 || k % 2 == 0) throw EvenVotersError("voter count must be odd and positive");
    if (voter_prefs.empty()) throw DimensionError("at least one preference matrix is required");
    if (voter_prefs.size() != 1 && static_cast<int>(voter_prefs.size()) != k)
        throw DimensionError("provide one shared matrix or exactly k matrices");
    const int n = voter_prefs[0].size();
    for (const auto& q : voter_prefs)
        if (q.size() != n) throw DimensionError("voter matrices must agree on n");

    const bool shared = voter_prefs.size() == 1;
    TournamentBuilder b(n);
    const std::uint64_t tkey = trial_key(seed.root, seed.trial_index);
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++rank) {
            int prefer_i = 0;
            for (int v = 0; v < k; ++v) {
                const double q = (shared ? voter_prefs[0] : voter_prefs[v]).at(i, j);
                if (pair_voter_draw(tkey, rank, static_cast<std::uint64_t>(v)) < q) ++prefer_i;
            }
            if (2 * prefer_i > k) b.orient(i, j);
            else b.orient(j, i);
        }
    return b.take();
}

// --- the p-expression mini-language ------------------------------------------
//
// Grammar (no whitespace):
//   literal            e.g. 0.3  or a ratio of integers  1/4
//   1/n
//   1/n^2
//   C*sqrt(log(n)/n)
//   sqrt(C*log(n)/n)
//   C*(log(n)/n)^(1/M)      M a positive integer
// with C a nonnegative decimal and natural logarithms throughout.  Values
// above 0.5 are clamped to 0.5 at evaluation and reported to the caller.

struct PExpr {
    enum class Kind { Literal, OneOverN, OneOverNSquared, CoefTimesSqrt, SqrtOfCoef, RootPower };
    Kind kind = Kind::Literal;
    double coef = 0.0;
    int root = 2;  // the M of RootPower

    bool operator==(const PExpr&) const = default;
};

namespace detail {

inline std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline bool parse_number(std::string_view s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(std::string(s), &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

}  // namespace detail

inline PExpr parse_pexpr(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s == "1/n") return {PExpr::Kind::OneOverN, 0.0, 2};
    if (s == "1/n^2") return {PExpr::Kind::OneOverNSquared, 0.0, 2};

    auto parse_coef_head = [&](std::string_view body, std::string_view suffix, double& c) -> bool {
        // matches <C>*<suffix>, and bare <suffix> with C = 1
        if (body == suffix) {
            c = 1.0;
            return true;
        }
        const std::size_t star = body.find('*');
        if (star == std::string_view::npos) return false;
        if (body.substr(star + 1) != suffix) return false;
        return detail::parse_number(body.substr(0, star), c);
    };

    double c = 0.0;
    if (parse_coef_head(s, "sqrt(log(n)/n)", c)) {
        if (c < 0) throw ConfigError("coefficient must be nonnegative in '" + s + "'");
        return {PExpr::Kind::CoefTimesSqrt, c, 2};
    }
    if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
        std::string_view inner(s.data() + 5, s.size() - 6);
        const std::size_t star = inner.find('*');
        if (star != std::string_view::npos && inner.substr(star + 1) == "log(n)/n" &&
            detail::parse_number(inner.substr(0, star), c)) {
            if (c < 0) throw ConfigError("coefficient must be nonnegative in '" + s + "'");
            return {PExpr::Kind::SqrtOfCoef, c, 2};
        }
    }
    {
        // C*(log(n)/n)^(1/M)
        const std::string_view head = "(log(n)/n)^(1/";
        const std::size_t at = s.find(head);
        if (at != std::string_view::npos && s.back() == ')') {
            const std::string_view pre(s.data(), at);
            const std::string_view mtext(s.data() + at + head.size(), s.size() - at - head.size() - 1);
            bool pre_ok = false;
            if (pre.empty()) {
                c = 1.0;
                pre_ok = true;
            } else if (pre.back() == '*') {
                pre_ok = detail::parse_number(pre.substr(0, pre.size() - 1), c);
            }
            double m_val = 0.0;
            if (pre_ok && detail::parse_number(mtext, m_val) && m_val >= 1 && m_val == static_cast<int>(m_val)) {
                if (c < 0) throw ConfigError("coefficient must be nonnegative in '" + s + "'");
                return {PExpr::Kind::RootPower, c, static_cast<int>(m_val)};
            }
        }
    }
    {
        // ratio of integers, e.g. 1/4
        const std::size_t slash = s.find('/');
        if (slash != std::string_view::npos) {
            double num = 0.0, den = 0.0;
            if (detail::parse_number(std::string_view(s).substr(0, slash), num) &&
                detail::parse_number(std::string_view(s).substr(slash + 1), den) && den > 0) {
                if (num < 0) throw ConfigError("probability literal must be nonnegative: '" + s + "'");
                return {PExpr::Kind::Literal, num / den, 2};
            }
        }
    }
    if (detail::parse_number(s, c)) {
        if (c < 0) throw ConfigError("probability literal must be nonnegative: '" + s + "'");
        return {PExpr::Kind::Literal, c, 2};
    }
    throw ConfigError("cannot parse probability expression '" + std::string(text) + "'");
}

inline std::string render_pexpr(const PExpr& e) {
    switch (e.kind) {
        case PExpr::Kind::Literal: return detail::format_g(e.coef);
        case PExpr::Kind::OneOverN: return "1/n";
        case PExpr::Kind::OneOverNSquared: return "1/n^2";
        case PExpr::Kind::CoefTimesSqrt: return detail::format_g(e.coef) + "*sqrt(log(n)/n)";
        case PExpr::Kind::SqrtOfCoef: return "sqrt(" + detail::format_g(e.coef) + "*log(n)/n)";
        case PExpr::Kind::RootPower:
            return detail::format_g(e.coef) + "*(log(n)/n)^(1/" + std::to_string(e.root) + ")";
    }
    return "?";
}

inline double eval_pexpr(const PExpr& e, int n) {
    if (n < 1) throw RangeError("n must be positive");
    switch (e.kind) {
        case PExpr::Kind::Literal: return e.coef;
        case PExpr::Kind::OneOverN: return 1.0 / n;
        case PExpr::Kind::OneOverNSquared: return 1.0 / (static_cast<double>(n) * n);
        case PExpr::Kind::CoefTimesSqrt: return e.coef * std::sqrt(std::log(n) / n);
        case PExpr::Kind::SqrtOfCoef: return std::sqrt(e.coef * std::log(n) / n);
        case PExpr::Kind::RootPower: return e.coef * std::pow(std::log(n) / n, 1.0 / e.root);
    }
    throw RangeError("invalid expression");
}

/// Evaluates and clamps into [0, 0.5]; `clamped` reports whether the raw
/// value exceeded 0.5 (common for threshold expressions at small n).
/// Literals are never clamped: a constant above 0.5 violates the model
/// parameter range outright and is rejected.
inline double eval_pexpr_clamped(const PExpr& e, int n, bool* clamped = nullptr) {
    double v = eval_pexpr(e, n);
    if (e.kind == PExpr::Kind::Literal && v > 0.5)
        throw RangeError("model parameter must lie in [0, 0.5], got " + detail::format_g(v));
    bool c = false;
    if (v > 0.5) {
        v = 0.5;
        c = true;
    }
    if (v < 0.0) v = 0.0;
    if (clamped) *clamped = c;
    return v;
}

// --- model specifications -----------------------------------------------------
//
// Textual forms: condorcet:p=<expr>   gap:p=<expr>
//                voters:k=<odd>,p=<expr>   explicit:file=<path>

enum class ModelKind { Condorcet, Gap, Voters, Explicit };

struct ModelSpec {
    ModelKind kind = ModelKind::Condorcet;
    PExpr p;                 // upset probability (condorcet/gap) or per-voter q (voters)
    int voters = 1;          // k, odd; meaningful for ModelKind::Voters
    std::string matrix_file; // ModelKind::Explicit

    bool operator==(const ModelSpec&) const = default;
};

inline std::string render_model(const ModelSpec& m) {
    switch (m.kind) {
        case ModelKind::Condorcet: return "condorcet:p=" + render_pexpr(m.p);
        case ModelKind::Gap: return "gap:p=" + render_pexpr(m.p);
        case ModelKind::Voters:
            return "voters:k=" + std::to_string(m.voters) + ",p=" + render_pexpr(m.p);
        case ModelKind::Explicit: return "explicit:file=" + m.matrix_file;
    }
    return "?";
}

inline ModelSpec parse_model(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    ModelSpec m;
    if (head == "condorcet" || head == "gap") {
        m.kind = head == "condorcet" ? ModelKind::Condorcet : ModelKind::Gap;
        if (rest.rfind("p=", 0) != 0)
            throw ConfigError("expected '" + std::string(head) + ":p=<expr>', got '" + std::string(text) + "'");
        m.p = parse_pexpr(rest.substr(2));
        return m;
    }
    if (head == "voters") {
        m.kind = ModelKind::Voters;
        if (rest.rfind("k=", 0) != 0)
            throw ConfigError("expected 'voters:k=<odd>,p=<expr>', got '" + std::string(text) + "'");
        const std::size_t comma = rest.find(',');
        double k_val = 0.0;
        if (!detail::parse_number(rest.substr(2, comma == std::string_view::npos ? std::string_view::npos : comma - 2), k_val) ||
            k_val < 1 || k_val != static_cast<int>(k_val))
            throw ConfigError("voter count must be a positive integer");
        m.voters = static_cast<int>(k_val);
        if (m.voters % 2 == 0) throw EvenVotersError("voter count must be odd");
        if (comma == std::string_view::npos || rest.substr(comma + 1).rfind("p=", 0) != 0)
            throw ConfigError("expected 'voters:k=<odd>,p=<expr>', got '" + std::string(text) + "'");
        m.p = parse_pexpr(rest.substr(comma + 3));
        return m;
    }
    if (head == "explicit") {
        m.kind = ModelKind::Explicit;
        if (rest.rfind("file=", 0) != 0)
            throw ConfigError("expected 'explicit:file=<path>', got '" + std::string(text) + "'");
        m.matrix_file = std::string(rest.substr(5));
        if (m.matrix_file.empty()) throw ConfigError("explicit model needs a file path");
        return m;
    }
    throw ConfigError("unknown model '" + std::string(text) +
                      "' (expected condorcet, gap, voters, or explicit)");
}

/// Model-1 edge matrix of the model at size n.  For the voters model this is
/// the induced majority matrix: each edge is an independent binomial
/// majority, so the marginal probability is the binomial upper tail.
inline EdgeProbabilityMatrix instantiate_edge_matrix(const ModelSpec& m, int n, bool* clamped = nullptr) {
    if (clamped) *clamped = false;
    switch (m.kind) {
        case ModelKind::Condorcet:
            return condorcet_matrix(n, eval_pexpr_clamped(m.p, n, clamped));
        case ModelKind::Gap:
            return gap_matrix(n, eval_pexpr_clamped(m.p, n, clamped));
        case ModelKind::Explicit: {
            auto mat = load_probability_matrix(m.matrix_file);
            if (mat.size() != n)
                throw DimensionError("explicit matrix has n=" + std::to_string(mat.size()) +
                                     ", expected " + std::to_string(n));
            return mat;
        }
        case ModelKind::Voters: {
            const double q = eval_pexpr_clamped(m.p, n, clamped);
            const int k = m.voters;
            // Pr[majority of k coins with success prob q]
            double maj = 0.0;
            for (int t = k / 2 + 1; t <= k; ++t) {
                double term = 1.0;
                for (int a = 0; a < t; ++a) term *= static_cast<double>(k - a) / (t - a);
                maj += term * std::pow(q, t) * std::pow(1.0 - q, k - t);
            }
            std::vector<std::vector<double>> grid(n, std::vector<double>(n, 0.0));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    grid[j][i] = maj;
                    grid[i][j] = 1.0 - maj;
                }
            return EdgeProbabilityMatrix::from_grid(grid);
        }
    }
    throw ConfigError("invalid model kind");
}

/// Draws one tournament from the model at size n.
inline Tournament sample(const ModelSpec& m, int n, Seed seed) {
    if (m.kind == ModelKind::Voters) {
        const double q = eval_pexpr_clamped(m.p, n);
        const EdgeProbabilityMatrix shared[] = {condorcet_matrix(n, q)};
        return sample_model2(m.voters, std::span<const EdgeProbabilityMatrix>(shared, 1), seed);
    }
    return sample_model1(instantiate_edge_matrix(m, n), seed);
}

}  // namespace tourney
