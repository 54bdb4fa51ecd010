#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tourney/tournament.hpp"

namespace tourney {

/// A subset of the alternatives of an n-tournament, packed like a row.
class AlternativeSet {
public:
    explicit AlternativeSet(int n) : n_(n), bits_((n + 63) / 64, 0) {}

    static AlternativeSet full(int n) {
        AlternativeSet s(n);
        for (auto& w : s.bits_) w = ~0ull;
        s.bits_.back() &= s.tail_mask();
        return s;
    }

    int universe_size() const noexcept { return n_; }

    void add(int i) noexcept { bits_[i >> 6] |= 1ull << (i & 63); }
    bool contains(int i) const noexcept { return (bits_[i >> 6] >> (i & 63)) & 1u; }

    int count() const noexcept {
        int c = 0;
        for (auto w : bits_) c += std::popcount(w);
        return c;
    }

    bool empty() const noexcept { return count() == 0; }
    bool is_full() const noexcept { return count() == n_; }

    bool subset_of(const AlternativeSet& other) const noexcept {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w] & ~other.bits_[w]) return false;
        return true;
    }

    /// Members in ascending index order.
    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (int i = 0; i < n_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    bool operator==(const AlternativeSet&) const noexcept = default;

private:
    std::uint64_t tail_mask() const noexcept {
        const int rem = n_ & 63;
        return rem == 0 ? ~0ull : ((1ull << rem) - 1);
    }

    int n_;
    std::vector<std::uint64_t> bits_;
};

namespace detail {

/// Vertices reachable from `start` along edges, including `start`.
/// `invert` flips edge direction (dominators instead of dominated), using
/// the fact that column i of a tournament is the complement of row i.
inline std::vector<std::uint64_t> closure(const Tournament& t, int start, bool invert) {
    const int wpr = t.words_per_row();
    const std::uint64_t tail = t.tail_mask();
    std::vector<std::uint64_t> visited(wpr, 0), frontier(wpr, 0), grown(wpr, 0);
    visited[start >> 6] |= 1ull << (start & 63);
    frontier = visited;
    for (;;) {
        std::fill(grown.begin(), grown.end(), 0);
        for (int w = 0; w < wpr; ++w) {
            std::uint64_t f = frontier[w];
            while (f) {
                const int u = (w << 6) + std::countr_zero(f);
                f &= f - 1;
                const std::uint64_t* r = t.row(u);
                if (invert) {
                    for (int k = 0; k < wpr; ++k) grown[k] |= ~r[k];
                } else {
                    for (int k = 0; k < wpr; ++k) grown[k] |= r[k];
                }
            }
        }
        grown[wpr - 1] &= tail;
        bool any = false;
        for (int k = 0; k < wpr; ++k) {
            frontier[k] = grown[k] & ~visited[k];
            visited[k] |= frontier[k];
            any |= frontier[k] != 0;
        }
        if (!any) return visited;
    }
}

inline bool words_full(const std::vector<std::uint64_t>& words, int n) {
    int c = 0;
    for (auto w : words) c += std::popcount(w);
    return c == n;
}

inline AlternativeSet set_from_words(int n, const std::vector<std::uint64_t>& words) {
    AlternativeSet s(n);
    for (int i = 0; i < n; ++i)
        if ((words[i >> 6] >> (i & 63)) & 1u) s.add(i);
    return s;
}

}  // namespace detail

/// The unique alternative dominating all others, if one exists.
inline std::optional<int> condorcet_winner(const Tournament& t) {
    for (int i = 0; i < t.size(); ++i)
        if (t.out_degree(i) == t.size() - 1) return i;
    return std::nullopt;
}

/// The unique alternative dominated by all others, if one exists.
inline std::optional<int> condorcet_loser(const Tournament& t) {
    if (t.size() == 1) return std::nullopt;
    for (int i = 0; i < t.size(); ++i)
        if (t.out_degree(i) == 0) return i;
    return std::nullopt;
}

/// {winner} when a Condorcet winner exists, otherwise all alternatives.
inline AlternativeSet cond(const Tournament& t) {
    if (auto w = condorcet_winner(t)) {
        AlternativeSet s(t.size());
        s.add(*w);
        return s;
    }
    return AlternativeSet::full(t.size());
}

/// Everything except the Condorcet loser; all alternatives when no loser
/// exists (a 1-tournament keeps its single alternative).
inline AlternativeSet cnl(const Tournament& t) {
    if (auto l = condorcet_loser(t)) {
        AlternativeSet out(t.size());
        for (int i = 0; i < t.size(); ++i)
            if (i != *l) out.add(i);
        return out;
    }
    return AlternativeSet::full(t.size());
}

/// Smallest set whose members dominate every non-member; equals the source
/// component of the condensation.  Computed as the strongly connected
/// component of a maximum-out-degree alternative, which always lies in the
/// top cycle, so one forward and one backward closure suffice.
inline AlternativeSet top_cycle(const Tournament& t) {
    int best = 0, best_deg = -1;
    for (int i = 0; i < t.size(); ++i) {
        const int d = t.out_degree(i);
        if (d > best_deg) {
            best_deg = d;
            best = i;
        }
    }
    auto fwd = detail::closure(t, best, false);
    auto bwd = detail::closure(t, best, true);
    for (std::size_t w = 0; w < fwd.size(); ++w) fwd[w] &= bwd[w];
    return detail::set_from_words(t.size(), fwd);
}

/// Alternatives that reach every other alternative by a domination path of
/// length at most two (the kings).
inline AlternativeSet uncovered_set(const Tournament& t) {
    const int n = t.size();
    const int wpr = t.words_per_row();
    AlternativeSet out(n);
    std::vector<std::uint64_t> reach(wpr);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t* ri = t.row(i);
        for (int w = 0; w < wpr; ++w) reach[w] = ri[w];
        reach[i >> 6] |= 1ull << (i & 63);
        for (int w = 0; w < wpr && !detail::words_full(reach, n); ++w) {
            std::uint64_t f = ri[w];
            while (f) {
                const int l = (w << 6) + std::countr_zero(f);
                f &= f - 1;
                const std::uint64_t* rl = t.row(l);
                for (int k = 0; k < wpr; ++k) reach[k] |= rl[k];
            }
        }
        if (detail::words_full(reach, n)) out.add(i);
    }
    return out;
}

/// Sub-tournament induced on S, preserving relative order of labels.
inline Tournament restrict(const Tournament& t, const AlternativeSet& s) {
    if (s.empty()) throw EmptySetError("cannot restrict to an empty set");
    const std::vector<int> keep = s.members();
    const int m = static_cast<int>(keep.size());
    TournamentBuilder b(m);
    for (int a = 0; a < m; ++a)
        for (int c = a + 1; c < m; ++c) {
            if (t.edge(keep[a], keep[c])) b.orient(a, c);
            else b.orient(c, a);
        }
    return b.take();
}

/// Fixed point of repeated uncovered-set restriction, mapped back to the
/// original labels.
inline AlternativeSet iterated_uncovered_set(const Tournament& t) {
    std::vector<int> current(t.size());
    std::iota(current.begin(), current.end(), 0);
    Tournament sub = t;
    for (;;) {
        AlternativeSet uc = uncovered_set(sub);
        if (uc.is_full()) break;
        const std::vector<int> keep = uc.members();
        std::vector<int> next;
        next.reserve(keep.size());
        for (int k : keep) next.push_back(current[k]);
        current = std::move(next);
        sub = restrict(sub, uc);
    }
    AlternativeSet out(t.size());
    for (int i : current) out.add(i);
    return out;
}

/// The five tournament solutions this library computes.
enum class Solution { Cond, Cnl, TopCycle, Uncovered, IteratedUncovered };

inline constexpr Solution kAllSolutions[] = {Solution::Cond, Solution::Cnl, Solution::TopCycle,
                                             Solution::Uncovered, Solution::IteratedUncovered};

inline const char* to_string(Solution s) {
    switch (s) {
        case Solution::Cond: return "COND";
        case Solution::Cnl: return "CNL";
        case Solution::TopCycle: return "TC";
        case Solution::Uncovered: return "UC";
        case Solution::IteratedUncovered: return "UCINF";
    }
    return "?";
}

inline Solution parse_solution(std::string_view name) {
    for (Solution s : kAllSolutions)
        if (name == to_string(s)) return s;
    throw UnknownSolutionError("unknown solution '" + std::string(name) +
                               "' (expected COND, CNL, TC, UC, or UCINF)");
}

inline AlternativeSet choice_set(Solution s, const Tournament& t) {
    switch (s) {
        case Solution::Cond: return cond(t);
        case Solution::Cnl: return cnl(t);
        case Solution::TopCycle: return top_cycle(t);
        case Solution::Uncovered: return uncovered_set(t);
        case Solution::IteratedUncovered: return iterated_uncovered_set(t);
    }
    throw UnknownSolutionError("invalid solution identifier");
}

/// True iff the solution's choice set is the whole set of alternatives.
inline bool selects_all(Solution s, const Tournament& t) {
    return choice_set(s, t).is_full();
}

// --- fast selects-all predicates --------------------------------------------
//
// The Monte Carlo engine only needs "choice set == A", which has cheaper
// characterizations: no Condorcet winner (COND), no Condorcet loser (CNL),
// strong connectivity (TC), all alternatives kings (UC and, equivalently,
// iterated UC).  These are verified against the set-valued route in the
// test suite.

inline bool is_strongly_connected(const Tournament& t) {
    if (t.size() == 1) return true;
    return detail::words_full(detail::closure(t, 0, false), t.size()) &&
           detail::words_full(detail::closure(t, 0, true), t.size());
}

/// All-kings test with early exit; degree order puts likely failures first.
inline bool all_kings(const Tournament& t, const DegreeVector& degrees) {
    const int n = t.size();
    if (n == 1) return true;
    const int wpr = t.words_per_row();

    // counting sort by out-degree, ascending
    std::vector<int> bucket_start(n + 1, 0);
    for (int d : degrees) ++bucket_start[d + 1];
    for (int d = 0; d < n; ++d) bucket_start[d + 1] += bucket_start[d];
    std::vector<int> order(n);
    {
        std::vector<int> cursor = bucket_start;
        for (int i = 0; i < n; ++i) order[cursor[degrees[i]]++] = i;
    }

    std::vector<std::uint64_t> reach(wpr);
    for (int idx = 0; idx < n; ++idx) {
        const int i = order[idx];
        const std::uint64_t* ri = t.row(i);
        for (int w = 0; w < wpr; ++w) reach[w] = ri[w];
        reach[i >> 6] |= 1ull << (i & 63);
        bool king = detail::words_full(reach, n);
        for (int w = 0; w < wpr && !king; ++w) {
            std::uint64_t f = ri[w];
            while (f && !king) {
                const int l = (w << 6) + std::countr_zero(f);
                f &= f - 1;
                const std::uint64_t* rl = t.row(l);
                for (int k = 0; k < wpr; ++k) reach[k] |= rl[k];
                king = detail::words_full(reach, n);
            }
        }
        if (!king) return false;
    }
    return true;
}

/// Equivalent to selects_all(s, t); avoids materializing choice sets.
inline bool selects_all_fast(Solution s, const Tournament& t, const DegreeVector& degrees) {
    const int n = t.size();
    if (n == 1) return true;
    switch (s) {
        case Solution::Cond:
            return std::find(degrees.begin(), degrees.end(), n - 1) == degrees.end();
        case Solution::Cnl:
            return std::find(degrees.begin(), degrees.end(), 0) == degrees.end();
        case Solution::TopCycle:
            return is_strongly_connected(t);
        case Solution::Uncovered:
        case Solution::IteratedUncovered:
            return all_kings(t, degrees);
    }
    throw UnknownSolutionError("invalid solution identifier");
}

}  // namespace tourney
