#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tourney/rng.hpp"
#include "tourney/tournament.hpp"

namespace tourney {

/// Vector of nonnegative integers.
using IntVector = std::vector<long long>;

/// One unit moved between two components: the entry at from_index is
/// decremented and the entry at to_index incremented.  Valid only while
/// entries[from_index] > entries[to_index].
struct EqualizingMove {
    int from_index;
    int to_index;

    bool operator==(const EqualizingMove&) const = default;
};

namespace detail {

inline void require_nonnegative(const IntVector& v) {
    for (long long e : v)
        if (e < 0) throw RangeError("vector entries must be nonnegative");
}

inline IntVector sorted_desc(IntVector v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

inline unsigned long long binomial_capped(int n, int k, unsigned long long cap) {
    if (k > n - k) k = n - k;
    unsigned long long c = 1;
    for (int i = 1; i <= k; ++i) {
        if (c > cap) return cap + 1;
        c = c * static_cast<unsigned long long>(n - k + i) / i;
    }
    return c;
}

}  // namespace detail

/// True iff every descending-sorted prefix sum of x dominates that of y and
/// the totals agree.
inline bool majorizes(const IntVector& x, const IntVector& y) {
    if (x.size() != y.size())
        throw LengthMismatchError("majorization compares vectors of equal length");
    detail::require_nonnegative(x);
    detail::require_nonnegative(y);
    const IntVector xs = detail::sorted_desc(x);
    const IntVector ys = detail::sorted_desc(y);
    long long px = 0, py = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        px += xs[i];
        py += ys[i];
        if (px < py) return false;
    }
    px += xs.empty() ? 0 : xs.back();
    py += ys.empty() ? 0 : ys.back();
    return px == py;
}

inline constexpr unsigned long long kSubsetSumCap = 1'000'000;

/// All sums of k distinct components of x, in nonincreasing order.
inline IntVector subset_sum_vector(const IntVector& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n) throw RangeError("k must lie in [1, n]");
    detail::require_nonnegative(x);
    const unsigned long long count = detail::binomial_capped(n, k, kSubsetSumCap);
    if (count > kSubsetSumCap)
        throw CapExceededError("C(n,k) exceeds the subset-sum cap of " + std::to_string(kSubsetSumCap));

    IntVector out;
    out.reserve(count);
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        long long s = 0;
        for (int i : idx) s += x[i];
        out.push_back(s);
        int at = k - 1;
        while (at >= 0 && idx[at] == n - k + at) --at;
        if (at < 0) break;
        ++idx[at];
        for (int i = at + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Applies moves in order; throws PreconditionError if any move's source
/// entry does not strictly exceed its destination entry at application time.
inline IntVector apply_equalizing_moves(IntVector v, const std::vector<EqualizingMove>& moves) {
    const int n = static_cast<int>(v.size());
    for (const auto& mv : moves) {
        if (mv.from_index < 0 || mv.from_index >= n || mv.to_index < 0 || mv.to_index >= n)
            throw IndexError("move index out of range");
        if (v[mv.from_index] <= v[mv.to_index])
            throw PreconditionError("equalizing move requires a strictly larger source entry");
        --v[mv.from_index];
        ++v[mv.to_index];
    }
    return v;
}

namespace detail {

// Works on a descending-sorted window w[lo, hi) with targets tgt; pos maps
// window slots to original indices.  When no proper prefix has equal sums,
// every proper prefix carries strict surplus, so moving one unit from the
// last maximal slot to the first minimal slot keeps the window sorted and
// keeps the targets reachable.
inline void equalize_window(std::vector<long long>& w, const std::vector<long long>& tgt,
                            const std::vector<int>& pos, int lo, int hi,
                            std::vector<EqualizingMove>& out) {
    for (;;) {
        long long surplus = 0;
        int split = -1;
        for (int i = lo; i < hi - 1; ++i) {
            surplus += w[i] - tgt[i];
            if (surplus == 0) {
                split = i;
                break;
            }
        }
        if (split >= 0) {
            equalize_window(w, tgt, pos, lo, split + 1, out);
            lo = split + 1;
            continue;
        }
        bool equal = true;
        for (int i = lo; i < hi; ++i)
            if (w[i] != tgt[i]) {
                equal = false;
                break;
            }
        if (equal) return;
        int k = lo;
        while (k + 1 < hi && w[k + 1] == w[lo]) ++k;
        int m = hi - 1;
        while (m > lo && w[m - 1] == w[hi - 1]) --m;
        --w[k];
        ++w[m];
        out.push_back({pos[k], pos[m]});
    }
}

}  // namespace detail

/// A list of moves whose application transforms the multiset of x's entries
/// into the multiset of y's entries, or absent when x does not majorize y.
/// The move count is finite but not required to be minimal.
inline std::optional<std::vector<EqualizingMove>> equalizing_sequence(const IntVector& x,
                                                                      const IntVector& y) {
    if (x.size() != y.size())
        throw LengthMismatchError("equalizing moves relate vectors of equal length");
    if (!majorizes(x, y)) return std::nullopt;

    const int n = static_cast<int>(x.size());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[i] = i;
    std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) { return x[a] > x[b]; });
    std::vector<long long> w(n);
    for (int i = 0; i < n; ++i) w[i] = x[pos[i]];
    const std::vector<long long> tgt = detail::sorted_desc(y);

    std::vector<EqualizingMove> moves;
    detail::equalize_window(w, tgt, pos, 0, n, moves);
    return moves;
}

/// Checks that the k-subset-sum expansions of a majorizing pair majorize as
/// well.  This always holds; the function exists as a property-check hook,
/// not a trusted assumption.
inline bool verify_subset_sum_majorization(const IntVector& x, const IntVector& y, int k) {
    if (!majorizes(x, y)) throw PreconditionError("x must majorize y");
    return majorizes(subset_sum_vector(x, k), subset_sum_vector(y, k));
}

/// Out-degree vector (n-1, n-2, ..., 0) of the transitive n-tournament.
inline IntVector transitive_degree_vector(int n) {
    if (n < 1) throw RangeError("n must be at least 1");
    IntVector v(n);
    for (int i = 0; i < n; ++i) v[i] = n - 1 - i;
    return v;
}

// --- verification hooks -------------------------------------------------------

struct CheckReport {
    bool pass = false;
    long long cases = 0;
    std::string detail;
};

/// The transitive tournament's degree vector majorizes every tournament's
/// degree vector; checked exhaustively for all tournaments up to max_n.
inline CheckReport check_degree_domination(int max_n = 5) {
    CheckReport r;
    r.pass = true;
    for (int n = 1; n <= max_n; ++n) {
        const IntVector top = transitive_degree_vector(n);
        for_each_tournament(n, [&](const Tournament& t) {
            ++r.cases;
            const DegreeVector d = out_degree_vector(t);
            if (!majorizes(top, IntVector(d.begin(), d.end()))) r.pass = false;
        });
    }
    r.detail = "all tournaments n<=" + std::to_string(max_n) + ", " + std::to_string(r.cases) + " cases";
    return r;
}

namespace detail {

inline IntVector canonical(const IntVector& v) { return sorted_desc(v); }

inline constexpr std::size_t kBfsStateCap = 1'000'000;

/// Multisets reachable from `start` by equalizing moves (canonical forms).
inline std::set<IntVector> move_reachable(const IntVector& start) {
    std::set<IntVector> seen;
    std::vector<IntVector> queue;
    seen.insert(canonical(start));
    queue.push_back(canonical(start));
    while (!queue.empty()) {
        IntVector cur = queue.back();
        queue.pop_back();
        const int n = static_cast<int>(cur.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (cur[i] > cur[j]) {
                    IntVector nxt = cur;
                    --nxt[i];
                    ++nxt[j];
                    nxt = canonical(nxt);
                    if (seen.insert(nxt).second) {
                        if (seen.size() > kBfsStateCap)
                            throw CapExceededError("move-graph search exceeded its state cap");
                        queue.push_back(nxt);
                    }
                }
    }
    return seen;
}

template <class Fn>
void enumerate_vectors(int len, int max_sum, IntVector& buf, Fn&& fn) {
    if (static_cast<int>(buf.size()) == len) {
        fn(buf);
        return;
    }
    for (int v = 0; v <= max_sum; ++v) {
        long long used = 0;
        for (long long e : buf) used += e;
        if (used + v > max_sum) break;
        buf.push_back(v);
        enumerate_vectors(len, max_sum, buf, fn);
        buf.pop_back();
    }
}

/// Deterministic helper stream for randomized checks.
struct SmallRng {
    std::uint64_t key;
    std::uint64_t ctr = 0;
    std::uint64_t next() { return mix64(key ^ mix64(++ctr)); }
    /// uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace detail

/// Majorization holds exactly when a finite sequence of equalizing moves
/// exists.  Both the constructive sequence and the majorization test are
/// cross-validated against breadth-first search over the move graph, for
/// every ordered pair of vectors with the given length and sum bounds.
inline CheckReport check_move_equivalence(int max_len = 4, int max_sum = 8) {
    CheckReport r;
    r.pass = true;
    for (int len = 1; len <= max_len && r.pass; ++len) {
        std::vector<IntVector> all;
        IntVector buf;
        detail::enumerate_vectors(len, max_sum, buf, [&](const IntVector& v) { all.push_back(v); });

        std::map<IntVector, std::set<IntVector>> reach;
        for (const auto& v : all) {
            const IntVector c = detail::canonical(v);
            if (!reach.count(c)) reach[c] = detail::move_reachable(c);
        }

        for (const auto& x : all) {
            for (const auto& y : all) {
                ++r.cases;
                const bool major = majorizes(x, y);
                const auto moves = equalizing_sequence(x, y);
                bool constructive = moves.has_value();
                if (constructive) {
                    const IntVector applied = apply_equalizing_moves(x, *moves);
                    constructive = detail::canonical(applied) == detail::canonical(y);
                }
                const bool bfs = reach[detail::canonical(x)].count(detail::canonical(y)) > 0;
                if (major != constructive || major != bfs) {
                    r.pass = false;
                    break;
                }
            }
            if (!r.pass) break;
        }
    }
    r.detail = std::to_string(r.cases) + " vector pairs, n<=" + std::to_string(max_len) +
               ", sum<=" + std::to_string(max_sum);
    return r;
}

/// Randomized check that k-subset-sum expansion preserves majorization, for
/// every valid k of each generated majorizing pair.
inline CheckReport check_subset_sum_expansion(long long trials = 1000, std::uint64_t seed = 0) {
    CheckReport r;
    r.pass = true;
    detail::SmallRng rng{mix64(seed ^ 0x5c5c5c5c5c5c5c5cULL)};
    for (long long t = 0; t < trials && r.pass; ++t) {
        const int n = 2 + static_cast<int>(rng.below(6));  // 2..7
        IntVector x(n);
        for (auto& e : x) e = static_cast<long long>(rng.below(11));
        IntVector y = x;
        const int moves = static_cast<int>(rng.below(13));
        for (int m = 0; m < moves; ++m) {
            const int i = static_cast<int>(rng.below(n));
            const int j = static_cast<int>(rng.below(n));
            if (y[i] > y[j]) {
                --y[i];
                ++y[j];
            }
        }
        ++r.cases;
        if (!majorizes(x, y)) {
            r.pass = false;
            break;
        }
        for (int k = 1; k <= n; ++k)
            if (!verify_subset_sum_majorization(x, y, k)) {
                r.pass = false;
                break;
            }
    }
    r.detail = std::to_string(r.cases) + " majorizing pairs, all k";
    return r;
}

}  // namespace tourney
