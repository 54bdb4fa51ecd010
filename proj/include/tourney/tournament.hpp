#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tourney/errors.hpp"

namespace tourney {

/// Out-degrees of the alternatives, indexed like the tournament.
using DegreeVector = std::vector<int>;

/// Largest n accepted by the exhaustive enumerator (2^15 tournaments).
inline constexpr int kEnumerationCap = 6;

/// Rank of the unordered pair {i, j} with i < j, counted in (i, j)
/// lexicographic order over the upper triangle.
constexpr std::uint64_t pair_rank(int n, int i, int j) noexcept {
    return static_cast<std::uint64_t>(i) * (2u * n - i - 1) / 2 + static_cast<std::uint64_t>(j - i - 1);
}

constexpr std::uint64_t pair_count(int n) noexcept {
    return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

/// A complete asymmetric digraph on n alternatives.  Row i is a bitset of
/// the alternatives that a_i dominates, packed into 64-bit words; exactly
/// one of the bits (i, j) and (j, i) is set for every i != j.
///
/// Values are immutable once constructed and safe to share across threads.
/// Indices are 0-based in code; rendered text and the CLI use the 1-based
/// labels a_1..a_n.
class Tournament {
public:
    /// Builds from a full 0/1 adjacency grid, validating squareness, the
    /// zero diagonal, and the one-edge-per-pair rule.
    static Tournament from_matrix(const std::vector<std::vector<int>>& rows) {
        const int n = static_cast<int>(rows.size());
        if (n < 1) throw DimensionError("adjacency matrix must have at least one row");
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n)
                throw DimensionError("adjacency matrix must be square");
        }
        Tournament t(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const int v = rows[i][j];
                if (v != 0 && v != 1) throw StructureError("matrix entries must be 0 or 1");
                if (i == j && v != 0) throw StructureError("diagonal entry must be 0");
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const int down = rows[i][j], up = rows[j][i];
                if (down + up != 1)
                    throw StructureError("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                         ") must have exactly one edge");
                if (down) t.set_edge(i, j);
                else t.set_edge(j, i);
            }
        }
        return t;
    }

    /// Decodes one tournament from packed upper-triangular bits: bit
    /// pair_rank(n, i, j) of `mask` set means a_i dominates a_j.  This is the
    /// enumeration encoding; it requires n <= 11 so the mask fits 64 bits.
    static Tournament from_pair_bits(int n, std::uint64_t mask) {
        if (n < 1) throw DimensionError("n must be at least 1");
        if (pair_count(n) > 64) throw CapExceededError("pair-bit encoding supports n <= 11");
        Tournament t(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if ((mask >> pair_rank(n, i, j)) & 1u) t.set_edge(i, j);
                else t.set_edge(j, i);
            }
        return t;
    }

    /// Wraps pre-validated packed rows.  Callers (samplers, enumerator)
    /// guarantee the tournament invariants; debug builds re-check them.
    static Tournament from_packed_rows_unchecked(int n, std::vector<std::uint64_t> words) {
        Tournament t;
        t.n_ = n;
        t.wpr_ = words_needed(n);
        t.bits_ = std::move(words);
        assert(static_cast<int>(t.bits_.size()) == n * t.wpr_);
        assert(t.check_invariants());
        return t;
    }

    int size() const noexcept { return n_; }
    int words_per_row() const noexcept { return wpr_; }

    /// True iff a_i dominates a_j.  Bounds- and i!=j-checked.
    bool dominates(int i, int j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw IndexError("alternative index out of range");
        if (i == j) throw SelfComparisonError("an alternative is never compared with itself");
        return edge(i, j);
    }

    /// Unchecked bit test; callers guarantee i != j in range.
    bool edge(int i, int j) const noexcept {
        return (bits_[static_cast<std::size_t>(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    const std::uint64_t* row(int i) const noexcept { return bits_.data() + static_cast<std::size_t>(i) * wpr_; }

    int out_degree(int i) const noexcept {
        int d = 0;
        const std::uint64_t* r = row(i);
        for (int w = 0; w < wpr_; ++w) d += std::popcount(r[w]);
        return d;
    }

    /// Mask of valid bits in the last word of a row.
    std::uint64_t tail_mask() const noexcept {
        const int rem = n_ & 63;
        return rem == 0 ? ~0ull : ((1ull << rem) - 1);
    }

    bool operator==(const Tournament& other) const noexcept = default;

private:
    Tournament() = default;
    explicit Tournament(int n) : n_(n), wpr_(words_needed(n)), bits_(static_cast<std::size_t>(n) * words_needed(n), 0) {}

    static int words_needed(int n) noexcept { return (n + 63) / 64; }

    void set_edge(int i, int j) noexcept {
        bits_[static_cast<std::size_t>(i) * wpr_ + (j >> 6)] |= 1ull << (j & 63);
    }

    bool check_invariants() const {
        for (int i = 0; i < n_; ++i) {
            if (edge(i, i)) return false;
            for (int j = i + 1; j < n_; ++j)
                if (edge(i, j) == edge(j, i)) return false;
            // no stray bits past column n
            if (row(i)[wpr_ - 1] & ~tail_mask()) return false;
        }
        return true;
    }

    int n_ = 0;
    int wpr_ = 0;
    std::vector<std::uint64_t> bits_;

    friend class TournamentBuilder;
};

/// Incremental construction used by the samplers: orient every pair once,
/// then take() the finished value.
class TournamentBuilder {
public:
    explicit TournamentBuilder(int n) : t_(n) {
        if (n < 1) throw DimensionError("n must be at least 1");
    }

    /// Orients the pair {i, j}: winner dominates loser.
    void orient(int winner, int loser) noexcept { t_.set_edge(winner, loser); }

    Tournament take() {
        assert(t_.check_invariants());
        return std::move(t_);
    }

private:
    Tournament t_;
};

inline DegreeVector out_degree_vector(const Tournament& t) {
    DegreeVector d(t.size());
    for (int i = 0; i < t.size(); ++i) d[i] = t.out_degree(i);
    return d;
}

/// Streams all 2^(n(n-1)/2) labeled tournaments exactly once, in binary
/// counting order over the upper-triangular pair bits (LSB = pair {a_1, a_2};
/// bit set = the lower-indexed alternative dominates).
class TournamentEnumerator {
public:
    explicit TournamentEnumerator(int n) : n_(n) {
        if (n < 1) throw CapExceededError("enumeration requires n >= 1");
        if (n > kEnumerationCap)
            throw CapExceededError("enumeration capped at n = " + std::to_string(kEnumerationCap));
        total_ = 1ull << pair_count(n);
    }

    std::uint64_t total() const noexcept { return total_; }

    std::optional<Tournament> next() {
        if (mask_ == total_) return std::nullopt;
        return Tournament::from_pair_bits(n_, mask_++);
    }

private:
    int n_;
    std::uint64_t mask_ = 0;
    std::uint64_t total_ = 0;
};

/// Convenience loop over the full enumeration.
template <class Fn>
void for_each_tournament(int n, Fn&& fn) {
    TournamentEnumerator e(n);
    while (auto t = e.next()) fn(*t);
}

// --- text format -----------------------------------------------------------
//
// Line 1: n.  Lines 2..n+1: n space-separated 0/1 entries of the adjacency
// matrix.  Lines starting with '#' are comments.  UTF-8, LF newlines.

inline Tournament parse_tournament(std::istream& in) {
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
        std::string extra;
        if (hs >> extra) throw ParseError(line_no, "unexpected token after size");
    }

    std::vector<std::vector<int>> grid;
    grid.reserve(n);
    int first_row_line = 0;
    for (int i = 0; i < n; ++i) {
        std::string row_text;
        if (!next_significant(row_text))
            throw ParseError(line_no + 1, "expected " + std::to_string(n) + " matrix rows");
        if (i == 0) first_row_line = line_no;
        std::istringstream rs(row_text);
        std::vector<int> row;
        int v;
        while (rs >> v) row.push_back(v);
        if (static_cast<int>(row.size()) != n)
            throw ParseError(line_no, "expected " + std::to_string(n) + " entries in row");
        grid.push_back(std::move(row));
    }
    try {
        return Tournament::from_matrix(grid);
    } catch (const Error& e) {
        throw ParseError(first_row_line, e.what());
    }
}

inline std::string render_tournament(const Tournament& t) {
    std::string out = std::to_string(t.size());
    out.push_back('\n');
    for (int i = 0; i < t.size(); ++i) {
        for (int j = 0; j < t.size(); ++j) {
            if (j) out.push_back(' ');
            out.push_back(i != j && t.edge(i, j) ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

inline Tournament parse_tournament_text(const std::string& text) {
    std::istringstream in(text);
    return parse_tournament(in);
}

}  // namespace tourney
