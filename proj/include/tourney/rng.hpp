#pragma once

#include <cstdint>
#include <string_view>

namespace tourney {

/// Counter-based random number derivation.
///
/// Every random decision in the library is a pure function of a key tuple
/// (root, trial_index, pair_rank, voter_index).  The tuple is folded through
/// a chain of 64-bit finalizer steps, one per component, each offset by a
/// distinct stage constant so that components occupy disjoint roles.  There
/// is no generator state: draws can be evaluated in any order, on any number
/// of workers, and always give the same bits.

/// splitmix64 finalizer: a full-avalanche bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a over bytes; used to fold textual labels into stream roots.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Identifies one trial's random stream.  For a fixed root, distinct
/// trial_index values select independent streams.
struct Seed {
    std::uint64_t root = 0;
    std::uint64_t trial_index = 0;
};

namespace detail {
inline constexpr std::uint64_t kTrialStage = 0xd1b54a32d192ed03ULL;
inline constexpr std::uint64_t kPairStage  = 0x8cb92ba72f3d8dd7ULL;
inline constexpr std::uint64_t kVoterStage = 0xe7037ed1a0b428dbULL;
}  // namespace detail

/// First keying stage; hoisted out of pair loops.
constexpr std::uint64_t trial_key(std::uint64_t root, std::uint64_t trial_index) noexcept {
    return mix64(root ^ (detail::kTrialStage + trial_index));
}

/// Remaining stages: one uniform draw in [0, 1) for a (pair, voter) coordinate.
inline double pair_voter_draw(std::uint64_t tkey, std::uint64_t pair_rank,
                              std::uint64_t voter_index) noexcept {
    std::uint64_t k = mix64(tkey ^ (detail::kPairStage + pair_rank));
    k = mix64(k ^ (detail::kVoterStage + voter_index));
    return static_cast<double>(k >> 11) * 0x1.0p-53;
}

/// Uniform draw in [0, 1) for the full key tuple.
inline double unit_draw(std::uint64_t root, std::uint64_t trial_index,
                        std::uint64_t pair_rank, std::uint64_t voter_index) noexcept {
    return pair_voter_draw(trial_key(root, trial_index), pair_rank, voter_index);
}

/// Stream root for a labeled experiment cell: mixes the 64-bit root seed,
/// the FNV-1a hash of the cell label, and the tournament size.  Adding or
/// removing other cells never perturbs an existing cell's stream.
constexpr std::uint64_t derive_stream_root(std::uint64_t root_seed, std::string_view label,
                                           std::uint64_t n) noexcept {
    return mix64(mix64(root_seed ^ fnv1a64(label)) ^ n);
}

}  // namespace tourney
