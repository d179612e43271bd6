#pragma once

#include <vector>

namespace mfs::oracle {

/// A partition of the ground set {0, ..., m-1} into disjoint blocks, each
/// stored sorted ascending. Only used by the brute-force oracle, which keeps
/// every step deliberately naive and independent of the series engine.
struct NCPartition {
    int ground_size = 0;
    std::vector<std::vector<int>> blocks;

    /// Blocks are disjoint, sorted, and cover {0, ..., m-1}.
    bool is_partition() const;

    /// No a < b < c < d with {a,c} in one block and {b,d} in another
    /// (checked by scanning all quadruples).
    bool is_noncrossing() const;

    /// block id per ground-set element; -1 if not covered.
    std::vector<int> block_index() const;
};

inline constexpr int kMaxOracleGroundSize = 10;

/// All non-crossing partitions of {0, ..., m-1}, enumerated by filtering the
/// full set-partition lattice. Count equals the m-th Catalan number.
/// Throws SizeLimitExceeded for m < 1 or m > 10.
std::vector<NCPartition> enumerate_nc(int m);

} // namespace mfs::oracle
