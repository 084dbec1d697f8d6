#pragma once

#include <string>
#include <vector>

#include "kent/errors.hpp"

namespace kent {

/// Canonical grouping of qubit indices: blocks sorted ascending inside,
/// blocks ordered by their minimum element.
struct Partition {
  std::vector<std::vector<int>> blocks;  // 1-based qubit indices
  int n = 0;

  int k() const { return static_cast<int>(blocks.size()); }

  bool operator==(const Partition& other) const {
    return n == other.n && blocks == other.blocks;
  }
};

/// Text key like "12|3|4"; the database/CLI spelling of a partition class.
/// Blocks use bare digits for n <= 9 and comma-separated indices above.
std::string canonical_key(const Partition& p);

/// Canonicalize a raw grouping; throws NotAPartition unless the blocks
/// form a set partition of {1..n}.
Partition make_partition(std::vector<std::vector<int>> raw_blocks, int n);

Partition parse_partition_key(const std::string& key, int n);

/// One canonical representative per equivalence class of k-partitions of
/// {1..n}, sorted lexicographically by key. Count equals S(n,k).
std::vector<Partition> enumerate_valid(int n, int k);

/// All k-block partitions obtainable by merging whole blocks of `p`,
/// canonical and sorted by key; k == p.k() returns {p}.
std::vector<Partition> coarsenings_b(const Partition& p, int k);

bool equivalent(const Partition& p, const Partition& q);

Partition finest_partition(int n);

}  // namespace kent
