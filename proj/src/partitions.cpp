#include "kent/partitions.hpp"

#include <algorithm>
#include <sstream>

namespace kent {
namespace {

// Set partitions of {0..m-1} via restricted growth strings keeping exactly
// k classes; visit(assignment) is called once per partition.
template <typename Visit>
void visit_set_partitions(int m, int k, Visit&& visit) {
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  // a[i] = class of element i, a[0] = 0, a[i] <= max(a[0..i-1]) + 1
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == m) {
      if (used == k) visit(a);
      return;
    }
    // prune: remaining elements cannot open enough new classes
    if (used + (m - i) < k) return;
    const int cap = std::min(used, k - 1);
    for (int c = 0; c <= cap; ++c) {
      a[static_cast<std::size_t>(i)] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 0, 0);
}

std::string block_text(const std::vector<int>& block, int n) {
  std::ostringstream os;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (n > 9 && i > 0) os << ',';
    os << block[i];
  }
  return os.str();
}

void sort_canonical(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

std::string canonical_key(const Partition& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (i > 0) os << '|';
    os << block_text(p.blocks[i], p.n);
  }
  return os.str();
}

Partition make_partition(std::vector<std::vector<int>> raw_blocks, int n) {
  if (n < 1) throw NotAPartition("register size must be positive");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int covered = 0;
  for (const auto& b : raw_blocks) {
    if (b.empty()) throw NotAPartition("empty block");
    for (int q : b) {
      if (q < 1 || q > n) throw NotAPartition("index outside {1..n}");
      if (seen[static_cast<std::size_t>(q - 1)]) throw NotAPartition("overlapping blocks");
      seen[static_cast<std::size_t>(q - 1)] = true;
      ++covered;
    }
  }
  if (covered != n) throw NotAPartition("blocks do not cover {1..n}");
  sort_canonical(raw_blocks);
  return Partition{std::move(raw_blocks), n};
}

Partition parse_partition_key(const std::string& key, int n) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> current;
  auto flush = [&]() {
    if (current.empty()) throw NotAPartition("empty block in key '" + key + "'");
    blocks.push_back(current);
    current.clear();
  };
  std::size_t i = 0;
  while (i < key.size()) {
    const char c = key[i];
    if (c == '|') {
      flush();
      ++i;
    } else if (c == ',') {
      ++i;
    } else if (c >= '0' && c <= '9') {
      int v = 0;
      if (n <= 9) {
        v = c - '0';
        ++i;
      } else {
        while (i < key.size() && key[i] >= '0' && key[i] <= '9') {
          v = v * 10 + (key[i] - '0');
          ++i;
        }
      }
      current.push_back(v);
    } else {
      throw NotAPartition("unexpected character in key '" + key + "'");
    }
  }
  flush();
  return make_partition(std::move(blocks), n);
}

std::vector<Partition> enumerate_valid(int n, int k) {
  if (n < 2 || n > 12 || k < 2 || k > n) throw InvalidK("need 2 <= k <= n <= 12");
  std::vector<Partition> out;
  visit_set_partitions(n, k, [&](const std::vector<int>& assign) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (int q = 0; q < n; ++q)
      blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(q)])].push_back(q + 1);
    out.push_back(make_partition(std::move(blocks), n));
  });
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

std::vector<Partition> coarsenings_b(const Partition& p, int k) {
  const int m = p.k();
  if (k < 2 || k > m) throw InvalidK("need 2 <= k <= block count");
  if (k == m) return {p};
  std::vector<Partition> out;
  visit_set_partitions(m, k, [&](const std::vector<int>& assign) {
    std::vector<std::vector<int>> merged(static_cast<std::size_t>(k));
    for (int b = 0; b < m; ++b) {
      auto& dst = merged[static_cast<std::size_t>(assign[static_cast<std::size_t>(b)])];
      dst.insert(dst.end(), p.blocks[static_cast<std::size_t>(b)].begin(),
                 p.blocks[static_cast<std::size_t>(b)].end());
    }
    out.push_back(make_partition(std::move(merged), p.n));
  });
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    return canonical_key(a) < canonical_key(b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool equivalent(const Partition& p, const Partition& q) {
  return p.n == q.n && canonical_key(p) == canonical_key(q);
}

Partition finest_partition(int n) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (int q = 1; q <= n; ++q) blocks.push_back({q});
  return make_partition(std::move(blocks), n);
}

}  // namespace kent
