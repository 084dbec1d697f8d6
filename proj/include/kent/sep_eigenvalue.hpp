#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kent/partitions.hpp"
#include "kent/tensor.hpp"

namespace kent {

struct GConfig {
  double tol = 1e-9;      // relative objective-change convergence threshold
  int max_sweeps = 500;
  int restarts = 10;      // 2-block partitions of 4 qubits draw 2.4x this
  std::uint64_t seed = 1;
};

struct GResult {
  double value = 0.0;
  std::vector<Vector> optimizer;     // block states, canonical block order
  int sweeps_used = 0;               // sweeps of the winning run
  int restarts_used = 0;
  double final_residual = 0.0;       // relative change at the winning run's last sweep
  std::vector<double> sweep_values;  // objective after each sweep of the winning run
};

/// Maximum of <prod|L|prod> over pure states that factor across the blocks
/// of `p`, by alternating dominant-eigenvector updates: with all blocks but
/// j fixed, the block-j objective is the Rayleigh quotient of the effective
/// operator M_j = C_j^dagger L C_j, so block j moves to M_j's top
/// eigenvector. Each update is monotone, and the best of several restarts
/// (seeded deterministically from cfg.seed) is returned. `extra_inits`
/// supplies additional starting block states, e.g. optimizers of finer
/// partitions.
GResult g_partition(const Matrix& l, const RegisterLayout& layout, const Partition& p,
                    const GConfig& cfg,
                    const std::vector<std::vector<Vector>>& extra_inits = {});

struct ProfileResult {
  std::map<std::string, double> values;  // one entry per valid partition, all k
  int restarts_used = 0;                 // largest restart count of any partition
  double max_residual = 0.0;             // worst final residual across partitions
};

/// Separability eigenvalues for every valid partition with 2 <= k <= n.
/// Finer partitions are computed first and seed coarser ones, and each
/// coarser value is clamped up to the best finer value it dominates, so the
/// stored profile is monotone under block merging by construction.
ProfileResult g_profile(const Matrix& l, const RegisterLayout& layout, const GConfig& cfg);

/// Exact g for a pure projector across a two-block split: the largest
/// squared Schmidt coefficient. Validation oracle for g_partition.
double g_pure_bipartite_oracle(const Vector& psi, Eigen::Index left_dim,
                               Eigen::Index right_dim);
double g_pure_bipartite_oracle(const Vector& psi, const RegisterLayout& layout,
                               const Partition& split);

/// Deterministic 64-bit seed derivation (splitmix64 over a combined word).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Unit vector with i.i.d. complex Gaussian entries.
Vector haar_state(Eigen::Index dim, std::uint64_t seed);

}  // namespace kent
