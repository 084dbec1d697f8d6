#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kent/partitions.hpp"
#include "kent/tensor.hpp"
#include "kent/witness_db.hpp"

namespace kent {

/// Margins below this are reported as zero; the sign test for "detected".
inline constexpr double kDetectionMargin = 1e-12;

struct MeasureResult {
  double value = 0.0;       // max{0, Tr(L rho) - g_context(L)} over the db
  double raw_margin = 0.0;  // best signed margin, for diagnostics
  std::optional<std::uint64_t> best_witness_id;  // set iff value > 0
  std::string best_partition;                    // binding partition of the best witness
  int k = 0;
  std::string partition_context = "full";
};

/// Symmetrize and trace-renormalize a near-valid density matrix; inputs
/// further than 1e-8 from valid are rejected.
Matrix validated_state(const Matrix& rho);

/// Finite-database k-entanglement measure: the best clipped witness margin
/// Tr(L rho) - max over k-block profile entries, ties broken by lowest
/// record id.
MeasureResult e_w_k(const Matrix& rho, const Database& db, int k);

/// As e_w_k, but the inner max runs only over the k-block coarsenings of
/// `context` (merging whole blocks).
MeasureResult e_w_subpartition(const Matrix& rho, const Database& db,
                               const Partition& context, int k);

/// (E^(n,n), E^(n-1,n), ..., E^(2,n)).
std::vector<MeasureResult> measure_tuple(const Matrix& rho, const Database& db);

/// (||rho^T_B||_1 - 1)/2 across a two-block split, clamped at zero.
double negativity(const Matrix& rho, const RegisterLayout& layout, const Partition& split);

}  // namespace kent
