#include "kent/measures.hpp"

#include <algorithm>

namespace kent {
namespace {

double hermitian_pair_trace(const Matrix& l, const Matrix& rho) {
  // Tr(L rho) = sum_ij L_ij conj(rho_ij) for Hermitian rho
  return std::real((l.array() * rho.array().conjugate()).sum());
}

MeasureResult measure_over_keys(const Matrix& rho, const Database& db,
                                const std::vector<std::string>& keys, int k,
                                std::string context) {
  if (db.records.empty()) throw EmptyDatabase("database has no records");
  const Matrix state = validated_state(rho);
  if (state.rows() != db.layout().dim())
    throw DimensionError("state dimension does not match database");

  MeasureResult out;
  out.k = k;
  out.partition_context = std::move(context);

  double best_margin = -std::numeric_limits<double>::infinity();
  std::uint64_t best_id = 0;
  std::string best_key;
  for (const auto& rec : db.records) {
    double g = -std::numeric_limits<double>::infinity();
    std::string g_key;
    for (const auto& key : keys) {
      const double v = rec.profile.at(key);
      if (v > g) {
        g = v;
        g_key = key;
      }
    }
    const double margin = hermitian_pair_trace(rec.contraction, state) - g;
    if (margin > best_margin) {
      best_margin = margin;
      best_id = rec.id;
      best_key = g_key;
    }
  }

  out.raw_margin = best_margin;
  if (best_margin > kDetectionMargin) {
    out.value = best_margin;
    out.best_witness_id = best_id;
    out.best_partition = best_key;
  }
  return out;
}

}  // namespace

Matrix validated_state(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint().eval()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NotHermitian("density matrix is not Hermitian within 1e-8");
  Matrix state = hermitize(rho);
  const double trace = state.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) throw InvalidParameter("density matrix trace is not 1");
  state /= trace;
  if (min_eigenvalue(state) < -1e-8) throw NotPositive("density matrix is not PSD");
  return state;
}

MeasureResult e_w_k(const Matrix& rho, const Database& db, int k) {
  const int n = db.header.n_qubits;
  if (k < 2 || k > n) throw InvalidK("need 2 <= k <= n");
  std::vector<std::string> keys;
  for (const Partition& p : enumerate_valid(n, k)) keys.push_back(canonical_key(p));
  return measure_over_keys(rho, db, keys, k, "full");
}

MeasureResult e_w_subpartition(const Matrix& rho, const Database& db,
                               const Partition& context, int k) {
  const int n = db.header.n_qubits;
  if (context.n != n) throw DimensionError("partition does not match database register");
  if (k < 2 || k > context.k()) throw InvalidK("need 2 <= k <= block count");
  std::vector<std::string> keys;
  for (const Partition& r : coarsenings_b(context, k)) keys.push_back(canonical_key(r));
  return measure_over_keys(rho, db, keys, k, canonical_key(context));
}

std::vector<MeasureResult> measure_tuple(const Matrix& rho, const Database& db) {
  std::vector<MeasureResult> out;
  for (int k = db.header.n_qubits; k >= 2; --k) out.push_back(e_w_k(rho, db, k));
  return out;
}

double negativity(const Matrix& rho, const RegisterLayout& layout, const Partition& split) {
  if (split.k() != 2) throw DimensionError("negativity needs a two-block split");
  if (rho.rows() != layout.dim() || split.n != layout.n())
    throw DimensionError("state does not match split");
  const Matrix state = validated_state(rho);
  const Matrix pt = partial_transpose(state, layout, split.blocks[1]);
  return std::max(0.0, (trace_norm(pt) - 1.0) / 2.0);
}

}  // namespace kent
