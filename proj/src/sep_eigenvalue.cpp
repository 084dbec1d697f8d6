#include "kent/sep_eigenvalue.hpp"

#include <algorithm>
#include <random>

namespace kent {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector haar_state(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

namespace {

struct SweepOutcome {
  double value = 0.0;
  int sweeps = 0;
  double final_residual = 0.0;
  bool degenerate = false;
  std::vector<double> history;
  std::vector<Vector> states;
};

// Contraction isometry with block j free: columns are
// kron(a_0..a_{j-1}, e_s, a_{j+1}..a_{k-1}).
Matrix block_isometry(const std::vector<Vector>& states, std::size_t j,
                      const std::vector<Eigen::Index>& block_dims) {
  Vector left(1), right(1);
  left(0) = 1.0;
  right(0) = 1.0;
  for (std::size_t i = 0; i < j; ++i) left = tensor_product_vec(left, states[i]);
  for (std::size_t i = j + 1; i < states.size(); ++i)
    right = tensor_product_vec(right, states[i]);

  const Eigen::Index dj = block_dims[j];
  Matrix c = Matrix::Zero(left.size() * dj * right.size(), dj);
  for (Eigen::Index l = 0; l < left.size(); ++l)
    for (Eigen::Index s = 0; s < dj; ++s)
      c.block((l * dj + s) * right.size(), s, right.size(), 1) = left(l) * right;
  return c;
}

EigPair top_eigpair(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  if (m.rows() <= 3)
    es.computeDirect(m);
  else
    es.compute(m);
  EigPair out;
  out.value = es.eigenvalues()(m.rows() - 1);
  out.vector = es.eigenvectors().col(m.rows() - 1);
  return out;
}

SweepOutcome run_sweeps(const Matrix& lp, const std::vector<Eigen::Index>& block_dims,
                        std::vector<Vector> states, const GConfig& cfg) {
  SweepOutcome out;
  const std::size_t k = block_dims.size();
  double prev = -1.0;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double value = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const Matrix c = block_isometry(states, j, block_dims);
      const Matrix m = hermitize(c.adjoint() * (lp * c));
      const EigPair top = top_eigpair(m);
      if (top.value < 1e-14) {
        out.degenerate = true;  // effective operator collapsed; abandon run
        out.value = std::max(0.0, top.value);
        out.sweeps = sweep + 1;
        return out;
      }
      states[j] = top.vector;
      value = top.value;
    }
    out.history.push_back(value);
    out.sweeps = sweep + 1;
    const double residual = (value - prev) / std::max(1.0, std::abs(value));
    out.final_residual = std::abs(residual);
    prev = value;
    if (sweep > 0 && std::abs(residual) < cfg.tol) break;
  }
  out.value = prev;
  out.states = std::move(states);
  return out;
}

std::vector<Eigen::Index> partition_block_dims(const RegisterLayout& layout,
                                               const Partition& p) {
  std::vector<Eigen::Index> dims;
  dims.reserve(p.blocks.size());
  for (const auto& block : p.blocks) {
    Eigen::Index d = 1;
    for (int q : block) d *= layout.subsystem_dims.at(static_cast<std::size_t>(q - 1));
    dims.push_back(d);
  }
  return dims;
}

std::vector<int> block_concat_order(const Partition& p) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(p.n));
  for (const auto& block : p.blocks) order.insert(order.end(), block.begin(), block.end());
  return order;
}

// Block states of the basis product state at the largest diagonal entry.
// Guarantees the final value is at least max_i L_ii >= Tr(L)/dim, so the
// maximally mixed state never shows a positive margin.
std::vector<Vector> diagonal_init(const Matrix& lp,
                                  const std::vector<Eigen::Index>& block_dims) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < lp.rows(); ++i)
    if (lp(i, i).real() > lp(best, best).real()) best = i;
  std::vector<Vector> states(block_dims.size());
  for (std::size_t j = block_dims.size(); j-- > 0;) {
    const Eigen::Index dj = block_dims[j];
    states[j] = basis_vector(dj, best % dj);
    best /= dj;
  }
  return states;
}

int effective_restarts(const GConfig& cfg, const RegisterLayout& layout, const Partition& p) {
  // 2-block partitions of 4 qubits hit local maxima most often
  if (layout.n() == 4 && p.k() == 2) return (cfg.restarts * 12 + 4) / 5;
  return cfg.restarts;
}

}  // namespace

GResult g_partition(const Matrix& l, const RegisterLayout& layout, const Partition& p,
                    const GConfig& cfg, const std::vector<std::vector<Vector>>& extra_inits) {
  if (l.rows() != l.cols() || l.rows() != layout.dim())
    throw DimensionError("operator does not match register layout");
  if (p.n != layout.n()) throw DimensionError("partition does not match register layout");
  if (cfg.tol <= 0 || cfg.max_sweeps < 1 || cfg.restarts < 1)
    throw InvalidParameter("invalid GConfig");

  const Matrix lh = hermitize(l);
  if (min_eigenvalue(lh) < -1e-8) throw NotPositive("operator has a negative eigenvalue");

  const auto order = block_concat_order(p);
  const Matrix lp = permute_subsystems(lh, layout, order);
  const auto block_dims = partition_block_dims(layout, p);

  const int restarts = effective_restarts(cfg, layout, p);

  GResult best;
  best.value = -1.0;
  int runs = 0;
  auto consider = [&](std::vector<Vector> init) {
    SweepOutcome run = run_sweeps(lp, block_dims, std::move(init), cfg);
    ++runs;
    // a collapsed effective operator means the run landed in L's kernel;
    // restart it from a fresh draw instead of keeping a dead value
    for (int rescue = 0; run.degenerate && rescue < 3; ++rescue) {
      std::vector<Vector> fresh(block_dims.size());
      for (std::size_t j = 0; j < block_dims.size(); ++j)
        fresh[j] = haar_state(block_dims[j],
                              mix_seed(~cfg.seed, static_cast<std::uint64_t>(runs) * 8 + j +
                                                      static_cast<std::uint64_t>(rescue) * 1024));
      run = run_sweeps(lp, block_dims, std::move(fresh), cfg);
    }
    if (run.degenerate) return;
    if (run.value > best.value) {
      best.value = run.value;
      best.sweeps_used = run.sweeps;
      best.final_residual = run.final_residual;
      best.sweep_values = run.history;
      best.optimizer = std::move(run.states);
    }
  };

  consider(diagonal_init(lp, block_dims));
  for (const auto& init : extra_inits) {
    if (init.size() != block_dims.size()) throw DimensionError("seed init block count");
    for (std::size_t j = 0; j < init.size(); ++j)
      if (init[j].size() != block_dims[j]) throw DimensionError("seed init block dimension");
    consider(init);
  }
  for (int r = 0; r < restarts; ++r) {
    std::vector<Vector> init(block_dims.size());
    for (std::size_t j = 0; j < block_dims.size(); ++j)
      init[j] = haar_state(block_dims[j],
                           mix_seed(cfg.seed, static_cast<std::uint64_t>(r) * 64 + j));
    consider(init);
  }
  best.restarts_used = runs;

  if (!best.optimizer.empty()) {
    // report the Rayleigh quotient of the optimizer itself
    const Vector prod = kron_all(best.optimizer);
    best.value = std::real(Complex(prod.adjoint() * (lp * prod)));
  }
  if (best.value < 0.0) best.value = 0.0;
  return best;
}

double g_pure_bipartite_oracle(const Vector& psi, Eigen::Index left_dim,
                               Eigen::Index right_dim) {
  if (left_dim * right_dim != psi.size())
    throw DimensionError("split does not factor the state dimension");
  const auto schmidt = schmidt_decompose(psi, left_dim, right_dim);
  const double top = schmidt.coefficients(0);
  return top * top;
}

double g_pure_bipartite_oracle(const Vector& psi, const RegisterLayout& layout,
                               const Partition& split) {
  if (split.k() != 2) throw DimensionError("oracle needs a two-block partition");
  const auto order = block_concat_order(split);
  const Vector permuted = permute_subsystems(psi, layout, order);
  const auto dims = partition_block_dims(layout, split);
  return g_pure_bipartite_oracle(permuted, dims[0], dims[1]);
}

namespace {

// Map a finer partition's optimizer onto the blocks of a coarser partition
// (each coarse block is a union of fine blocks).
std::vector<Vector> merge_block_states(const Partition& fine,
                                       const std::vector<Vector>& fine_states,
                                       const Partition& coarse,
                                       const RegisterLayout& layout) {
  std::vector<int> owner(static_cast<std::size_t>(fine.n) + 1, -1);
  for (std::size_t b = 0; b < fine.blocks.size(); ++b)
    for (int q : fine.blocks[b]) owner[static_cast<std::size_t>(q)] = static_cast<int>(b);

  std::vector<Vector> out;
  out.reserve(coarse.blocks.size());
  for (const auto& cblock : coarse.blocks) {
    std::vector<int> fine_ids;
    for (int q : cblock) {
      const int id = owner[static_cast<std::size_t>(q)];
      if (std::find(fine_ids.begin(), fine_ids.end(), id) == fine_ids.end())
        fine_ids.push_back(id);
    }
    std::vector<int> concat_qubits;
    Vector merged(1);
    merged(0) = 1.0;
    for (int id : fine_ids) {
      const auto& fblock = fine.blocks[static_cast<std::size_t>(id)];
      concat_qubits.insert(concat_qubits.end(), fblock.begin(), fblock.end());
      merged = tensor_product_vec(merged, fine_states[static_cast<std::size_t>(id)]);
    }
    // reorder the concatenated qubits into the coarse block's sorted order
    std::vector<int> concat_dims;
    concat_dims.reserve(concat_qubits.size());
    for (int q : concat_qubits)
      concat_dims.push_back(layout.subsystem_dims.at(static_cast<std::size_t>(q - 1)));
    std::vector<int> new_order;
    new_order.reserve(cblock.size());
    for (int q : cblock) {
      const auto it = std::find(concat_qubits.begin(), concat_qubits.end(), q);
      new_order.push_back(static_cast<int>(it - concat_qubits.begin()) + 1);
    }
    out.push_back(permute_subsystems(merged, RegisterLayout(concat_dims), new_order));
  }
  return out;
}

}  // namespace

ProfileResult g_profile(const Matrix& l, const RegisterLayout& layout, const GConfig& cfg) {
  const int n = layout.n();
  if (n < 2) throw DimensionError("profile needs at least two subsystems");

  ProfileResult out;
  std::map<std::string, GResult> results;
  std::map<std::string, Partition> parts;

  for (int k = n; k >= 2; --k) {
    for (const Partition& p : enumerate_valid(n, k)) {
      std::vector<std::vector<Vector>> seeds;
      if (k < n) {
        for (const auto& [fkey, fine] : parts) {
          if (fine.k() != k + 1 || results[fkey].optimizer.empty()) continue;
          for (const Partition& r : coarsenings_b(fine, k)) {
            if (canonical_key(r) == canonical_key(p)) {
              seeds.push_back(
                  merge_block_states(fine, results[fkey].optimizer, p, layout));
              break;
            }
          }
        }
        if (k + 1 < n) {
          const Partition finest = finest_partition(n);
          const GResult& base = results[canonical_key(finest)];
          if (!base.optimizer.empty())
            seeds.push_back(merge_block_states(finest, base.optimizer, p, layout));
        }
      }
      GResult r = g_partition(l, layout, p, cfg, seeds);
      out.restarts_used = std::max(out.restarts_used, r.restarts_used);
      out.max_residual = std::max(out.max_residual, r.final_residual);
      const std::string key = canonical_key(p);
      results[key] = std::move(r);
      parts[key] = p;
    }
  }

  for (const auto& [key, r] : results) out.values[key] = r.value;

  // merging whole blocks can only enlarge the feasible set, so a coarser
  // partition's value is clamped up to every finer value it dominates
  for (int k = n; k >= 3; --k)
    for (const Partition& t : enumerate_valid(n, k)) {
      const double fine_value = out.values[canonical_key(t)];
      for (const Partition& r : coarsenings_b(t, k - 1)) {
        double& coarse = out.values[canonical_key(r)];
        coarse = std::max(coarse, fine_value);
      }
    }
  return out;
}

}  // namespace kent
