#pragma once

#include <cstdint>
#include <string>

#include "kent/tensor.hpp"

namespace kent {

/// A named pure state mixed with white noise:
///   rho(p) = p |psi><psi| + (1-p) I/2^n.
struct NoisyFamily {
  std::string base;  // ghz | w | bell | singlet | cl4 | d24 | singlet4 |
                     // werner (singlet for n=2, ghz above) | custom
  int n = 0;
  double p = 0.0;
  Vector custom_amplitudes;  // used when base == "custom"
};

/// Canonical pure states. |b1 b2 ... bn> maps to index sum_j b_j 2^(n-j),
/// so |0011> is index 3 of 16.
Vector named_pure(const std::string& name, int n);

/// The pure state a family mixes with noise.
Vector family_base(const NoisyFamily& family);

Matrix family_state(const NoisyFamily& family);

NoisyFamily parse_family_spec(const std::string& spec);

/// Hilbert-Schmidt-style sample GG^dagger/Tr(GG^dagger) with G of shape
/// 2^n x rank; deterministic per seed.
Matrix random_density(int n, int rank, std::uint64_t seed);

/// Convex mixture of `terms` random product pure states; fully separable
/// by construction.
Matrix random_separable(int n, int terms, std::uint64_t seed);

}  // namespace kent
