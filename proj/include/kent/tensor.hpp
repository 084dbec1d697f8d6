#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "kent/errors.hpp"

namespace kent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered local dimensions of a register; subsystem 1 is the most
/// significant factor in row-major Kronecker indexing.
struct RegisterLayout {
  std::vector<int> subsystem_dims;

  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<int> dims) : subsystem_dims(std::move(dims)) {}

  static RegisterLayout qubits(int n) {
    return RegisterLayout(std::vector<int>(static_cast<std::size_t>(n), 2));
  }

  int n() const { return static_cast<int>(subsystem_dims.size()); }

  Eigen::Index dim() const {
    Eigen::Index d = 1;
    for (int s : subsystem_dims) d *= s;
    return d;
  }
};

/// Kronecker product; the subsystem list of `a` precedes that of `b`.
/// Works for matrices and column vectors alike.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
tensor_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
  return out;
}

Vector tensor_product_vec(const Vector& a, const Vector& b);

/// Kronecker product of a list of column vectors, left to right.
Vector kron_all(const std::vector<Vector>& factors);

Vector basis_vector(Eigen::Index dim, Eigen::Index index);

/// Trace out the listed subsystems (1-based). The kept subsystems retain
/// their relative order.
Matrix partial_trace(const Matrix& m, const RegisterLayout& layout,
                     const std::vector<int>& traced);

/// Transpose the listed subsystems (1-based) in place of the rest.
Matrix partial_transpose(const Matrix& m, const RegisterLayout& layout,
                         const std::vector<int>& transposed);

/// Reorder subsystems. `new_order[j]` names the old subsystem (1-based)
/// that ends up at position j of the result, so applying `new_order`
/// followed by its functional inverse is the identity.
Vector permute_subsystems(const Vector& v, const RegisterLayout& layout,
                          const std::vector<int>& new_order);
Matrix permute_subsystems(const Matrix& m, const RegisterLayout& layout,
                          const std::vector<int>& new_order);

RegisterLayout permuted_layout(const RegisterLayout& layout, const std::vector<int>& new_order);

struct SchmidtResult {
  Eigen::VectorXd coefficients;  // sqrt(mu_j), sorted descending
  Matrix left_vectors;           // columns |phi_j>
  Matrix right_vectors;          // columns |z_j>
};

/// Schmidt decomposition of `psi` across a left x right split,
/// psi = sum_j coefficients[j] |left_j>|right_j>.
SchmidtResult schmidt_decompose(const Vector& psi, Eigen::Index left_dim,
                                Eigen::Index right_dim);

struct EigPair {
  double value = 0.0;
  Vector vector;
};

/// Largest eigenvalue and eigenvector of a Hermitian matrix. The input is
/// symmetrized first; asymmetry beyond tolerance raises NotHermitian.
EigPair dominant_eigpair(const Matrix& h);

/// Ascending eigenvalues of (h + h^dagger)/2.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& h);

double trace_norm(const Matrix& m);
double spectral_norm(const Matrix& m);
double min_eigenvalue(const Matrix& h);

/// (m + m^dagger)/2, guarding iterated products against drift.
Matrix hermitize(const Matrix& m);

}  // namespace kent
