#include "kent/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace kent {
namespace {

void check_subsystems(const RegisterLayout& layout, const std::vector<int>& subs,
                      bool allow_all) {
  const int n = layout.n();
  if (subs.empty()) throw InvalidSubsystem("empty subsystem selection");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : subs) {
    if (s < 1 || s > n) throw InvalidSubsystem("subsystem index out of range");
    if (seen[static_cast<std::size_t>(s - 1)])
      throw InvalidSubsystem("duplicate subsystem index");
    seen[static_cast<std::size_t>(s - 1)] = true;
  }
  if (!allow_all && static_cast<int>(subs.size()) == n)
    throw InvalidSubsystem("selection must be a proper subset");
}

void check_square(const Matrix& m, const RegisterLayout& layout) {
  if (m.rows() != m.cols() || m.rows() != layout.dim())
    throw DimensionError("matrix does not match register layout");
}

// stride[j] = product of dims right of subsystem j (0-based)
std::vector<Eigen::Index> strides(const std::vector<int>& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (int j = static_cast<int>(dims.size()) - 2; j >= 0; --j)
    s[static_cast<std::size_t>(j)] =
        s[static_cast<std::size_t>(j + 1)] * dims[static_cast<std::size_t>(j + 1)];
  return s;
}

}  // namespace

Vector tensor_product_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector kron_all(const std::vector<Vector>& factors) {
  if (factors.empty()) throw DimensionError("kron_all of empty list");
  Vector out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_product_vec(out, factors[i]);
  return out;
}

Vector basis_vector(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

Matrix partial_trace(const Matrix& m, const RegisterLayout& layout,
                     const std::vector<int>& traced) {
  check_square(m, layout);
  check_subsystems(layout, traced, /*allow_all=*/false);

  const int n = layout.n();
  std::vector<bool> is_traced(static_cast<std::size_t>(n), false);
  for (int s : traced) is_traced[static_cast<std::size_t>(s - 1)] = true;

  const auto full_stride = strides(layout.subsystem_dims);
  std::vector<int> kept_dims, traced_dims;
  std::vector<Eigen::Index> kept_stride, traced_stride;
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (is_traced[ju]) {
      traced_dims.push_back(layout.subsystem_dims[ju]);
      traced_stride.push_back(full_stride[ju]);
    } else {
      kept_dims.push_back(layout.subsystem_dims[ju]);
      kept_stride.push_back(full_stride[ju]);
    }
  }

  Eigen::Index kept_dim = 1;
  for (int d : kept_dims) kept_dim *= d;
  Eigen::Index traced_dim = 1;
  for (int d : traced_dims) traced_dim *= d;

  // flat index of a sub-register configuration within the full register
  auto embed = [](Eigen::Index flat, const std::vector<int>& dims,
                  const std::vector<Eigen::Index>& stride) {
    Eigen::Index full = 0;
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
      const auto ju = static_cast<std::size_t>(j);
      full += (flat % dims[ju]) * stride[ju];
      flat /= dims[ju];
    }
    return full;
  };

  std::vector<Eigen::Index> kept_map(static_cast<std::size_t>(kept_dim));
  for (Eigen::Index i = 0; i < kept_dim; ++i)
    kept_map[static_cast<std::size_t>(i)] = embed(i, kept_dims, kept_stride);
  std::vector<Eigen::Index> traced_map(static_cast<std::size_t>(traced_dim));
  for (Eigen::Index t = 0; t < traced_dim; ++t)
    traced_map[static_cast<std::size_t>(t)] = embed(t, traced_dims, traced_stride);

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i)
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t)
        acc += m(kept_map[static_cast<std::size_t>(i)] + traced_map[static_cast<std::size_t>(t)],
                 kept_map[static_cast<std::size_t>(j)] + traced_map[static_cast<std::size_t>(t)]);
      out(i, j) = acc;
    }
  return out;
}

Matrix partial_transpose(const Matrix& m, const RegisterLayout& layout,
                         const std::vector<int>& transposed) {
  check_square(m, layout);
  check_subsystems(layout, transposed, /*allow_all=*/false);

  const int n = layout.n();
  std::vector<bool> flip(static_cast<std::size_t>(n), false);
  for (int s : transposed) flip[static_cast<std::size_t>(s - 1)] = true;

  const auto stride = strides(layout.subsystem_dims);
  const Eigen::Index dim = layout.dim();

  auto digits = [&](Eigen::Index flat) {
    std::vector<Eigen::Index> d(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
      const auto ju = static_cast<std::size_t>(j);
      d[ju] = flat % layout.subsystem_dims[ju];
      flat /= layout.subsystem_dims[ju];
    }
    return d;
  };

  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto di = digits(i);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto dj = digits(j);
      Eigen::Index ri = 0, rj = 0;
      for (int t = 0; t < n; ++t) {
        const auto tu = static_cast<std::size_t>(t);
        if (flip[tu]) {
          ri += dj[tu] * stride[tu];
          rj += di[tu] * stride[tu];
        } else {
          ri += di[tu] * stride[tu];
          rj += dj[tu] * stride[tu];
        }
      }
      out(ri, rj) = m(i, j);
    }
  }
  return out;
}

namespace {

std::vector<Eigen::Index> permutation_index_map(const RegisterLayout& layout,
                                                const std::vector<int>& new_order) {
  const int n = layout.n();
  if (static_cast<int>(new_order.size()) != n)
    throw InvalidPermutation("permutation length mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : new_order) {
    if (s < 1 || s > n) throw InvalidPermutation("permutation entry out of range");
    if (seen[static_cast<std::size_t>(s - 1)]) throw InvalidPermutation("not a bijection");
    seen[static_cast<std::size_t>(s - 1)] = true;
  }

  const auto old_stride = strides(layout.subsystem_dims);
  std::vector<int> new_dims(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    new_dims[static_cast<std::size_t>(j)] =
        layout.subsystem_dims[static_cast<std::size_t>(new_order[static_cast<std::size_t>(j)] - 1)];

  const Eigen::Index dim = layout.dim();
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  for (Eigen::Index out = 0; out < dim; ++out) {
    Eigen::Index rem = out, in = 0;
    for (int j = n - 1; j >= 0; --j) {
      const auto ju = static_cast<std::size_t>(j);
      in += (rem % new_dims[ju]) * old_stride[static_cast<std::size_t>(new_order[ju] - 1)];
      rem /= new_dims[ju];
    }
    map[static_cast<std::size_t>(out)] = in;
  }
  return map;
}

}  // namespace

Vector permute_subsystems(const Vector& v, const RegisterLayout& layout,
                          const std::vector<int>& new_order) {
  if (v.size() != layout.dim()) throw DimensionError("vector does not match register layout");
  const auto map = permutation_index_map(layout, new_order);
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(map[static_cast<std::size_t>(i)]);
  return out;
}

Matrix permute_subsystems(const Matrix& m, const RegisterLayout& layout,
                          const std::vector<int>& new_order) {
  check_square(m, layout);
  const auto map = permutation_index_map(layout, new_order);
  const Eigen::Index dim = m.rows();
  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      out(i, j) = m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
  return out;
}

RegisterLayout permuted_layout(const RegisterLayout& layout, const std::vector<int>& new_order) {
  std::vector<int> dims;
  dims.reserve(new_order.size());
  for (int s : new_order)
    dims.push_back(layout.subsystem_dims.at(static_cast<std::size_t>(s - 1)));
  return RegisterLayout(dims);
}

SchmidtResult schmidt_decompose(const Vector& psi, Eigen::Index left_dim,
                                Eigen::Index right_dim) {
  if (left_dim * right_dim != psi.size())
    throw DimensionError("split dimensions do not factor the state");
  Matrix a(left_dim, right_dim);
  for (Eigen::Index i = 0; i < left_dim; ++i)
    for (Eigen::Index j = 0; j < right_dim; ++j) a(i, j) = psi(i * right_dim + j);

  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtResult r;
  r.coefficients = svd.singularValues();
  r.left_vectors = svd.matrixU();
  // psi(i,j) = sum_k s_k U(i,k) conj(V(j,k)), so the right factors are conj(V) columns
  r.right_vectors = svd.matrixV().conjugate();
  return r;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

namespace {

double max_asymmetry(const Matrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

}  // namespace

EigPair dominant_eigpair(const Matrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("dominant_eigpair needs a square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (max_asymmetry(h) > 1e-12 * scale)
    throw NotHermitian("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));
  EigPair out;
  out.value = es.eigenvalues()(h.rows() - 1);
  out.vector = es.eigenvectors().col(h.rows() - 1);
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_norm(const Matrix& m) {
  if (m.rows() == m.cols() &&
      max_asymmetry(m) <= 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    return hermitian_eigenvalues(m).cwiseAbs().sum();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double spectral_norm(const Matrix& m) {
  if (m.rows() == m.cols() &&
      max_asymmetry(m) <= 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().maxCoeff();
}

double min_eigenvalue(const Matrix& h) { return hermitian_eigenvalues(h).minCoeff(); }

}  // namespace kent
