#include "kent/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "kent/sep_eigenvalue.hpp"

namespace kent {
namespace {

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Eigen::Index bits_index(std::initializer_list<int> bits) {
  Eigen::Index idx = 0;
  for (int b : bits) idx = idx * 2 + b;
  return idx;
}

Vector ghz(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Vector v = Vector::Zero(dim);
  v(0) = 1.0 / std::sqrt(2.0);
  v(dim - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

Vector w_state(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Vector v = Vector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) v(Eigen::Index(1) << j) = amp;
  return v;
}

Vector singlet2() {
  Vector v = Vector::Zero(4);
  v(bits_index({0, 1})) = 1.0 / std::sqrt(2.0);
  v(bits_index({1, 0})) = -1.0 / std::sqrt(2.0);
  return v;
}

Vector cluster4() {
  Vector v = Vector::Zero(16);
  v(bits_index({0, 0, 0, 0})) = 0.5;
  v(bits_index({0, 0, 1, 1})) = 0.5;
  v(bits_index({1, 1, 0, 0})) = 0.5;
  v(bits_index({1, 1, 1, 1})) = -0.5;
  return v;
}

Vector dicke24() {
  Vector v = Vector::Zero(16);
  const double amp = 1.0 / std::sqrt(6.0);
  for (auto idx : {bits_index({0, 0, 1, 1}), bits_index({1, 1, 0, 0}),
                   bits_index({0, 1, 0, 1}), bits_index({0, 1, 1, 0}),
                   bits_index({1, 0, 0, 1}), bits_index({1, 0, 1, 0})})
    v(idx) = amp;
  return v;
}

Vector singlet4() {
  Vector v = Vector::Zero(16);
  const double outer = 1.0 / std::sqrt(3.0);
  v(bits_index({0, 0, 1, 1})) = outer;
  v(bits_index({1, 1, 0, 0})) = outer;
  for (auto idx : {bits_index({0, 1, 0, 1}), bits_index({0, 1, 1, 0}),
                   bits_index({1, 0, 0, 1}), bits_index({1, 0, 1, 0})})
    v(idx) = -0.5 * outer;
  return v;
}

// n == 0 means "use the state's natural register size"
void require_n(const std::string& name, int n, int want) {
  if (n != want && n != 0)
    throw UnknownState("state '" + name + "' is defined for n=" + std::to_string(want));
}

}  // namespace

Vector named_pure(const std::string& name, int n) {
  const std::string id = lowered(name);
  if (id == "ghz") {
    if (n < 2) throw UnknownState("ghz needs n >= 2");
    return ghz(n);
  }
  if (id == "w") {
    if (n < 2) throw UnknownState("w needs n >= 2");
    return w_state(n);
  }
  if (id == "bell") {
    require_n(id, n, 2);
    return ghz(2);
  }
  if (id == "singlet") {
    require_n(id, n, 2);
    return singlet2();
  }
  if (id == "cl4" || id == "cluster4") {
    require_n(id, n, 4);
    return cluster4();
  }
  if (id == "d24" || id == "dicke24") {
    require_n(id, n, 4);
    return dicke24();
  }
  if (id == "singlet4" || id == "s4") {
    require_n(id, n, 4);
    return singlet4();
  }
  throw UnknownState("unknown state '" + name + "'");
}

Vector family_base(const NoisyFamily& family) {
  if (family.base == "custom") {
    const Eigen::Index dim = Eigen::Index(1) << family.n;
    if (family.custom_amplitudes.size() != dim)
      throw DimensionError("custom amplitudes do not match qubit count");
    const double norm = family.custom_amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-8) throw InvalidParameter("custom amplitudes not normalized");
    return family.custom_amplitudes / norm;
  }
  const std::string id = lowered(family.base);
  if (id == "werner") {
    if (family.n == 2) return singlet2();
    return named_pure("ghz", family.n);
  }
  return named_pure(id, family.n);
}

Matrix family_state(const NoisyFamily& family) {
  if (family.p < 0.0 || family.p > 1.0)
    throw InvalidParameter("mixing weight must lie in [0,1]");
  const Vector psi = family_base(family);
  const Eigen::Index dim = psi.size();
  Matrix rho = family.p * (psi * psi.adjoint());
  rho += ((1.0 - family.p) / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return rho;
}

NoisyFamily parse_family_spec(const std::string& spec) {
  // family:<name>,n=<int>,p=<float>
  const std::string prefix = "family:";
  if (spec.rfind(prefix, 0) != 0)
    throw InvalidParameter("family spec must start with 'family:'");
  NoisyFamily out;
  std::string rest = spec.substr(prefix.size());
  std::size_t pos = 0;
  int field = 0;
  while (pos <= rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string token = rest.substr(pos, comma - pos);
    if (field == 0) {
      out.base = token;
    } else if (token.rfind("n=", 0) == 0) {
      out.n = std::stoi(token.substr(2));
    } else if (token.rfind("p=", 0) == 0) {
      out.p = std::stod(token.substr(2));
    } else if (!token.empty()) {
      throw InvalidParameter("unknown family field '" + token + "'");
    }
    ++field;
    pos = comma + 1;
  }
  if (out.base.empty() || out.n < 2) throw InvalidParameter("family spec needs a name and n>=2");
  return out;
}

Matrix random_density(int n, int rank, std::uint64_t seed) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (rank < 1 || rank > dim) throw InvalidParameter("rank must lie in 1..2^n");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitize(rho);
}

Matrix random_separable(int n, int terms, std::uint64_t seed) {
  if (terms < 1) throw InvalidParameter("terms must be positive");
  const Eigen::Index dim = Eigen::Index(1) << n;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);

  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& w : weights) {
    w = expo(rng);
    total += w;
  }

  Matrix rho = Matrix::Zero(dim, dim);
  for (int r = 0; r < terms; ++r) {
    Vector prod(1);
    prod(0) = 1.0;
    for (int q = 0; q < n; ++q)
      prod = tensor_product_vec(prod, haar_state(2, rng()));
    rho += (weights[static_cast<std::size_t>(r)] / total) * (prod * prod.adjoint());
  }
  return hermitize(rho);
}

}  // namespace kent
