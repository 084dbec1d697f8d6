#include <doctest.h>

#include <cmath>
#include <random>

#include "kent/partitions.hpp"
#include "kent/sep_eigenvalue.hpp"
#include "kent/states.hpp"
#include "test_util.hpp"

using namespace kent;
using kent_test::bell_phi_plus;
using kent_test::random_psd;
using kent_test::random_state;

namespace {

GConfig test_cfg(std::uint64_t seed = 7) {
  GConfig cfg;
  cfg.seed = seed;
  return cfg;
}

Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

Matrix random_contraction(Eigen::Index dim, std::uint64_t seed) {
  Matrix l = random_psd(dim, seed);
  return l / spectral_norm(l);
}

double product_overlap(const Matrix& l, const std::vector<Vector>& qubit_states) {
  const Vector prod = kron_all(qubit_states);
  return std::real(Complex(prod.adjoint() * (l * prod)));
}

// Brute-force grid over product Bloch angles for the fully separable g of a
// 3-qubit operator: 2-degree real mesh, random-phase spot checks, then a
// shrinking local polish. Independent of the iteration under test.
double grid_oracle_3q(const Matrix& l) {
  auto real_qubit = [](double theta) {
    Vector v(2);
    v << std::cos(theta), std::sin(theta);
    return v;
  };
  const double step = 2.0 * M_PI / 180.0;
  double best = -1.0;
  double best_t[3] = {0, 0, 0};
  for (double t1 = 0.0; t1 < M_PI; t1 += step)
    for (double t2 = 0.0; t2 < M_PI; t2 += step)
      for (double t3 = 0.0; t3 < M_PI; t3 += step) {
        const double v =
            product_overlap(l, {real_qubit(t1), real_qubit(t2), real_qubit(t3)});
        if (v > best) {
          best = v;
          best_t[0] = t1;
          best_t[1] = t2;
          best_t[2] = t3;
        }
      }

  // local polish, still phase-free
  double width = step;
  for (int round = 0; round < 60; ++round) {
    bool moved = false;
    for (int c = 0; c < 3; ++c)
      for (double delta : {-width, width}) {
        double t[3] = {best_t[0], best_t[1], best_t[2]};
        t[c] += delta;
        const double v = product_overlap(l, {real_qubit(t[0]), real_qubit(t[1]),
                                             real_qubit(t[2])});
        if (v > best) {
          best = v;
          best_t[c] = t[c];
          moved = true;
        }
      }
    if (!moved) width *= 0.5;
    if (width < 1e-10) break;
  }

  // phases must not beat the real-angle optimum for these states
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int s = 0; s < 200000; ++s) {
    std::vector<Vector> qs;
    for (int q = 0; q < 3; ++q) {
      const double theta = std::acos(1.0 - 2.0 * uni(rng)) / 2.0;
      const double phi = 2.0 * M_PI * uni(rng);
      Vector v(2);
      v << std::cos(theta), std::sin(theta) * Complex(std::cos(phi), std::sin(phi));
      qs.push_back(v);
    }
    CHECK(product_overlap(l, qs) <= best + 1e-9);
  }
  return best;
}

}  // namespace

TEST_CASE("g of the identity is one for every partition") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  const Matrix id = Matrix::Identity(8, 8);
  for (int k = 2; k <= 3; ++k)
    for (const auto& p : enumerate_valid(3, k))
      CHECK(g_partition(id, layout, p, test_cfg()).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("g of the Bell projector matches the Schmidt oracle") {
  const Matrix proj = projector(bell_phi_plus());
  const RegisterLayout layout = RegisterLayout::qubits(2);
  const Partition p = parse_partition_key("1|2", 2);
  const double oracle = g_pure_bipartite_oracle(bell_phi_plus(), 2, 2);
  CHECK(oracle == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g_partition(proj, layout, p, test_cfg()).value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("g of the W3 projector: grid oracle at the finest partition") {
  const Matrix proj = projector(named_pure("w", 3));
  const double oracle = grid_oracle_3q(proj);
  CHECK(oracle == doctest::Approx(4.0 / 9.0).epsilon(1e-6));

  const RegisterLayout layout = RegisterLayout::qubits(3);
  const GResult r = g_partition(proj, layout, finest_partition(3), test_cfg());
  CHECK(r.value == doctest::Approx(4.0 / 9.0).epsilon(1e-6));
  CHECK(std::abs(r.value - oracle) < 1e-5);
}

TEST_CASE("g of the GHZ4 projector across 12|34") {
  const Vector ghz4 = named_pure("ghz", 4);
  const RegisterLayout layout = RegisterLayout::qubits(4);
  const Partition p = parse_partition_key("12|34", 4);
  CHECK(g_pure_bipartite_oracle(ghz4, layout, p) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g_partition(projector(ghz4), layout, p, test_cfg()).value ==
        doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("GResult value recomputes from its optimizer") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  const Matrix l = random_contraction(8, 311);
  for (const auto& p : enumerate_valid(3, 2)) {
    const GResult r = g_partition(l, layout, p, test_cfg());
    REQUIRE(r.optimizer.size() == 2);
    // rebuild the product state in the partition's block order, then undo
    std::vector<int> order;
    for (const auto& b : p.blocks) order.insert(order.end(), b.begin(), b.end());
    const Vector prod = kron_all(r.optimizer);
    const Matrix lp = permute_subsystems(l, layout, order);
    CHECK(std::abs(std::real(Complex(prod.adjoint() * (lp * prod))) - r.value) < 1e-10);
    CHECK(r.value >= -1e-12);
    CHECK(r.value <= spectral_norm(l) + 1e-9);
  }
}

TEST_CASE("g profile of GHZ3 is one half everywhere") {
  const ProfileResult profile =
      g_profile(projector(named_pure("ghz", 3)), RegisterLayout::qubits(3), test_cfg());
  REQUIRE(profile.values.size() == 4);
  for (const auto& [key, value] : profile.values) {
    CAPTURE(key);
    CHECK(value == doctest::Approx(0.5).epsilon(1e-7));
  }
}

TEST_CASE("g profile of W3") {
  const ProfileResult profile =
      g_profile(projector(named_pure("w", 3)), RegisterLayout::qubits(3), test_cfg());
  CHECK(profile.values.at("1|2|3") == doctest::Approx(4.0 / 9.0).epsilon(1e-6));
  for (const auto& key : {"12|3", "1|23", "13|2"})
    CHECK(profile.values.at(key) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("g profile of the identity is all ones") {
  const ProfileResult profile =
      g_profile(Matrix::Identity(8, 8), RegisterLayout::qubits(3), test_cfg());
  for (const auto& [key, value] : profile.values) {
    CAPTURE(key);
    CHECK(value == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bipartite oracle basics") {
  const Vector prod = tensor_product_vec(random_state(2, 21), random_state(4, 22));
  CHECK(g_pure_bipartite_oracle(prod, 2, 4) == doctest::Approx(1.0).epsilon(1e-12));

  const Vector w3 = named_pure("w", 3);
  CHECK(g_pure_bipartite_oracle(w3, RegisterLayout::qubits(3), parse_partition_key("1|23", 3)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(g_pure_bipartite_oracle(w3, 3, 3), DimensionError);
}

TEST_CASE("scale equivariance") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  const Matrix l = random_contraction(8, 501);
  const Partition p = parse_partition_key("12|3", 3);
  const double full = g_partition(l, layout, p, test_cfg()).value;
  for (double alpha : {0.25, 0.5, 0.9}) {
    const double scaled = g_partition(alpha * l, layout, p, test_cfg()).value;
    CHECK(std::abs(scaled - alpha * full) < 1e-6);
  }
}

TEST_CASE("multiplicativity across a product of 2-qubit contractions") {
  const RegisterLayout l2 = RegisterLayout::qubits(2);
  const RegisterLayout l4 = RegisterLayout::qubits(4);
  const Partition p2 = parse_partition_key("1|2", 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix l1 = random_contraction(4, 600 + 2 * seed);
    const Matrix l2m = random_contraction(4, 601 + 2 * seed);
    const double g1 = g_partition(l1, l2, p2, test_cfg()).value;
    const double g2 = g_partition(l2m, l2, p2, test_cfg()).value;
    const double joint =
        g_partition(tensor_product(l1, l2m), l4, finest_partition(4), test_cfg()).value;
    CHECK(std::abs(joint - g1 * g2) < 1e-4);
  }
}

TEST_CASE("profile is monotone under block merging") {
  const RegisterLayout layout = RegisterLayout::qubits(4);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ProfileResult profile =
        g_profile(random_contraction(16, 700 + seed), layout, test_cfg());
    for (int k = 4; k >= 3; --k)
      for (const auto& t : enumerate_valid(4, k))
        for (const auto& r : coarsenings_b(t, k - 1)) {
          CHECK(profile.values.at(canonical_key(r)) >=
                profile.values.at(canonical_key(t)) - 1e-6);
        }
  }
}

TEST_CASE("aggregate g is invariant under qubit permutations") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  const Matrix l = random_contraction(8, 801);
  const Matrix pl = permute_subsystems(l, layout, {3, 1, 2});
  for (int k = 2; k <= 3; ++k) {
    double a = 0.0, b = 0.0;
    for (const auto& p : enumerate_valid(3, k)) {
      a = std::max(a, g_partition(l, layout, p, test_cfg()).value);
      b = std::max(b, g_partition(pl, layout, p, test_cfg()).value);
    }
    CHECK(std::abs(a - b) < 1e-5);
  }
}

TEST_CASE("sweeps are monotone") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GResult r = g_partition(random_contraction(8, 900 + seed), layout,
                                  parse_partition_key("1|2|3", 3), test_cfg(seed));
    for (std::size_t s = 1; s < r.sweep_values.size(); ++s)
      CHECK(r.sweep_values[s] >= r.sweep_values[s - 1] - 1e-10);
  }
}

TEST_CASE("iteration agrees with the Schmidt oracle on random pure projectors") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Vector psi = random_state(8, 1000 + seed);
    const Matrix proj = projector(psi);
    for (const auto& p : enumerate_valid(3, 2)) {
      const double oracle = g_pure_bipartite_oracle(psi, layout, p);
      const double value = g_partition(proj, layout, p, test_cfg()).value;
      CAPTURE(seed);
      CAPTURE(canonical_key(p));
      CHECK(std::abs(value - oracle) < 1e-5);
    }
  }
}

TEST_CASE("rejects indefinite operators and dimension mismatches") {
  const RegisterLayout layout = RegisterLayout::qubits(2);
  Matrix indefinite = Matrix::Identity(4, 4);
  indefinite(0, 0) = -0.5;
  CHECK_THROWS_AS(g_partition(indefinite, layout, parse_partition_key("1|2", 2), test_cfg()),
                  NotPositive);
  CHECK_THROWS_AS(g_partition(Matrix::Identity(8, 8), layout, parse_partition_key("1|2", 2),
                              test_cfg()),
                  DimensionError);
}

TEST_CASE("config validation") {
  const RegisterLayout layout = RegisterLayout::qubits(2);
  const Matrix id = Matrix::Identity(4, 4);
  const Partition p = parse_partition_key("1|2", 2);
  GConfig bad = test_cfg();
  bad.tol = 0.0;
  CHECK_THROWS_AS(g_partition(id, layout, p, bad), InvalidParameter);
  bad = test_cfg();
  bad.max_sweeps = 0;
  CHECK_THROWS_AS(g_partition(id, layout, p, bad), InvalidParameter);
  bad = test_cfg();
  bad.restarts = 0;
  CHECK_THROWS_AS(g_partition(id, layout, p, bad), InvalidParameter);
}

TEST_CASE("deterministic for a fixed config") {
  const RegisterLayout layout = RegisterLayout::qubits(3);
  const Matrix l = random_contraction(8, 1102);
  const Partition p = parse_partition_key("12|3", 3);
  const double a = g_partition(l, layout, p, test_cfg(42)).value;
  const double b = g_partition(l, layout, p, test_cfg(42)).value;
  CHECK(a == b);
}
