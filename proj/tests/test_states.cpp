#include <doctest.h>

#include <cmath>

#include "kent/states.hpp"
#include "test_util.hpp"

using namespace kent;

TEST_CASE("named amplitudes match the defining formulas") {
  const Vector ghz2 = named_pure("ghz", 2);
  CHECK(std::abs(ghz2(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ghz2(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(ghz2.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((ghz2 - named_pure("bell", 2)).norm() == doctest::Approx(0.0));

  const Vector w4 = named_pure("w", 4);
  CHECK(std::abs(w4(8) - 0.5) < 1e-15);  // |1000>
  CHECK(std::abs(w4(1) - 0.5) < 1e-15);  // |0001>

  // |0011> is index 3 of 16
  CHECK(std::abs(named_pure("d24", 4)(3) - 1.0 / std::sqrt(6.0)) < 1e-15);

  const Vector s4 = named_pure("singlet4", 4);
  CHECK(std::abs(s4(5) + 1.0 / (2.0 * std::sqrt(3.0))) < 1e-15);  // |0101>
  CHECK(s4.norm() == doctest::Approx(1.0).epsilon(1e-14));

  const Vector cl4 = named_pure("cl4", 4);
  CHECK(std::abs(cl4(15) + 0.5) < 1e-15);  // -|1111>
  CHECK(cl4.norm() == doctest::Approx(1.0).epsilon(1e-14));

  for (const char* name : {"ghz", "w"})
    for (int n = 2; n <= 4; ++n) {
      const Vector v = named_pure(name, n);
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(v.imag().cwiseAbs().maxCoeff() == 0.0);
    }

  CHECK_THROWS_AS(named_pure("cl4", 3), UnknownState);
  CHECK_THROWS_AS(named_pure("nope", 2), UnknownState);
}

TEST_CASE("noisy family mixes toward the maximally mixed state") {
  NoisyFamily f{"werner", 2, 0.0, {}};
  CHECK((family_state(f) - 0.25 * Matrix::Identity(4, 4)).norm() < 1e-15);

  NoisyFamily bell{"bell", 2, 1.0, {}};
  const Vector phi = named_pure("bell", 2);
  CHECK((family_state(bell) - phi * phi.adjoint()).norm() < 1e-15);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    NoisyFamily g{"ghz", 3, uni(rng), {}};
    CHECK(family_state(g).trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  }

  CHECK_THROWS_AS(family_state(NoisyFamily{"ghz", 3, 1.5, {}}), InvalidParameter);
}

TEST_CASE("family_state is affine in p") {
  const double p1 = 0.2, p2 = 0.8, alpha = 0.37;
  NoisyFamily a{"w", 3, p1, {}}, b{"w", 3, p2, {}};
  NoisyFamily mixed{"w", 3, alpha * p1 + (1 - alpha) * p2, {}};
  const Matrix lhs = family_state(mixed);
  const Matrix rhs = alpha * family_state(a) + (1 - alpha) * family_state(b);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("werner base follows the two-branch definition") {
  CHECK((family_base(NoisyFamily{"werner", 2, 0, {}}) - named_pure("singlet", 2)).norm() <
        1e-15);
  CHECK((family_base(NoisyFamily{"werner", 3, 0, {}}) - named_pure("ghz", 3)).norm() < 1e-15);
}

TEST_CASE("random density matrices") {
  const Matrix pure = random_density(2, 1, 9);
  CHECK((pure * pure - pure).norm() < 1e-10);  // purity one at rank one

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Matrix rho = random_density(2, 1 + static_cast<int>(seed % 4), seed);
    CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(rho) >= -1e-12);
  }

  const Matrix a = random_density(3, 4, 77);
  const Matrix b = random_density(3, 4, 77);
  CHECK((a - b).norm() == 0.0);

  CHECK_THROWS_AS(random_density(2, 5, 1), InvalidParameter);
}

TEST_CASE("random separable states") {
  const Matrix one_term = random_separable(3, 1, 13);
  CHECK((one_term * one_term - one_term).norm() < 1e-10);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Matrix rho = random_separable(2, 3, seed);
    CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(rho) >= -1e-12);
  }

  CHECK((random_separable(3, 4, 21) - random_separable(3, 4, 21)).norm() == 0.0);
}

TEST_CASE("family spec grammar") {
  const NoisyFamily f = parse_family_spec("family:werner,n=3,p=0.25");
  CHECK(f.base == "werner");
  CHECK(f.n == 3);
  CHECK(f.p == doctest::Approx(0.25));
  CHECK_THROWS_AS(parse_family_spec("werner,n=3"), InvalidParameter);
  CHECK_THROWS_AS(parse_family_spec("family:werner,n=3,q=1"), InvalidParameter);
}
