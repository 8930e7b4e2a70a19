#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "eigenorient/orient.hpp"
#include "eigenorient/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace eigenorient;

namespace {
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}

TEST_SUITE("sort_eigensystem") {
  TEST_CASE("ascending eigenvalues reverse") {
    const SortedEigensystem sorted = sort_eigensystem(
        {Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(1.0, 2.0, 3.0)});
    CHECK(sorted.sort_indices(0) == 2);
    CHECK(sorted.sort_indices(1) == 1);
    CHECK(sorted.sort_indices(2) == 0);
    CHECK(sorted.Esort(0) == 3.0);
    CHECK(sorted.Esort(2) == 1.0);
    CHECK(sorted.Vsort.col(0) == Eigen::Vector3d(0.0, 0.0, 1.0));
  }

  TEST_CASE("descending eigenvalues keep the identity permutation") {
    const SortedEigensystem sorted = sort_eigensystem(
        {Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(3.0, 2.0, 1.0)});
    CHECK(sorted.sort_indices == Eigen::Vector3i(0, 1, 2));
  }

  TEST_CASE("negative eigenvalues sort by magnitude, keeping their sign") {
    const SortedEigensystem sorted = sort_eigensystem(
        {Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(-5.0, 2.0, 4.0)});
    CHECK(sorted.Esort == Eigen::Vector3d(-5.0, 4.0, 2.0));
    CHECK(sorted.sort_indices == Eigen::Vector3i(0, 2, 1));
  }

  TEST_CASE("tied magnitudes keep input order") {
    const SortedEigensystem sorted = sort_eigensystem(
        {Eigen::MatrixXd::Identity(4, 4), Eigen::Vector4d(2.0, -3.0, 3.0, 2.0)});
    CHECK(sorted.Esort == Eigen::Vector4d(-3.0, 3.0, 2.0, 2.0));
    CHECK(sorted.sort_indices == Eigen::Vector4i(1, 2, 0, 3));
  }
}

TEST_SUITE("orient_eigenvectors") {
  TEST_CASE("3x3 reference basis") {
    const OrientedEigensystem oriented = orient_eigenvectors(
        {fixtures::r3_input_basis(), fixtures::r3_eigenvalues()});

    CHECK(oriented.signs == fixtures::r3_expected_signs());
    CHECK(oriented.sort_indices == Eigen::Vector3i(0, 1, 2));
    CHECK(oracles::max_abs_diff(oriented.Vor, fixtures::r3_expected_oriented()) <
          1e-3);
    CHECK(oracles::max_abs_diff(oriented.theta.matrix() * kRadToDeg,
                                fixtures::r3_expected_theta_deg()) < 1e-3);
    // The flipped column is exactly the input column negated.
    CHECK(oriented.Vor.col(0) == (-fixtures::r3_input_basis().col(0)).eval());
  }

  TEST_CASE("identity basis is a fixed point") {
    const OrientedEigensystem oriented = orient_eigenvectors(
        {Eigen::MatrixXd::Identity(5, 5),
         Eigen::VectorXd::LinSpaced(5, 5.0, 1.0)});
    CHECK(oriented.signs == Eigen::VectorXd::Ones(5));
    CHECK(oriented.theta.matrix() == Eigen::MatrixXd::Zero(5, 5));
    CHECK(oriented.Vor == Eigen::MatrixXd::Identity(5, 5));
  }

  TEST_CASE("2x2 reflected basis") {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd v(2, 2);
    v << -h, -h,
         -h, h;
    const OrientedEigensystem oriented =
        orient_eigenvectors({v, Eigen::Vector2d(2.0, 1.0)});
    CHECK(oriented.signs == Eigen::Vector2d(-1.0, 1.0));
    CHECK(oriented.theta(0, 1) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
  }

  TEST_CASE("n = 1") {
    Eigen::MatrixXd v(1, 1);
    v << -1.0;
    Eigen::VectorXd lambda(1);
    lambda << 4.0;
    const OrientedEigensystem oriented = orient_eigenvectors({v, lambda});
    CHECK(oriented.signs(0) == -1.0);
    CHECK(oriented.Vor(0, 0) == 1.0);
  }

  TEST_CASE("residual oracle over random orthonormal bases") {
    for (Eigen::Index n = 2; n <= 12; ++n) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Eigen::MatrixXd v = random_orthonormal(n, 1000 * n + seed);
        const OrientedEigensystem oriented = orient_eigenvectors(
            {v, Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0)});
        CHECK(oracles::orientation_residual(oriented.theta, v, oriented.signs) <
              1e-9);
        // Two-path equality: the reflected sort equals the generated basis.
        CHECK(oracles::max_abs_diff(oriented.Vor,
                                    oracles::generator_product(oriented.theta)) <
              1e-9);
        // Angle domain.
        CHECK(oracles::max_abs(oriented.theta.matrix()) <=
              std::numbers::pi / 2 + 1e-15);
        // First pivot of the oriented basis is nonnegative.
        CHECK(oriented.Vor(0, 0) >= 0.0);
      }
    }
  }

  TEST_CASE("flip invariance is exact") {
    std::mt19937_64 rng(99);
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
      const Eigen::MatrixXd v = random_orthonormal(n, seed);
      const Eigen::VectorXd lambdas =
          Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0);

      std::vector<bool> mask(static_cast<std::size_t>(n));
      for (auto&& bit : mask) bit = coin(rng);
      const Eigen::MatrixXd flipped = flip_columns(v, mask);

      const OrientedEigensystem a = orient_eigenvectors({v, lambdas});
      const OrientedEigensystem b = orient_eigenvectors({flipped, lambdas});

      CHECK(a.Vor == b.Vor);
      CHECK(a.theta.matrix() == b.theta.matrix());
      for (Eigen::Index t = 0; t < n; ++t) {
        const double flip = mask[static_cast<std::size_t>(a.sort_indices(t))]
                                ? -1.0
                                : 1.0;
        CHECK(b.signs(t) == flip * a.signs(t));
      }
    }
  }

  TEST_CASE("idempotence") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Eigen::Index n = 3 + static_cast<Eigen::Index>(seed % 5);
      const OrientedEigensystem first = orient_eigenvectors(
          {random_orthonormal(n, 555 + seed),
           Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0)});
      const OrientedEigensystem second =
          orient_eigenvectors({first.Vor, first.Eor});
      CHECK(second.signs == Eigen::VectorXd::Ones(n));
      CHECK(second.Vor == first.Vor);
      CHECK(oracles::max_abs_diff(second.theta.matrix(),
                                  first.theta.matrix()) < 1e-9);
    }
  }

  TEST_CASE("column permutations only permute sort_indices") {
    const Eigen::Index n = 5;
    const Eigen::MatrixXd v = random_orthonormal(n, 314);
    Eigen::VectorXd lambdas(n);
    lambdas << 9.0, 7.0, 5.0, 3.0, 1.0;

    std::vector<int> perm{3, 0, 4, 1, 2};
    Eigen::MatrixXd v_perm(n, n);
    Eigen::VectorXd lambdas_perm(n);
    for (Eigen::Index t = 0; t < n; ++t) {
      v_perm.col(t) = v.col(perm[static_cast<std::size_t>(t)]);
      lambdas_perm(t) = lambdas(perm[static_cast<std::size_t>(t)]);
    }

    const OrientedEigensystem a = orient_eigenvectors({v, lambdas});
    const OrientedEigensystem b = orient_eigenvectors({v_perm, lambdas_perm});
    CHECK(a.Vor == b.Vor);
    CHECK(a.Eor == b.Eor);
    CHECK(a.signs == b.signs);
    CHECK(a.theta.matrix() == b.theta.matrix());
    for (Eigen::Index t = 0; t < n; ++t) {
      CHECK(perm[static_cast<std::size_t>(b.sort_indices(t))] ==
            a.sort_indices(t));
    }
  }

  TEST_CASE("repeated eigenvalues are accepted") {
    const Eigen::MatrixXd v = random_orthonormal(4, 8);
    const OrientedEigensystem oriented =
        orient_eigenvectors({v, Eigen::Vector4d(2.0, 2.0, 2.0, 2.0)});
    CHECK(oriented.sort_indices == Eigen::Vector4i(0, 1, 2, 3));
    CHECK(oracles::orientation_residual(oriented.theta, v, oriented.signs) <
          1e-9);
  }

  TEST_CASE("non-orthonormal input is rejected with its residual") {
    Eigen::MatrixXd v = random_orthonormal(3, 1);
    v(0, 0) += 1e-4;
    try {
      orient_eigenvectors({v, Eigen::Vector3d(3.0, 2.0, 1.0)});
      FAIL("expected NonOrthonormalInput");
    } catch (const NonOrthonormalInput& e) {
      CHECK(e.residual() > 1e-8);
    }
  }

  TEST_CASE("shape mismatches are rejected") {
    CHECK_THROWS_AS(
        orient_eigenvectors({Eigen::MatrixXd::Identity(3, 2),
                             Eigen::Vector3d(1.0, 2.0, 3.0)}),
        DimensionMismatch);
    CHECK_THROWS_AS(
        orient_eigenvectors({Eigen::MatrixXd::Identity(3, 3),
                             Eigen::Vector2d(1.0, 2.0)}),
        DimensionMismatch);
  }

  TEST_CASE("reorthonormalization rescues rounded inputs") {
    const EigenSystem rounded{fixtures::r3_input_basis_rounded(),
                              fixtures::r3_eigenvalues()};
    CHECK_THROWS_AS(orient_eigenvectors(rounded), NonOrthonormalInput);

    OrientOptions options;
    options.reorthonormalize = true;
    const OrientedEigensystem oriented = orient_eigenvectors(rounded, options);
    CHECK(oriented.signs == fixtures::r3_expected_signs());
    CHECK(oracles::max_abs_diff(oriented.theta.matrix() * kRadToDeg,
                                fixtures::r3_expected_theta_deg()) < 0.05);
  }

  TEST_CASE("generator round trip reproduces the oriented basis") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed);
      const OrientedEigensystem oriented = orient_eigenvectors(
          {random_orthonormal(n, 77 + seed),
           Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0)});
      CHECK(oracles::max_abs_diff(
                generate_oriented_eigenvectors(oriented.theta), oriented.Vor) <
            1e-9);
    }
  }
}
