#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "eigenorient/dirstats.hpp"
#include "eigenorient/orient.hpp"
#include "eigenorient/synth.hpp"
#include "eigenorient/vmf.hpp"
#include "support/oracles.hpp"

using namespace eigenorient;

namespace {

constexpr double kPi = std::numbers::pi;

OrientedEigensystem member_from_theta(const AngleMatrix& theta) {
  const Eigen::Index n = theta.dim();
  OrientedEigensystem member;
  member.Vor = generate_oriented_eigenvectors(theta);
  member.Eor = Eigen::VectorXd::LinSpaced(n, static_cast<double>(n), 1.0);
  member.signs = Eigen::VectorXd::Ones(n);
  member.theta = theta;
  member.sort_indices = Eigen::VectorXi::LinSpaced(n, 0, static_cast<int>(n) - 1);
  return member;
}

BasisEnsemble ensemble_from_thetas(const std::vector<AngleMatrix>& thetas) {
  BasisEnsemble ensemble;
  for (const auto& t : thetas) ensemble.members.push_back(member_from_theta(t));
  return ensemble;
}

}  // namespace

TEST_SUITE("mean_direction") {
  TEST_CASE("repeated vector is its own mean") {
    const std::vector<Eigen::VectorXd> xs(7, Eigen::Vector3d(1.0, 0.0, 0.0));
    const MeanDirection mean = mean_direction(xs);
    CHECK(mean.direction == Eigen::Vector3d(1.0, 0.0, 0.0));
    CHECK(mean.resultant_norm == doctest::Approx(7.0));
  }

  TEST_CASE("antipodal pair has no mean direction") {
    const std::vector<Eigen::VectorXd> xs{Eigen::Vector3d(1.0, 0.0, 0.0),
                                          Eigen::Vector3d(-1.0, 0.0, 0.0)};
    CHECK_THROWS_AS(mean_direction(xs), UndefinedMeanDirection);
  }

  TEST_CASE("concentrated samples point at the pole") {
    const Eigen::Vector3d pole(0.0, 0.0, 1.0);
    const auto xs = vmf_sample(pole, 100.0, 1000, 2024);
    const MeanDirection mean = mean_direction(xs);
    CHECK(oracles::angular_distance(mean.direction, pole) < 0.05);
  }

  TEST_CASE("invariant under permutation of the sample") {
    const auto xs = vmf_sample(Eigen::Vector3d(0.0, 1.0, 0.0), 5.0, 64, 3);
    auto reversed = xs;
    std::reverse(reversed.begin(), reversed.end());
    const MeanDirection a = mean_direction(xs);
    const MeanDirection b = mean_direction(reversed);
    CHECK(oracles::max_abs_diff(a.direction, b.direction) < 1e-14);
    CHECK(a.resultant_norm == doctest::Approx(b.resultant_norm));
  }

  TEST_CASE("rejects non-unit inputs") {
    const std::vector<Eigen::VectorXd> xs{Eigen::Vector3d(2.0, 0.0, 0.0)};
    CHECK_THROWS_AS(mean_direction(xs), Error);
  }
}

TEST_SUITE("mean_eigenbasis") {
  TEST_CASE("identical members average to themselves") {
    std::mt19937_64 rng(5);
    const AngleMatrix theta = oracles::random_angles(4, rng);
    const BasisEnsemble ensemble =
        ensemble_from_thetas({theta, theta, theta, theta});

    const MeanBasisReport report = mean_eigenbasis(ensemble);
    CHECK(oracles::max_abs_diff(report.V_bar,
                                generate_oriented_eigenvectors(theta)) < 1e-12);
    CHECK(oracles::max_abs_diff(report.theta_bar.matrix(), theta.matrix()) <
          1e-9);
    CHECK(report.lambda_bar ==
          ensemble.members.front().Eor);
    CHECK((report.resultant_norms.array() - 4.0).abs().maxCoeff() < 1e-12);
  }

  TEST_CASE("symmetric pair about an axis bisects") {
    // Two members differ only in the sign of the (2,3)-plane angle. Their
    // subspace rotations sum to a diagonal stretch, so the mean basis is
    // exactly the alpha = 0 basis.
    const double alpha = 10.0 * kPi / 180.0;
    AngleMatrix base(3);
    base.set(0, 1, 0.31);
    base.set(0, 2, -0.12);

    AngleMatrix plus = base;
    plus.set(1, 2, alpha);
    AngleMatrix minus = base;
    minus.set(1, 2, -alpha);

    const MeanBasisReport report =
        mean_eigenbasis(ensemble_from_thetas({plus, minus}));
    CHECK(oracles::max_abs_diff(report.V_bar,
                                generate_oriented_eigenvectors(base)) < 1e-12);
    CHECK(std::abs(report.theta_bar(1, 2)) < 1e-12);
    CHECK(report.theta_bar(0, 1) == doctest::Approx(0.31).epsilon(1e-9));
  }

  TEST_CASE("polar-form round trip for random angle matrices") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index n = 2 + trial % 5;
      const AngleMatrix theta = oracles::random_angles(n, rng);
      const BasisEnsemble ensemble = ensemble_from_thetas({theta, theta});
      const MeanBasisReport report = mean_eigenbasis(ensemble);
      CHECK(oracles::max_abs_diff(report.theta_bar.matrix(), theta.matrix()) <
            1e-9);
    }
  }

  TEST_CASE("cancelling columns have no mean direction") {
    AngleMatrix left(3);
    left.set(0, 1, kPi / 2);
    AngleMatrix right(3);
    right.set(0, 1, -kPi / 2);
    CHECK_THROWS_AS(mean_eigenbasis(ensemble_from_thetas({left, right})),
                    UndefinedMeanDirection);
  }

  TEST_CASE("a widely scattered ensemble fails the orthogonality gate") {
    AngleMatrix a(3);
    a.set(0, 1, 1.4);
    AngleMatrix b(3);
    b.set(0, 2, 1.4);
    AngleMatrix c(3);
    c.set(1, 2, -1.4);
    AngleMatrix d(3);
    CHECK_THROWS_AS(mean_eigenbasis(ensemble_from_thetas({a, b, c, d})),
                    NonOrthogonalMean);
  }

  TEST_CASE("lambda_bar stays within the member range") {
    std::mt19937_64 rng(31);
    BasisEnsemble ensemble;
    for (int i = 0; i < 6; ++i) {
      OrientedEigensystem member =
          member_from_theta(oracles::random_angles(3, rng));
      member.Eor = Eigen::Vector3d(9.0 + i, 4.0 - 0.1 * i, 1.0);
      ensemble.members.push_back(std::move(member));
    }
    const MeanBasisReport report = mean_eigenbasis(ensemble);
    for (Eigen::Index k = 0; k < 3; ++k) {
      double lo = 1e300;
      double hi = -1e300;
      for (const auto& m : ensemble.members) {
        lo = std::min(lo, m.Eor(k));
        hi = std::max(hi, m.Eor(k));
      }
      CHECK(report.lambda_bar(k) >= lo);
      CHECK(report.lambda_bar(k) <= hi);
    }
  }
}

TEST_SUITE("subspace_vectors") {
  TEST_CASE("identity angles give the leading unit vector") {
    const BasisEnsemble ensemble =
        ensemble_from_thetas({AngleMatrix(4), AngleMatrix(4)});
    for (Eigen::Index k = 1; k <= 4; ++k) {
      for (const auto& x : subspace_vectors(ensemble, k)) {
        REQUIRE(x.size() == 4 - k + 1);
        CHECK(x(0) == 1.0);
        CHECK(x.tail(x.size() - 1).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }

  TEST_CASE("dimensions shrink with the subspace index") {
    std::mt19937_64 rng(8);
    const BasisEnsemble ensemble =
        ensemble_from_thetas({oracles::random_angles(4, rng)});
    CHECK(subspace_vectors(ensemble, 1).front().size() == 4);
    CHECK(subspace_vectors(ensemble, 3).front().size() == 2);
    // k = 1 returns the full first column of the first subspace rotation.
    const Eigen::MatrixXd r1 =
        build_subspace_rotation(ensemble.members.front().theta, 1);
    CHECK(subspace_vectors(ensemble, 1).front() == r1.col(0));
  }

  TEST_CASE("unit norm across random ensembles") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index n = 2 + trial % 6;
      const BasisEnsemble ensemble = ensemble_from_thetas(
          {oracles::random_angles(n, rng), oracles::random_angles(n, rng)});
      for (Eigen::Index k = 1; k <= n; ++k) {
        for (const auto& x : subspace_vectors(ensemble, k)) {
          CHECK(std::abs(x.norm() - 1.0) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("index is validated") {
    const BasisEnsemble ensemble = ensemble_from_thetas({AngleMatrix(3)});
    CHECK_THROWS_AS(subspace_vectors(ensemble, 0), AxisOutOfRange);
    CHECK_THROWS_AS(subspace_vectors(ensemble, 4), AxisOutOfRange);
  }
}

TEST_SUITE("dispersion") {
  TEST_CASE("identical members collapse to the concentration cap") {
    std::mt19937_64 rng(21);
    const AngleMatrix theta = oracles::random_angles(3, rng);
    const DispersionReport report =
        dispersion(ensemble_from_thetas({theta, theta, theta}));
    CHECK((report.r_bar.array() >= 1.0 - 1e-12).all());
    CHECK(report.circular_variance.cwiseAbs().maxCoeff() < 1e-12);
    CHECK((report.kappa_basis.array() == kKappaCap).all());
    CHECK(report.counts == Eigen::Vector3i(3, 3, 3));
  }

  TEST_CASE("closed-form estimate at r = 0.9, d = 3") {
    CHECK(vmf_kappa_approx(0.9, 3) ==
          doctest::Approx(10.373684210526316).epsilon(1e-12));
  }

  TEST_CASE("circular variance complements the resultant length exactly") {
    const BasisEnsemble ensemble =
        wobble_ensemble(AngleMatrix(3), 30.0, 50, 4);
    const DispersionReport report = dispersion(ensemble);
    for (Eigen::Index k = 0; k < 3; ++k) {
      CHECK(report.circular_variance(k) + report.r_bar(k) == 1.0);
      CHECK(report.r_bar(k) >= 0.0);
      CHECK(report.r_bar(k) <= 1.0);
    }
  }

  TEST_CASE("recovers the generating concentration") {
    AngleMatrix theta_bar(3);
    theta_bar.set(0, 1, 0.35);
    theta_bar.set(0, 2, 0.17);
    theta_bar.set(1, 2, -0.26);
    const BasisEnsemble ensemble = wobble_ensemble(theta_bar, 100.0, 2000, 11);
    const DispersionReport report = dispersion(ensemble);
    // Subspaces 1 and 2 carry the scatter; the last is always collapsed.
    CHECK(report.kappa_basis(0) == doctest::Approx(100.0).epsilon(0.15));
    CHECK(report.kappa_basis(1) == doctest::Approx(100.0).epsilon(0.15));
    CHECK(report.kappa_basis(2) == kKappaCap);
  }

  TEST_CASE("estimates are monotone in the resultant length") {
    for (int d : {2, 3, 5, 9}) {
      double prev_approx = -1.0;
      double prev_mle = -1.0;
      for (double r = 0.05; r < 0.99; r += 0.05) {
        const double approx = vmf_kappa_approx(r, d);
        const double mle = vmf_kappa_mle(r, d);
        CHECK(approx > prev_approx);
        CHECK(mle > prev_mle);
        prev_approx = approx;
        prev_mle = mle;
      }
    }
  }

  TEST_CASE("degenerate ensembles are refused") {
    const BasisEnsemble single = ensemble_from_thetas({AngleMatrix(3)});
    CHECK_THROWS_AS(dispersion(single), DegenerateEnsemble);

    AngleMatrix left(3);
    left.set(0, 1, kPi / 2);
    AngleMatrix right(3);
    right.set(0, 1, -kPi / 2);
    CHECK_THROWS_AS(dispersion(ensemble_from_thetas({left, right})),
                    DegenerateEnsemble);
  }
}

TEST_SUITE("eigenvalue_covariance") {
  TEST_CASE("identical members have zero covariance") {
    std::mt19937_64 rng(2);
    const AngleMatrix theta = oracles::random_angles(3, rng);
    const Eigen::MatrixXd cov =
        eigenvalue_covariance(ensemble_from_thetas({theta, theta, theta}));
    CHECK(oracles::max_abs(cov) < 1e-12);
  }

  TEST_CASE("matches the direct two-member formula") {
    BasisEnsemble ensemble = ensemble_from_thetas({AngleMatrix(2), AngleMatrix(2)});
    ensemble.members[0].Eor = Eigen::Vector2d(4.0, 1.0);
    ensemble.members[1].Eor = Eigen::Vector2d(6.0, 2.0);
    const Eigen::MatrixXd cov = eigenvalue_covariance(ensemble);
    // Sample covariance of {(4,1),(6,2)}: var1 = 2, var2 = 0.5, cov = 1.
    CHECK(cov(0, 0) == doctest::Approx(2.0));
    CHECK(cov(1, 1) == doctest::Approx(0.5));
    CHECK(cov(0, 1) == doctest::Approx(1.0));
    CHECK(cov(1, 0) == doctest::Approx(1.0));
  }
}
