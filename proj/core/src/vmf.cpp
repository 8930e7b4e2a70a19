#include "eigenorient/vmf.hpp"

#include <cmath>
#include <string>

namespace eigenorient {
namespace {

// Marginal of mu^T x under vMF(kappa) in R^d, sampled with the standard
// beta-envelope rejection scheme (density on [-1,1] proportional to
// exp(kappa w) (1 - w^2)^{(d-3)/2}).
double sample_radial_component(double kappa, int d, std::mt19937_64& rng) {
  const double dm1 = static_cast<double>(d - 1);
  const double b = dm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dm1 * dm1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + dm1 * std::log(1.0 - x0 * x0);

  std::gamma_distribution<double> gamma(dm1 / 2.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (;;) {
    const double g1 = gamma(rng);
    const double g2 = gamma(rng);
    const double z = g1 / (g1 + g2);  // Beta((d-1)/2, (d-1)/2)
    const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = unif(rng);
    if (kappa * w + dm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) {
      return w;
    }
  }
}

// Householder reflection sending e1 to mu, applied to x.
Eigen::VectorXd rotate_from_pole(const Eigen::VectorXd& mu,
                                 const Eigen::VectorXd& x) {
  Eigen::VectorXd u = -mu;
  u(0) += 1.0;  // u = e1 - mu
  const double un2 = u.squaredNorm();
  if (un2 < 1e-24) return x;  // mu == e1
  return x - u * (2.0 * u.dot(x) / un2);
}

}  // namespace

double vmf_bessel_ratio(int d, double kappa) {
  if (d < 1) throw InvalidDimension("dimension must be >= 1");
  if (kappa < 0.0) throw Error("concentration must be nonnegative");
  if (kappa == 0.0) return 0.0;

  // Continued fraction I_nu / I_{nu-1} = 1/(2nu/x + 1/(2(nu+1)/x + ...)),
  // nu = d/2, evaluated with the modified Lentz scheme.
  const double nu = static_cast<double>(d) / 2.0;
  constexpr double tiny = 1e-300;
  double f = tiny;
  double C = f;
  double D = 0.0;
  for (int m = 1; m <= 500; ++m) {
    const double bm = 2.0 * (nu + m - 1) / kappa;
    D = bm + D;
    if (std::abs(D) < tiny) D = tiny;
    C = bm + 1.0 / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

double vmf_kappa_approx(double r_bar, int d, double cap) {
  if (d < 1) throw InvalidDimension("dimension must be >= 1");
  if (r_bar < 0.0 || r_bar > 1.0) {
    throw Error("mean resultant length must lie in [0, 1]");
  }
  const double denom = 1.0 - r_bar * r_bar;
  if (denom <= 0.0) return cap;
  const double kappa = r_bar * (static_cast<double>(d) - r_bar * r_bar) / denom;
  return std::min(kappa, cap);
}

double vmf_kappa_mle(double r_bar, int d, int max_iterations, double tol,
                     double cap) {
  double kappa = vmf_kappa_approx(r_bar, d, cap);
  if (kappa >= cap || kappa <= 0.0) return kappa;
  for (int it = 0; it < max_iterations; ++it) {
    const double a = vmf_bessel_ratio(d, kappa);
    const double f = a - r_bar;
    if (std::abs(f) < tol) break;
    // d/dkappa A_d = 1 - A^2 - (d-1)/kappa * A
    const double da =
        1.0 - a * a - (static_cast<double>(d) - 1.0) / kappa * a;
    if (da == 0.0) break;
    kappa = std::clamp(kappa - f / da, 1e-12, cap);
  }
  return kappa;
}

Eigen::VectorXd uniform_sphere_sample(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(d);
  for (;;) {
    for (int i = 0; i < d; ++i) x(i) = normal(rng);
    const double norm = x.norm();
    if (norm > 1e-12) return x / norm;
  }
}

std::vector<Eigen::VectorXd> vmf_sample(const Eigen::VectorXd& mu,
                                        double kappa, int count,
                                        std::mt19937_64& rng) {
  const int d = static_cast<int>(mu.size());
  if (d < 2) {
    throw InvalidDimension("von Mises-Fisher sampling needs dimension >= 2");
  }
  if (std::abs(mu.norm() - 1.0) > 1e-8) {
    throw Error("mean direction must be a unit vector");
  }
  if (kappa < 0.0) throw Error("concentration must be nonnegative");
  if (count < 0) throw Error("sample count must be nonnegative");

  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (kappa == 0.0) {
      samples.push_back(uniform_sphere_sample(d, rng));
      continue;
    }
    const double w = sample_radial_component(kappa, d, rng);
    const Eigen::VectorXd v = uniform_sphere_sample(d - 1, rng);
    Eigen::VectorXd x(d);
    x(0) = w;
    x.tail(d - 1) = std::sqrt(std::max(0.0, 1.0 - w * w)) * v;
    samples.push_back(rotate_from_pole(mu, x));
  }
  return samples;
}

std::vector<Eigen::VectorXd> vmf_sample(const Eigen::VectorXd& mu,
                                        double kappa, int count,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return vmf_sample(mu, kappa, count, rng);
}

}  // namespace eigenorient
