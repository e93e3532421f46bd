#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace rmds::detail {

// Seeded generator with hand-rolled variate transforms. mt19937_64 output is
// pinned by the standard, and avoiding std::*_distribution keeps the stream
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform sample from the closed p-ball of the given radius.
  Eigen::RowVectorXd ball_point(int p, double radius) {
    Eigen::RowVectorXd dir(p);
    double nrm = 0.0;
    do {
      for (int k = 0; k < p; ++k) dir(k) = normal();
      nrm = dir.norm();
    } while (nrm == 0.0);
    const double u = uniform();
    return dir * (radius * std::pow(u, 1.0 / p) / nrm);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rmds::detail
