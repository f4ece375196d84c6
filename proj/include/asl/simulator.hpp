#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "asl/field.hpp"
#include "asl/radius.hpp"
#include "asl/symbols.hpp"
#include "asl/transform.hpp"

namespace asl {

struct SimConfig {
  MultiplierSymbol sym;
  int K = 32;
  double dt = 1e-3;
  double t_end = 1.0;
  double kappa = 0.0;   // dissipation strength, 0 recovers pure transport
  double gamma = 0.5;   // fractional Laplacian order, (-Delta)^gamma
  double dealias = 2.0 / 3.0;
  std::optional<SpectralField> source;  // fixed mean-free forcing
  std::optional<RadiusSchedule> schedule;

  void validate() const;
};

/// u^_i(k) = T^_i(k) theta^(k). Real output for real input because the symbol
/// is real and even; divergence-free exactly because k . T^(k) = 0.
std::vector<SpectralField> velocity(const MultiplierSymbol& sym,
                                    const SpectralField& theta);

/// Pseudo-spectral integrator for dtheta/dt = -u.grad theta + S - kappa
/// (-Delta)^gamma theta. The grid satisfies N > 3K, so quadratic products are
/// alias-free on the retained modes; the dealias fraction only sizes the grid.
class NonlinearSimulator {
 public:
  explicit NonlinearSimulator(SimConfig cfg);

  const SimConfig& config() const { return cfg_; }
  int grid() const { return ft_.N(); }

  SpectralField rhs(const SpectralField& theta) const;
  double max_speed(const SpectralField& theta) const;

  /// Advance by exactly dt with RK4, splitting into substeps until the CFL
  /// guard dt_sub * max|u| * K <= 0.5 holds. Returns substeps taken. Throws
  /// on non-finite coefficients.
  int step(SpectralField& theta, double dt) const;

 private:
  SpectralField advective(const SpectralField& theta) const;

  SimConfig cfg_;
  FourierTransform ft_;
};

/// The linearization about sin(a x_d): L Theta = -(T^_d Theta^)^v a cos(a x_d)
/// truncated to K and projected mean-free, minus optional dissipation.
class LinearizedOperator {
 public:
  LinearizedOperator(const MultiplierSymbol& sym, int a, int K,
                     double kappa = 0.0, double gamma = 0.5);

  int K() const { return K_; }
  SpectralField apply(const SpectralField& Theta) const;

  /// Step size with target / (operator norm bound) where the bound is
  /// a max|T^_d| + kappa (d K^2)^gamma.
  double cfl_dt(double target = 0.5) const;

  /// One RK4 step. Throws on non-finite coefficients.
  void step(SpectralField& Theta, double dt) const;

 private:
  MultiplierSymbol sym_;
  int a_;
  int K_;
  double kappa_, gamma_;
  double norm_bound_;
  FourierTransform ft_;
  Eigen::VectorXd cos_profile_;  // a cos(a x_d) on the grid
};

/// Spectral field of sin(a x_d).
SpectralField sine_state(int d, int K, int a);

}  // namespace asl
