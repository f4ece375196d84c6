#pragma once

#include <cstdint>
#include <vector>

#include "asl/eigensolver.hpp"
#include "asl/norms.hpp"
#include "asl/radius.hpp"
#include "asl/simulator.hpp"

namespace asl {

struct GrowthRow {
  double t = 0;
  double ratio = 0;      // |theta - sin(a x_d)|_L2 / epsilon
  double hq = 0;         // H^q norm of the deviation / epsilon
  double predicted = 0;  // e^(sigma t)
  bool linear_regime = true;
};

struct GrowthSeries {
  double epsilon = 0;
  std::vector<GrowthRow> rows;
};

struct GrowthResult {
  double sigma = 0;
  double q = 0;  // Sobolev exponent used for the Lipschitz diagnostic
  std::vector<GrowthSeries> series;
};

/// Full nonlinear runs from sin(a x_d) + epsilon phi with phi L2-normalized
/// over t in [0, 2/sigma]; tracks the perturbation against e^(sigma t), with
/// each row flagged by the linear-regime bound epsilon e^(sigma t) <= ratio_cap.
GrowthResult growth_experiment(const MultiplierSymbol& sym, int a,
                               const std::array<int, 2>& b,
                               const std::vector<double>& epsilons,
                               const GevreyParams& gp, int K, double kappa = 0,
                               double gamma = 0.5, double ratio_cap = 0.1,
                               int samples = 64);

struct LinearGrowthResult {
  double sigma = 0;           // from the eigensolver
  double sigma_measured = 0;  // log-slope of |Theta|_L2 over the run
  std::vector<std::array<double, 2>> rows;  // (t, l2)
};

/// Integrates dTheta/dt = L Theta (optionally with dissipation) from the
/// eigenfunction, over t in [0, horizon_over_sigma / sigma].
LinearGrowthResult linearized_growth(const MultiplierSymbol& sym, int a,
                                     const std::array<int, 2>& b,
                                     const GevreyParams& gp, int K,
                                     double kappa = 0, double gamma = 0.5,
                                     double horizon_over_sigma = 2.0,
                                     int samples = 64);

struct RadiusRow {
  double t = 0;
  double tau = 0;
  double gevrey = 0;
  double l2 = 0;
};

struct RadiusResult {
  double C = 0;   // calibrated schedule constant
  double K0 = 0;  // Gevrey norm of the data at tau0
  double t_star = 0;
  bool monotone = false;
  double max_rel_increase = 0;
  std::vector<RadiusRow> rows;
};

/// Order-<=1 well-posed regime diagnostic: evolve analytic data under ipm(0)
/// without dissipation and evaluate the Gevrey norm on the shrinking radius
/// tau(t) = tau0 - 2 C K0 t up to t_star / 2. C starts at 1 and doubles until
/// the norm is non-increasing within `tolerance`; the accepted C is reported
/// as the measured constant.
RadiusResult wellposed_radius_experiment(int K, double tau0, double decay,
                                         double amplitude, std::uint64_t seed,
                                         double tolerance = 0.01,
                                         int samples = 32);

}  // namespace asl
