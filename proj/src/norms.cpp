#include "asl/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace asl {

void GevreyParams::validate() const {
  if (!(s >= 1.0)) throw std::invalid_argument("GevreyParams: s >= 1 required");
  if (!(tau > 0.0)) throw std::invalid_argument("GevreyParams: tau > 0 required");
  if (!(r > 3.0)) throw std::invalid_argument("GevreyParams: r > 3 required");
}

NormValue gevrey_norm(const SpectralField& f, const GevreyParams& p) {
  p.validate();
  if (f.mean_coefficient() != 0.0)
    throw std::invalid_argument("gevrey_norm: field not mean-free");

  // log of each squared term; summed by logsumexp for overflow safety
  std::vector<double> logs;
  logs.reserve(f.size());
  f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    if (k.is_zero()) return;
    const double a = std::abs(f.data()(i));
    if (a == 0.0) return;
    const double kn = k.norm();
    logs.push_back(2.0 * p.r * std::log(kn) +
                   2.0 * p.tau * std::pow(kn, 1.0 / p.s) + 2.0 * std::log(a));
  });
  if (logs.empty()) return {0.0, false};
  double mx = logs.front();
  for (double v : logs) mx = std::max(mx, v);
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - mx);
  const double half_log = 0.5 * (mx + std::log(acc));
  if (half_log > 700.0)
    return {std::numeric_limits<double>::infinity(), true};
  return {std::exp(half_log), false};
}

double sobolev_norm(const SpectralField& f, double q) {
  double acc = 0.0;
  f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    const double a2 = std::norm(f.data()(i));
    if (a2 == 0.0) return;
    acc += std::pow(1.0 + double(k.squared_norm()), q) * a2;
  });
  return std::sqrt(acc);
}

double l2_norm(const SpectralField& f) { return f.data().norm(); }

}  // namespace asl
