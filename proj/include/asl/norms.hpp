#pragma once

#include "asl/field.hpp"

namespace asl {

struct GevreyParams {
  double s = 1.0;    // Gevrey index, >= 1
  double tau = 1.0;  // analyticity radius, > 0
  double r = 4.0;    // Sobolev weight, > 3
  void validate() const;
};

struct NormValue {
  double value = 0.0;
  bool overflow = false;  // true weight exceeded double range; value is +inf
};

/// sqrt( sum_{k != 0} |k|^2r e^(2 tau |k|^(1/s)) |theta^(k)|^2 ) over the
/// truncated lattice. Evaluated in log space per term once the Gevrey weight
/// exceeds e^500, so overflow yields a flag rather than garbage.
NormValue gevrey_norm(const SpectralField& f, const GevreyParams& p);

/// ( sum_k (1 + |k|^2)^q |theta^(k)|^2 )^(1/2).
double sobolev_norm(const SpectralField& f, double q);

double l2_norm(const SpectralField& f);

}  // namespace asl
