#include "asl/symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace asl {

namespace {

Eigen::Vector3d mg_core(const WaveVector& k, const MgParams& p) {
  if (k.c[2] == 0) return Eigen::Vector3d::Zero();
  const double k1 = k.c[0], k2 = k.c[1], k3 = k.c[2];
  const double K2 = k1 * k1 + k2 * k2 + k3 * k3;
  const double om = p.Omega, r = p.beta2_over_eta;
  const double den = 4.0 * om * om * k3 * k3 * K2 + r * r * k2 * k2 * k2 * k2;
  Eigen::Vector3d v;
  v(0) = (2.0 * om * k2 * k3 * K2 - r * k1 * k2 * k2 * k3) / den;
  v(1) = (-2.0 * om * k1 * k3 * K2 - r * k2 * k2 * k2 * k3) / den;
  v(2) = (r * k2 * k2 * (k1 * k1 + k2 * k2)) / den;
  return v;
}

Eigen::Vector3d ipm_core(const WaveVector& k) {
  if (k.is_zero()) return Eigen::Vector3d::Zero();
  const double k1 = k.c[0], k2 = k.c[1];
  const double K2 = k1 * k1 + k2 * k2;
  return {-k1 * k2 / K2, k1 * k1 / K2, 0.0};
}

double fractional_weight(const WaveVector& k, double alpha) {
  if (alpha == 0.0) return 1.0;
  return std::pow(double(k.squared_norm()), 0.5 * alpha);
}

}  // namespace

MultiplierSymbol mg_symbol(const MgParams& params, double alpha) {
  if (!(params.Omega > 0.0) || !(params.beta2_over_eta > 0.0))
    throw std::invalid_argument("mg_symbol: Omega and beta2/eta must be positive");
  if (!(alpha >= -1.0 && alpha <= 1.0))
    throw std::invalid_argument("mg_symbol: alpha outside [-1,1]");
  MultiplierSymbol s;
  s.name = "mg";
  s.d = 3;
  s.alpha = alpha;
  s.r0 = alpha + 1.0;
  s.even = true;
  s.params = params;
  s.eval = [params, alpha](const WaveVector& k) {
    if (k.c[2] == 0) return Eigen::Vector3d::Zero().eval();
    return (fractional_weight(k, alpha) * mg_core(k, params)).eval();
  };
  return s;
}

MultiplierSymbol ipm_symbol(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0))
    throw std::invalid_argument("ipm_symbol: alpha outside [0,2)");
  MultiplierSymbol s;
  s.name = "ipm";
  s.d = 2;
  s.alpha = alpha;
  s.r0 = alpha;
  s.even = true;
  s.eval = [alpha](const WaveVector& k) {
    if (k.is_zero()) return Eigen::Vector3d::Zero().eval();
    return (fractional_weight(k, alpha) * ipm_core(k)).eval();
  };
  return s;
}

MultiplierSymbol compose_fractional(const MultiplierSymbol& base, double alpha) {
  MultiplierSymbol s = base;
  s.alpha = base.alpha + alpha;
  s.r0 = base.r0 + alpha;
  auto inner = base.eval;
  s.eval = [inner, alpha](const WaveVector& k) {
    if (k.is_zero()) return Eigen::Vector3d::Zero().eval();
    return (fractional_weight(k, alpha) * inner(k)).eval();
  };
  return s;
}

RationalVec mg_symbol_rational(const WaveVector& k, long long Omega,
                               long long ratio) {
  RationalVec v;
  if (k.c[2] == 0) return v;
  using I = __int128;
  const I k1 = k.c[0], k2 = k.c[1], k3 = k.c[2];
  const I K2 = k1 * k1 + k2 * k2 + k3 * k3;
  const I den = 4 * I(Omega) * Omega * k3 * k3 * K2 + I(ratio) * ratio * k2 * k2 * k2 * k2;
  const I n1 = 2 * I(Omega) * k2 * k3 * K2 - I(ratio) * k1 * k2 * k2 * k3;
  const I n2 = -2 * I(Omega) * k1 * k3 * K2 - I(ratio) * k2 * k2 * k2 * k3;
  const I n3 = I(ratio) * k2 * k2 * (k1 * k1 + k2 * k2);
  v.num = {(long long)n1, (long long)n2, (long long)n3};
  v.den = (long long)den;
  return v;
}

RationalVec ipm_symbol_rational(const WaveVector& k) {
  RationalVec v;
  if (k.is_zero()) return v;
  const long long k1 = k.c[0], k2 = k.c[1];
  v.num = {-k1 * k2, k1 * k1, 0};
  v.den = k1 * k1 + k2 * k2;
  return v;
}

long long rational_divergence(const WaveVector& k, const RationalVec& v) {
  __int128 s = 0;
  for (int i = 0; i < 3; ++i) s += __int128(k.c[i]) * v.num[i];
  return (long long)s;
}

SingularOrderReport singular_order_report(const MultiplierSymbol& sym, int K) {
  if (K < 1) throw std::invalid_argument("singular_order_report: K >= 1 required");
  SingularOrderReport rep;
  const int k3max = sym.d == 3 ? K : 0;
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2)
      for (int k3 = -k3max; k3 <= k3max; ++k3) {
        WaveVector k = sym.d == 3 ? WaveVector(k1, k2, k3) : WaveVector(k1, k2);
        const double kn = k.norm();
        if (kn < 1.0 || kn > double(K)) continue;
        const double tn = sym(k).norm();
        if (!std::isfinite(tn)) {
          rep.finite = false;
          rep.offending = k;
          continue;
        }
        const double ratio = tn / std::pow(kn, sym.r0);
        if (ratio > rep.sup_ratio) {
          rep.sup_ratio = ratio;
          rep.argmax = k;
        }
      }
  return rep;
}

MultiplierSymbol make_symbol(const std::string& id, const MgParams& params,
                             double alpha) {
  if (id == "mg") return mg_symbol(params, alpha);
  if (id == "ipm") return ipm_symbol(alpha);
  throw std::invalid_argument("unknown symbol id: " + id);
}

}  // namespace asl
