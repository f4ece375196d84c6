#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "asl/wave_vector.hpp"

namespace asl {

struct MgParams {
  double Omega = 1.0;
  double beta2_over_eta = 1.0;
};

/// A named Fourier multiplier symbol k -> T^(k) in R^d with declared singular
/// order r0 (|T^(k)| <= C |k|^r0) and parity metadata. Symbols are immutable
/// after construction and safe to share across threads.
struct MultiplierSymbol {
  std::string name;
  int d = 3;
  double r0 = 0.0;
  double alpha = 0.0;  // fractional exponent folded into eval
  bool even = true;
  MgParams params;  // meaningful for MG only

  std::function<Eigen::Vector3d(const WaveVector&)> eval;

  Eigen::Vector3d operator()(const WaveVector& k) const { return eval(k); }
  /// Last component T^_d(k), the one entering conditions (C2)-(C6).
  double last(const WaveVector& k) const { return eval(k)(d - 1); }
};

/// |k|^alpha * M^(k) for the magnetogeostrophic constitutive law, with the
/// self-consistency convention M^(k1,k2,0) = 0. Singular order alpha + 1.
MultiplierSymbol mg_symbol(const MgParams& params, double alpha);

/// |k|^alpha * I^(k) for the (singular) incompressible porous media law, with
/// I^(0,0) = 0. Singular order alpha.
MultiplierSymbol ipm_symbol(double alpha);

/// |k|^alpha * base(k); declared order base.r0 + alpha, parity and zero set
/// preserved.
MultiplierSymbol compose_fractional(const MultiplierSymbol& base, double alpha);

/// Exact evaluation as integer numerators over a common positive denominator.
/// Valid for integer MG parameters; used by the identity checks.
struct RationalVec {
  std::array<long long, 3> num{0, 0, 0};
  long long den = 1;
};
RationalVec mg_symbol_rational(const WaveVector& k, long long Omega,
                               long long beta2_over_eta);
RationalVec ipm_symbol_rational(const WaveVector& k);

/// Exact lattice divergence k . num(k); zero iff the symbol is divergence-free
/// at k.
long long rational_divergence(const WaveVector& k, const RationalVec& v);

struct SingularOrderReport {
  double sup_ratio = 0.0;
  WaveVector argmax;
  bool finite = true;
  WaveVector offending;  // set when !finite
};

/// sup over 1 <= |k| <= K of |T^(k)| / |k|^r0 and its maximizer.
SingularOrderReport singular_order_report(const MultiplierSymbol& sym, int K);

/// Preset lookup for the CLI: id in {"mg", "ipm"}.
MultiplierSymbol make_symbol(const std::string& id, const MgParams& params,
                             double alpha);

}  // namespace asl
