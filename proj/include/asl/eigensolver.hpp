#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "asl/conditions.hpp"
#include "asl/field.hpp"
#include "asl/norms.hpp"
#include "asl/symbols.hpp"

namespace asl {

/// Recursion coefficients alpha_p = (2/a) / T^_d(b, p a), p = 1..P, for the
/// linearization about sin(a x_d).
struct RecursionData {
  int a = 1;
  std::array<int, 2> b{0, 0};
  int d = 3;
  int P = 0;
  Eigen::VectorXd alpha;  // alpha(p-1) holds alpha_p

  double alpha_p(int p) const { return alpha(p - 1); }
  double sigma_lo() const;  // 1 / sqrt(alpha1 alpha2)
  double sigma_hi() const;  // 1 / sqrt(alpha1 alpha2 - alpha1^2)
};

RecursionData build_recursion(const MultiplierSymbol& sym, int a,
                              const std::array<int, 2>& b, int P);

/// Depth heuristic: enough tail for the continued fraction to converge at the
/// bracket scale, and always >= 128 so residuals up to p = 100 are available.
int default_depth(double b_norm);

/// Tail fixed point of x = 1/(sigma alpha_p - x): 2/(sa + sqrt(sa^2 - 4)).
double g_tail(double sigma_alpha);

/// F_p(sigma) by backward recurrence with adaptive depth doubling; requires
/// the admissibility condition sigma * alpha_2 > 2 and p >= 2.
double continued_fraction_F(const RecursionData& rec, int p, double sigma);

/// Signed log-magnitude, for coefficient sequences with factorial-type decay.
struct LogSigned {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

struct EigenPair {
  double sigma = 0.0;
  double sigma_lo = 0.0, sigma_hi = 0.0;
  Eigen::VectorXd eta;        // eta(p-2) holds eta_p = -F_p(sigma), p >= 2
  std::vector<LogSigned> c;   // c[p-1] holds c_p; c_1 = alpha_1
  double max_residual = 0.0;  // relative recursion residual over p <= P-1
  int depth = 0;

  // normalization record, filled by synthesize_eigenfunction
  double gevrey_s = 0.0, gevrey_tau = 0.0;
  double gevrey_norm_achieved = 0.0;
  double l2_norm = 0.0;
};

/// Root of F_2(sigma) = sigma alpha_1 inside the certified bracket
/// (sigma_lo, sigma_hi), found by a downward scan for the largest sign change
/// of H followed by bisection; refined until |H| <= tol * alpha_1 * sigma.
EigenPair solve_sigma(const RecursionData& rec, double tol = 1e-12);

/// Largest eigenvalue of the N x N tridiagonal restatement sigma c = A c,
/// via the symmetrized matrix with off-diagonals 1/sqrt(alpha_p alpha_{p+1}).
/// Independent verification of the continued-fraction root.
double tridiagonal_oracle(const RecursionData& rec, int N);

/// Relative recursion residual of (sigma, c) recomputed from scratch.
double max_recursion_residual(const RecursionData& rec, const EigenPair& pair);

/// Spectral field of phi = prod sin(b_i x_i) sum_p c_p sin(p a x_d), rescaled
/// in log space so that the Gevrey norm is 1. Records the L2 norm in `pair`.
SpectralField synthesize_eigenfunction(EigenPair& pair, const RecursionData& rec,
                                       const GevreyParams& p);

struct SweepRow {
  int j = 0;
  double b_norm = 0;
  double sigma = 0, sigma_lo = 0, sigma_hi = 0;
  double lower_bound = 0;  // (a/2) sqrt(Ctilde2) |b|^beta3
  double l2_norm = 0, gevrey_norm = 0;
  bool ok = false;
};

std::vector<SweepRow> sigma_growth_sweep(const MultiplierSymbol& sym, int a,
                                         const BSequence& seq, int j_max,
                                         const GevreyParams& gp,
                                         const ConditionReport* cond);

/// Least-squares slope of log(sigma) vs log|b| over rows with |b| within a
/// factor `window` of the largest.
double sweep_loglog_slope(const std::vector<SweepRow>& rows,
                          double window = 10.0);

/// Smallest C >= 1 with l2_norm >= C^-1 exp(-C |b|^exponent) on every row.
/// The constant is exhibited empirically, not asserted a priori.
double fit_l2_constant(const std::vector<SweepRow>& rows, double exponent);

}  // namespace asl
