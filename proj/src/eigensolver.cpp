#include "asl/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asl {

double RecursionData::sigma_lo() const {
  return 1.0 / std::sqrt(alpha(0) * alpha(1));
}

double RecursionData::sigma_hi() const {
  const double disc = alpha(0) * alpha(1) - alpha(0) * alpha(0);
  if (!(disc > 0.0))
    throw std::runtime_error("sigma_hi: alpha_2 <= alpha_1, bracket undefined");
  return 1.0 / std::sqrt(disc);
}

RecursionData build_recursion(const MultiplierSymbol& sym, int a,
                              const std::array<int, 2>& b, int P) {
  if (a < 1) throw std::invalid_argument("build_recursion: a >= 1 required");
  if (P < 128) throw std::invalid_argument("build_recursion: P >= 128 required");
  for (int i = 0; i < sym.d - 1; ++i)
    if (b[i] < 1)
      throw std::invalid_argument("build_recursion: b components >= 1 required");

  RecursionData rec;
  rec.a = a;
  rec.b = b;
  rec.d = sym.d;
  rec.P = P;
  rec.alpha.resize(P);
  for (int p = 1; p <= P; ++p) {
    const double t = sym.last(stacked(b, p * a, sym.d));
    if (!(t > 0.0))
      throw std::runtime_error("build_recursion: T^_d(b, pa) not positive");
    rec.alpha(p - 1) = (2.0 / a) / t;
  }
  for (int p = 1; p < P; ++p)
    if (!(rec.alpha(p) > rec.alpha(p - 1)))
      throw std::runtime_error("build_recursion: alpha_p not increasing");
  return rec;
}

int default_depth(double b_norm) {
  return std::max(512, 120 * int(std::ceil(b_norm)));
}

double g_tail(double sigma_alpha) {
  if (!(sigma_alpha > 2.0))
    throw std::invalid_argument("g_tail: sigma * alpha <= 2");
  return 2.0 / (sigma_alpha + std::sqrt(sigma_alpha * sigma_alpha - 4.0));
}

namespace {

// Backward recurrence F_q = 1 / (sigma alpha_q - F_{q+1}) from depth Q down
// to p. seeded == true starts from the constant-coefficient tail fixed point.
double cf_eval(const RecursionData& rec, int p, double sigma, int Q,
               bool seeded) {
  double F = 0.0;
  if (seeded) {
    const double sa = sigma * rec.alpha_p(Q);
    if (sa > 2.0) F = g_tail(sa);
  }
  for (int q = Q; q >= p; --q) F = 1.0 / (sigma * rec.alpha_p(q) - F);
  return F;
}

// Tail-converged value: both seeds at full depth must agree.
double cf_converged(const RecursionData& rec, int p, double sigma) {
  const double f0 = cf_eval(rec, p, sigma, rec.P, false);
  const double f1 = cf_eval(rec, p, sigma, rec.P, true);
  if (!std::isfinite(f0) || !std::isfinite(f1))
    return std::numeric_limits<double>::quiet_NaN();
  if (std::abs(f0 - f1) > 1e-11 * std::max(1.0, std::abs(f1)))
    throw std::runtime_error(
        "continued fraction not converged at depth P; increase P");
  return f1;
}

}  // namespace

double continued_fraction_F(const RecursionData& rec, int p, double sigma) {
  if (p < 2 || p > rec.P)
    throw std::invalid_argument("continued_fraction_F: 2 <= p <= P");
  if (!(sigma * rec.alpha_p(2) > 2.0))
    throw std::invalid_argument("continued_fraction_F: sigma alpha_2 <= 2");
  return cf_converged(rec, p, sigma);
}

namespace {

double root_in(const RecursionData& rec, double sa, double sb, double Ha,
               double Hb, double tol, const std::function<double(double)>& H) {
  (void)rec;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (sa + sb);
    if (sb - sa <= tol * m) return m;
    const double Hm = H(m);
    if (!std::isfinite(Hm)) return std::numeric_limits<double>::quiet_NaN();
    if ((Hm > 0) == (Ha > 0)) {
      sa = m;
      Ha = Hm;
    } else {
      sb = m;
      Hb = Hm;
    }
  }
  return 0.5 * (sa + sb);
}

}  // namespace

EigenPair solve_sigma(const RecursionData& rec, double tol) {
  const double lo = rec.sigma_lo();
  const double hi = rec.sigma_hi();
  const double a1 = rec.alpha_p(1);

  // Single-seed evaluation during the scan; convergence is certified at the
  // accepted root only.
  auto H = [&](double s) {
    return cf_eval(rec, 2, s, rec.P, true) - s * a1;
  };

  // The admissible region sigma alpha_2 > 2 need not cover the bracket, and H
  // has poles below the leading root. Scan downward from sigma_hi and take the
  // first sign-change interval whose bisection limit is a genuine zero; refine
  // the grid until the root is stable.
  const double eps = 1e-12 * (hi - lo);
  double root = std::numeric_limits<double>::quiet_NaN();
  bool stable = false;
  for (int nscan = 256; nscan <= 65536; nscan *= 2) {
    double cand = std::numeric_limits<double>::quiet_NaN();
    double sb = hi - eps;
    double Hb = H(sb);
    for (int i = nscan - 1; i >= 0; --i) {
      const double sa = std::max(lo + eps, lo + (hi - lo) * i / nscan);
      const double Ha = H(sa);
      if (std::isfinite(Ha) && std::isfinite(Hb) && (Ha > 0) != (Hb > 0)) {
        const double r = root_in(rec, sa, sb, Ha, Hb, tol, H);
        if (std::isfinite(r) && std::abs(H(r)) <= 1e-6 * a1) {
          cand = r;
          break;
        }
      }
      sb = sa;
      Hb = Ha;
    }
    if (!std::isfinite(cand))
      throw std::runtime_error("solve_sigma: no sign change in bracket");
    if (std::isfinite(root) && std::abs(cand - root) <= 1e-10 * root) {
      root = cand;
      stable = true;
      break;
    }
    root = cand;
  }
  if (!stable)
    throw std::runtime_error("solve_sigma: root not stable under scan refinement");

  EigenPair pair;
  pair.sigma = root;
  pair.sigma_lo = lo;
  pair.sigma_hi = hi;
  pair.depth = rec.P;

  // certify tail convergence at the root
  cf_converged(rec, 2, root);

  // one backward sweep gives every F_p; eta_p = -F_p
  pair.eta.resize(rec.P - 1);
  {
    double F = 0.0;
    const double sa = root * rec.alpha_p(rec.P);
    if (sa > 2.0) F = g_tail(sa);
    for (int q = rec.P; q >= 2; --q) {
      F = 1.0 / (root * rec.alpha_p(q) - F);
      pair.eta(q - 2) = -F;
    }
  }

  pair.c.resize(rec.P);
  pair.c[0] = {std::log(a1), 1};
  for (int p = 2; p <= rec.P; ++p) {
    const double eta = pair.eta(p - 2);
    LogSigned prev = pair.c[p - 2];
    LogSigned cur;
    cur.log_abs = prev.log_abs +
                  std::log(rec.alpha_p(p) / rec.alpha_p(p - 1)) +
                  std::log(std::abs(eta));
    cur.sign = prev.sign * (eta > 0 ? 1 : eta < 0 ? -1 : 0);
    pair.c[p - 1] = cur;
  }

  pair.max_residual = max_recursion_residual(rec, pair);
  return pair;
}

double tridiagonal_oracle(const RecursionData& rec, int N) {
  if (N < 2 || N > rec.P)
    throw std::invalid_argument("tridiagonal_oracle: 2 <= N <= P");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (int p = 1; p < N; ++p) {
    const double e = 1.0 / std::sqrt(rec.alpha_p(p) * rec.alpha_p(p + 1));
    A(p - 1, p) = e;
    A(p, p - 1) = e;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("tridiagonal_oracle: eigensolver failed");
  return es.eigenvalues()(N - 1);
}

double max_recursion_residual(const RecursionData& rec, const EigenPair& pair) {
  // three-term identity divided through by c_p; the neighbor ratios
  // c_{p+1}/c_p = (alpha_{p+1}/alpha_p) eta_{p+1} and
  // c_{p-1}/c_p = alpha_{p-1}/(alpha_p eta_p) are formed directly so the
  // factorially decaying c never enter (no underflow, no log cancellation)
  double worst = 0.0;
  {
    const double t1 = pair.eta(0) / rec.alpha_p(1);
    worst = std::abs(pair.sigma + t1) / std::abs(t1);
  }
  for (int p = 2; p <= rec.P - 1; ++p) {
    const double t1 = pair.eta(p - 1) / rec.alpha_p(p);
    const double t2 = 1.0 / (rec.alpha_p(p) * pair.eta(p - 2));
    const double res =
        std::abs(pair.sigma + t1 + t2) / std::max(std::abs(t1), std::abs(t2));
    worst = std::max(worst, res);
  }
  return worst;
}

namespace {

// log of the squared Gevrey contribution of recursion level p, summing the
// 2^d lattice modes that carry |c_p| / 2^d each
double level_term_log(const RecursionData& rec, const LogSigned& c, int p,
                      const GevreyParams& gp) {
  const WaveVector k = stacked(rec.b, p * rec.a, rec.d);
  const double kn = k.norm();
  return 2.0 * gp.r * std::log(kn) + 2.0 * gp.tau * std::pow(kn, 1.0 / gp.s) +
         2.0 * c.log_abs - rec.d * std::log(2.0);
}

double logsumexp(const std::vector<double>& v) {
  double mx = v.front();
  for (double x : v) mx = std::max(mx, x);
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

struct LevelSums {
  double log_scale;  // log of the multiplier making the Gevrey norm 1
  double l2;         // L2 norm after rescaling
  int p_keep;        // levels contributing above 1e-18 relative in Gevrey
};

LevelSums level_sums(const EigenPair& pair, const RecursionData& rec,
                     const GevreyParams& gp) {
  std::vector<double> terms(rec.P);
  for (int p = 1; p <= rec.P; ++p)
    terms[p - 1] = level_term_log(rec, pair.c[p - 1], p, gp);
  const double lse = logsumexp(terms);

  LevelSums out;
  out.log_scale = -0.5 * lse;

  double mx = *std::max_element(terms.begin(), terms.end());
  out.p_keep = 1;
  for (int p = 1; p <= rec.P; ++p)
    if (terms[p - 1] > mx - 83.0) out.p_keep = p;

  std::vector<double> l2t(rec.P);
  for (int p = 1; p <= rec.P; ++p)
    l2t[p - 1] = 2.0 * (pair.c[p - 1].log_abs + out.log_scale) -
                 rec.d * std::log(2.0);
  out.l2 = std::exp(0.5 * logsumexp(l2t));
  return out;
}

}  // namespace

SpectralField synthesize_eigenfunction(EigenPair& pair,
                                       const RecursionData& rec,
                                       const GevreyParams& gp) {
  gp.validate();
  const double max_log =
      std::max_element(pair.c.begin(), pair.c.end(),
                       [](const LogSigned& a, const LogSigned& b) {
                         return a.log_abs < b.log_abs;
                       })
          ->log_abs;
  if (!(pair.c.back().log_abs < max_log + std::log(1e-16)))
    throw std::runtime_error(
        "synthesize_eigenfunction: coefficients not decayed at depth P");

  const LevelSums sums = level_sums(pair, rec, gp);
  int K = rec.a * sums.p_keep;
  for (int i = 0; i < rec.d - 1; ++i) K = std::max(K, rec.b[i]);
  if (K > 4096)
    throw std::runtime_error("synthesize_eigenfunction: truncation too large");

  SpectralField f(rec.d, K);
  for (int p = 1; p <= sums.p_keep; ++p) {
    const LogSigned& c = pair.c[p - 1];
    const double mag =
        std::exp(c.log_abs + sums.log_scale - rec.d * std::log(2.0));
    for (int mask = 0; mask < (1 << rec.d); ++mask) {
      int prod = 1;
      WaveVector k = stacked(rec.b, p * rec.a, rec.d);
      for (int i = 0; i < rec.d; ++i)
        if (mask & (1 << i)) {
          k.c[i] = -k.c[i];
          prod = -prod;
        }
      const double sgn = c.sign * prod;
      // product of sines: each factor contributes 1/(2i); (2i)^-2 = -1/4,
      // (2i)^-3 = i/8
      if (rec.d == 2)
        f.at(k) = std::complex<double>(-sgn * mag, 0.0);
      else
        f.at(k) = std::complex<double>(0.0, sgn * mag);
    }
  }

  pair.gevrey_s = gp.s;
  pair.gevrey_tau = gp.tau;
  pair.gevrey_norm_achieved = gevrey_norm(f, gp).value;
  pair.l2_norm = sums.l2;
  return f;
}

std::vector<SweepRow> sigma_growth_sweep(const MultiplierSymbol& sym, int a,
                                         const BSequence& seq, int j_max,
                                         const GevreyParams& gp,
                                         const ConditionReport* cond) {
  gp.validate();
  std::vector<SweepRow> rows;
  rows.reserve(j_max);
  for (int j = 1; j <= j_max; ++j) {
    const std::array<int, 2> b = seq(j);
    double bn2 = double(b[0]) * b[0];
    if (sym.d == 3) bn2 += double(b[1]) * b[1];
    const double b_norm = std::sqrt(bn2);

    RecursionData rec = build_recursion(sym, a, b, default_depth(b_norm));
    EigenPair pair = solve_sigma(rec);
    const LevelSums sums = level_sums(pair, rec, gp);

    SweepRow row;
    row.j = j;
    row.b_norm = b_norm;
    row.sigma = pair.sigma;
    row.sigma_lo = pair.sigma_lo;
    row.sigma_hi = pair.sigma_hi;
    row.l2_norm = sums.l2;
    row.gevrey_norm = 1.0;
    if (cond && cond->Ctilde2 > 0.0)
      row.lower_bound = 0.5 * a * std::sqrt(cond->Ctilde2) *
                        std::pow(b_norm, cond->betas.beta3);
    row.ok = pair.sigma > pair.sigma_lo && pair.sigma < pair.sigma_hi &&
             pair.sigma > row.lower_bound && pair.max_residual <= 1e-10;
    rows.push_back(row);
  }
  return rows;
}

double sweep_loglog_slope(const std::vector<SweepRow>& rows, double window) {
  double bmax = 0.0;
  for (const auto& r : rows) bmax = std::max(bmax, r.b_norm);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.b_norm < bmax / window) continue;
    const double x = std::log(r.b_norm), y = std::log(r.sigma);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("sweep_loglog_slope: need >= 2 rows");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fit_l2_constant(const std::vector<SweepRow>& rows, double exponent) {
  auto holds = [&](double C) {
    for (const auto& r : rows)
      if (!(r.l2_norm >= std::exp(-C * std::pow(r.b_norm, exponent)) / C))
        return false;
    return true;
  };
  double lo = 1.0, hi = 1.0;
  while (!holds(hi)) {
    hi *= 2.0;
    if (hi > 1e12)
      throw std::runtime_error("fit_l2_constant: no constant below 1e12");
  }
  if (holds(lo)) return lo;
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (lo + hi);
    (holds(m) ? hi : lo) = m;
  }
  return hi;
}

}  // namespace asl
