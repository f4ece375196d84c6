#include "asl/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace asl {

void check_beta_constraints(const Betas& b, double r0) {
  std::ostringstream bad;
  if (!(b.beta3 > 0.0 && b.beta3 <= b.beta1))
    bad << "0 < beta3 <= beta1 violated; ";
  if (!(b.beta1 + b.beta2 <= r0 + 1e-12))
    bad << "beta1 + beta2 <= r0 violated; ";
  if (!(b.beta2 >= -2.0 && b.beta2 < 0.0)) bad << "-2 <= beta2 < 0 violated; ";
  if (!bad.str().empty())
    throw std::invalid_argument("beta constraint block: " + bad.str());
}

BSequence mg_default_sequence() {
  return [](int j) { return std::array<int, 2>{j * j, j}; };
}

BSequence sipm_default_sequence() {
  return [](int j) { return std::array<int, 2>{j, 0}; };
}

bool ConditionReport::all_hold() const {
  for (const auto& [id, v] : verdicts)
    if (!v.holds) return false;
  return verdicts.size() == 6;
}

std::string ConditionReport::summary() const {
  std::ostringstream os;
  os << "a=" << a << " sequence=" << sequence_name << " betas=(" << betas.beta1
     << "," << betas.beta2 << "," << betas.beta3 << ")";
  for (const auto& [id, v] : verdicts)
    os << " " << id << "=" << (v.holds ? "hold" : "FAIL");
  os << " Ctilde1=" << Ctilde1 << (Ctilde1_stable ? " (stable)" : " (UNSTABLE)")
     << " Ctilde2=" << Ctilde2 << (Ctilde2_stable ? " (stable)" : " (UNSTABLE)");
  return os.str();
}

namespace {

double bnorm(const std::array<int, 2>& b) {
  return std::sqrt(double(b[0]) * b[0] + double(b[1]) * b[1]);
}

/// Exact comparison T^_d(b,(n+1)a) < T^_d(b,na) when the symbol is rational
/// on the lattice (MG/IPM with integer parameters, alpha = 0); falls back to
/// floating point otherwise.
bool strictly_less_next(const MultiplierSymbol& sym, const WaveVector& kn,
                        const WaveVector& kn1) {
  const bool integral_params =
      sym.params.Omega == std::floor(sym.params.Omega) &&
      sym.params.beta2_over_eta == std::floor(sym.params.beta2_over_eta);
  if (sym.alpha == 0.0 && integral_params &&
      (sym.name == "mg" || sym.name == "ipm")) {
    RationalVec a = sym.name == "mg"
                        ? mg_symbol_rational(kn, (long long)sym.params.Omega,
                                             (long long)sym.params.beta2_over_eta)
                        : ipm_symbol_rational(kn);
    RationalVec b = sym.name == "mg"
                        ? mg_symbol_rational(kn1, (long long)sym.params.Omega,
                                             (long long)sym.params.beta2_over_eta)
                        : ipm_symbol_rational(kn1);
    const int i = sym.d - 1;
    return __int128(b.num[i]) * a.den < __int128(a.num[i]) * b.den;
  }
  return sym.last(kn1) < sym.last(kn);
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]), y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

ConditionReport verify_conditions(const MultiplierSymbol& sym,
                                  const ConditionSweep& sweep) {
  check_beta_constraints(sweep.betas, sym.r0);

  ConditionReport rep;
  rep.a = sweep.a;
  rep.sequence_name = sweep.sequence_name;
  rep.betas = sweep.betas;
  rep.j_max = sweep.j_max;
  rep.n_max = sweep.n_max;

  const int a = sweep.a;
  if (a < 1) throw std::invalid_argument("verify_conditions: a >= 1 required");
  if (sweep.j_max < 2 || sweep.n_max < 20)
    throw std::invalid_argument(
        "verify_conditions: j_max >= 2 and n_max >= 20 required");

  std::vector<std::array<int, 2>> bs(sweep.j_max);
  for (int j = 1; j <= sweep.j_max; ++j) bs[j - 1] = sweep.sequence(j);
  for (int j = 1; j < sweep.j_max; ++j)
    if (!(bnorm(bs[j]) > bnorm(bs[j - 1])))
      throw std::invalid_argument("b-sequence |b^(j)| not strictly increasing");

  // C1: T^(0', a) = 0, so sin(a x_d) is a steady state.
  {
    const WaveVector k = stacked({0, 0}, a, sym.d);
    const double v = sym(k).norm();
    rep.verdicts["C1"] = {v == 0.0, "|T^(0',a)| = " + std::to_string(v)};
    rep.rows.push_back({"C1", 0, 0.0, v, 0.0, v == 0.0});
  }

  // Precompute T^_d(b^(j), n a) for all j, n.
  std::vector<std::vector<double>> td(sweep.j_max);
  for (int j = 1; j <= sweep.j_max; ++j) {
    td[j - 1].resize(sweep.n_max);
    for (int n = 1; n <= sweep.n_max; ++n)
      td[j - 1][n - 1] = sym.last(stacked(bs[j - 1], n * a, sym.d));
  }

  // C2: positivity of T^_d on the sweep and measured evenness.
  {
    bool pos = true;
    std::string witness = "T^_d > 0 on all samples";
    for (int j = 1; j <= sweep.j_max && pos; ++j) {
      double mn = td[j - 1][0];
      for (int n = 1; n <= sweep.n_max; ++n) {
        mn = std::min(mn, td[j - 1][n - 1]);
        if (!(td[j - 1][n - 1] > 0.0)) {
          pos = false;
          witness = "T^_d <= 0 at j=" + std::to_string(j) +
                    " n=" + std::to_string(n);
          break;
        }
      }
      rep.rows.push_back({"C2", j, bnorm(bs[j - 1]), mn, 0.0, mn > 0.0});
    }
    bool even = true;
    for (int j = 1; j <= sweep.j_max && even; ++j) {
      const WaveVector k = stacked(bs[j - 1], a, sym.d);
      even = (sym(k) - sym(-k)).norm() == 0.0;
      if (!even) witness = "evenness failed at j=" + std::to_string(j);
    }
    rep.verdicts["C2"] = {pos && even, witness};
  }

  // C3: finite evidence that T^_d(b, n a) -> 0: the last ten samples decrease
  // strictly, T^_d(n_max) < T^_d(1), and the log-log slope over the top half
  // of the n-range is negative.
  {
    bool holds = true;
    std::string witness = "tail decreasing with negative log-log slope";
    for (int j = 1; j <= sweep.j_max; ++j) {
      const auto& row = td[j - 1];
      bool ok = row[sweep.n_max - 1] < row[0];
      for (int n = sweep.n_max - 10; n < sweep.n_max && ok; ++n)
        ok = row[n] < row[n - 1];
      std::vector<double> ns, vs;
      for (int n = sweep.n_max / 2; n <= sweep.n_max; ++n) {
        ns.push_back(double(n));
        vs.push_back(row[n - 1]);
      }
      const double slope = loglog_slope(ns, vs);
      ok = ok && slope < -0.05;
      rep.rows.push_back({"C3", j, bnorm(bs[j - 1]), slope, -0.05, ok});
      if (!ok && holds) {
        holds = false;
        witness = "tail not decaying at j=" + std::to_string(j) +
                  " (slope=" + std::to_string(slope) + ")";
      }
    }
    rep.verdicts["C3"] = {holds, witness};
  }

  // C4: strict decrease in n over the whole sweep, exact where possible.
  {
    bool holds = true;
    std::string witness = "strictly decreasing in n";
    for (int j = 1; j <= sweep.j_max; ++j) {
      bool ok = true;
      for (int n = 1; n < sweep.n_max && ok; ++n)
        ok = strictly_less_next(sym, stacked(bs[j - 1], n * a, sym.d),
                                stacked(bs[j - 1], (n + 1) * a, sym.d));
      rep.rows.push_back({"C4", j, bnorm(bs[j - 1]), ok ? 1.0 : 0.0, 1.0, ok});
      if (!ok && holds) {
        holds = false;
        witness = "monotonicity failed at j=" + std::to_string(j);
      }
    }
    rep.verdicts["C4"] = {holds, witness};
  }

  // C5: exhibit Ctilde1 as the measured max of T^_d / (|b|^b1 n^b2); holds
  // with equality at the witness. Stability: the running max must settle over
  // the top half of the j range.
  {
    double run = 0.0, run_half = 0.0;
    int argj = 0, argn = 0;
    for (int j = 1; j <= sweep.j_max; ++j) {
      const double bn = bnorm(bs[j - 1]);
      double mx = 0.0;
      for (int n = 1; n <= sweep.n_max; ++n) {
        const double ratio = td[j - 1][n - 1] /
                             (std::pow(bn, sweep.betas.beta1) *
                              std::pow(double(n), sweep.betas.beta2));
        if (ratio > mx) mx = ratio;
        if (ratio > run) {
          run = ratio;
          argj = j;
          argn = n;
        }
      }
      if (j == sweep.j_max / 2) run_half = run;
      rep.rows.push_back({"C5", j, bn, mx, run, mx <= run});
    }
    rep.Ctilde1 = run;
    rep.Ctilde1_stable = run_half > 0.0 && (run - run_half) / run < 0.10;
    const bool ok = std::isfinite(run) && run > 0.0;
    rep.verdicts["C5"] = {ok, "Ctilde1 attained at j=" + std::to_string(argj) +
                                  " n=" + std::to_string(argn)};
  }

  // C6: exhibit Ctilde2 as the measured min of
  // T^_d(b,a) T^_d(b,2a) / |b|^(2 b3).
  {
    double run = std::numeric_limits<double>::infinity(), run_half = 0.0;
    int argj = 0;
    for (int j = 1; j <= sweep.j_max; ++j) {
      const double bn = bnorm(bs[j - 1]);
      const double ratio =
          td[j - 1][0] * td[j - 1][1] / std::pow(bn, 2.0 * sweep.betas.beta3);
      if (ratio < run) {
        run = ratio;
        argj = j;
      }
      if (j == sweep.j_max / 2) run_half = run;
      rep.rows.push_back({"C6", j, bn, ratio, run, ratio >= run});
    }
    rep.Ctilde2 = run;
    rep.Ctilde2_stable =
        std::isfinite(run_half) && (run_half - run) / run < 0.10;
    const bool ok = std::isfinite(run) && run > 0.0;
    rep.verdicts["C6"] = {ok, "Ctilde2 attained at j=" + std::to_string(argj)};
  }

  return rep;
}

void write_condition_csv(const ConditionReport& rep, std::ostream& os) {
  os.precision(17);
  os << "condition,j,b_norm,value,reference,holds\n";
  for (const auto& r : rep.rows)
    os << r.condition << "," << r.j << "," << r.b_norm << "," << r.value << ","
       << r.reference << "," << (r.holds ? 1 : 0) << "\n";
  os << "# " << rep.summary() << "\n";
}

}  // namespace asl
