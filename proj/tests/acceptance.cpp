// One pass/fail line per acceptance criterion; nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "asl/conditions.hpp"
#include "asl/eigensolver.hpp"
#include "asl/experiments.hpp"
#include "asl/norms.hpp"
#include "asl/simulator.hpp"
#include "asl/symbols.hpp"

using namespace asl;

namespace {

int failures = 0;

struct Criterion {
  std::string label;
  bool ok = true;
  std::string detail;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit Criterion(std::string l) : label(std::move(l)) {}
  void require(bool cond, const std::string& what) {
    if (!cond && detail.empty()) detail = what;
    ok = ok && cond;
  }
  void finish(double budget_s = 0.0) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (budget_s > 0.0)
      require(secs < budget_s, "runtime budget exceeded");
    std::printf("%-38s %s  (%.1fs)%s%s\n", label.c_str(),
                ok ? "PASS" : "FAIL", secs, detail.empty() ? "" : "  -- ",
                detail.c_str());
    if (!ok) ++failures;
  }
};

ConditionSweep preset_sweep(bool mg, double alpha, int j_max, int n_max) {
  ConditionSweep sw;
  sw.a = 1;
  sw.sequence_name = mg ? "mg-jsq-j" : "sipm-j";
  sw.sequence = mg ? mg_default_sequence() : sipm_default_sequence();
  sw.betas = mg ? Betas{3.0, alpha - 2.0, alpha + 1.0}
                : Betas{2.0, alpha - 2.0, alpha};
  sw.j_max = j_max;
  sw.n_max = n_max;
  return sw;
}

void criterion_1() {
  Criterion c("1. exact symbol identities");
  const int B = 64;
  for (int k1 = -B; k1 <= B && c.ok; ++k1)
    for (int k2 = -B; k2 <= B && c.ok; ++k2) {
      const WaveVector k2d(k1, k2);
      const auto vi = ipm_symbol_rational(k2d);
      c.require(rational_divergence(k2d, vi) == 0, "ipm divergence");
      const auto vin = ipm_symbol_rational(-k2d);
      c.require(vi.num == vin.num && vi.den == vin.den, "ipm parity");
      for (int k3 = -B; k3 <= B && c.ok; ++k3) {
        const WaveVector k(k1, k2, k3);
        const auto vm = mg_symbol_rational(k, 1, 1);
        c.require(rational_divergence(k, vm) == 0, "mg divergence");
        const auto vmn = mg_symbol_rational(-k, 1, 1);
        c.require(vm.num == vmn.num && vm.den == vmn.den, "mg parity");
        if (k3 == 0)
          c.require(vm.num == std::array<long long, 3>{0, 0, 0},
                    "mg zero plane");
      }
    }
  c.require(ipm_symbol_rational(WaveVector(0, 0)).num ==
                std::array<long long, 3>{0, 0, 0},
            "ipm zero point");
  c.finish(10.0);
}

void criterion_2() {
  Criterion c("2. condition presets (C1)-(C6)");
  for (double alpha : {0.0, 0.5, 1.0}) {
    const auto sym = mg_symbol({1.0, 1.0}, alpha);
    const auto rep = verify_conditions(sym, preset_sweep(true, alpha, 20, 200));
    c.require(rep.all_hold(), "mg alpha=" + std::to_string(alpha));
    c.require(rep.Ctilde1_stable && rep.Ctilde2_stable,
              "mg constants unstable at alpha=" + std::to_string(alpha));
  }
  for (double alpha : {1.0, 1.5}) {
    const auto sym = ipm_symbol(alpha);
    const auto rep =
        verify_conditions(sym, preset_sweep(false, alpha, 50, 400));
    c.require(rep.all_hold(), "sipm alpha=" + std::to_string(alpha));
    c.require(rep.Ctilde1_stable && rep.Ctilde2_stable,
              "sipm constants unstable at alpha=" + std::to_string(alpha));
  }
  c.finish(30.0);
}

void check_pair(Criterion& c, const RecursionData& rec, const std::string& who) {
  const EigenPair pair = solve_sigma(rec);
  c.require(pair.sigma > pair.sigma_lo && pair.sigma < pair.sigma_hi,
            who + ": bracket violated");
  c.require(pair.max_residual <= 1e-10, who + ": residual too large");
  const double oracle = tridiagonal_oracle(rec, 200);
  c.require(std::abs(pair.sigma - oracle) / oracle <= 1e-8,
            who + ": oracle disagrees");
}

void criterion_3() {
  Criterion c("3. eigenvalue bracket + oracle");
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  {
    const auto rec = build_recursion(mg, 1, {1, 1}, 512);
    c.require(std::abs(rec.alpha_p(1) - 13.0) < 1e-12 &&
                  std::abs(rec.alpha_p(2) - 97.0) < 1e-12,
              "alpha_1, alpha_2 closed forms");
    const EigenPair pair = solve_sigma(rec);
    c.require(pair.sigma > 1.0 / std::sqrt(1261.0) &&
                  pair.sigma < 1.0 / std::sqrt(1092.0),
              "sigma outside (1/sqrt(1261), 1/sqrt(1092))");
  }
  const auto seq_mg = mg_default_sequence();
  for (int j = 1; j <= 10; ++j) {
    const auto b = seq_mg(j);
    const double bn = std::hypot(double(b[0]), double(b[1]));
    check_pair(c, build_recursion(mg, 1, b, default_depth(bn)),
               "mg j=" + std::to_string(j));
  }
  const auto sipm = ipm_symbol(1.0);
  const auto seq_s = sipm_default_sequence();
  for (int j = 1; j <= 20; ++j) {
    const auto b = seq_s(j);
    check_pair(c, build_recursion(sipm, 1, b, default_depth(b[0])),
               "sipm j=" + std::to_string(j));
  }
  c.finish(60.0);
}

void criterion_4() {
  Criterion c("4. growth-law slope and lower bound");
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const auto cond = verify_conditions(mg, preset_sweep(true, 0.0, 20, 200));
  c.require(cond.all_hold(), "conditions failed");
  const auto rows = sigma_growth_sweep(mg, 1, mg_default_sequence(), 20,
                                       {1.0, 0.1, 4.0}, &cond);
  const double slope = sweep_loglog_slope(rows);
  c.require(slope >= 0.95, "slope " + std::to_string(slope) + " < 0.95");
  for (const auto& r : rows) {
    c.require(r.lower_bound > 0.0 && r.sigma > r.lower_bound,
              "lower bound fails at j=" + std::to_string(r.j));
    c.require(r.ok, "row flagged at j=" + std::to_string(r.j));
  }
  c.finish();
}

void criterion_5() {
  Criterion c("5. eigenfunction/operator consistency");
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const int K = 64;
  LinearizedOperator L(mg, 1, K);
  for (const std::array<int, 2> b : {std::array<int, 2>{1, 1},
                                     std::array<int, 2>{4, 2}}) {
    const double bn = std::hypot(double(b[0]), double(b[1]));
    const auto rec = build_recursion(mg, 1, b, default_depth(bn));
    EigenPair pair = solve_sigma(rec);
    const SpectralField phi =
        synthesize_eigenfunction(pair, rec, {1.0, 0.1, 4.0});
    const SpectralField Phi = phi.restricted(K);
    const SpectralField LPhi = L.apply(Phi);
    const double resid =
        (LPhi.data() - pair.sigma * Phi.data()).norm() / Phi.data().norm();
    c.require(resid <= 1e-6, "residual " + std::to_string(resid) + " at b=(" +
                                 std::to_string(b[0]) + "," +
                                 std::to_string(b[1]) + ")");
  }
  c.finish();
}

void criterion_6() {
  Criterion c("6. linearized growth rate");
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  for (const std::array<int, 2> b : {std::array<int, 2>{1, 1},
                                     std::array<int, 2>{4, 2}}) {
    const auto res = linearized_growth(mg, 1, b, {1.0, 0.1, 4.0}, 16);
    c.require(std::abs(res.sigma_measured / res.sigma - 1.0) <= 0.02,
              "rate off by " +
                  std::to_string(res.sigma_measured / res.sigma - 1.0) +
                  " at b1=" + std::to_string(b[0]));
  }
  c.finish();
}

void criterion_7() {
  Criterion c("7. nonlinear linear-regime tracking");
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  std::vector<double> amp_at_1;
  // K per case: for b=(1,1) the lattice must exclude transverse blocks
  // (3,3) and up, whose much faster secondary growth is nonlinearly seeded
  // at O(eps^3) and overtakes the tracked mode within the 2/sigma window
  const std::array<int, 2> bs[] = {{1, 1}, {4, 2}};
  const int Ks[] = {2, 10};
  for (int i = 0; i < 2; ++i) {
    const auto& b = bs[i];
    const auto res =
        growth_experiment(mg, 1, b, {1e-4}, {1.0, 0.1, 4.0}, Ks[i]);
    const auto& rows = res.series[0].rows;
    double worst = 0.0;
    for (const auto& r : rows)
      if (r.linear_regime)
        worst = std::max(worst, std::abs(r.ratio / r.predicted - 1.0));
    c.require(worst <= 0.10, "tracking error " + std::to_string(worst) +
                                 " at b1=" + std::to_string(b[0]));
    // measured amplification at the sample nearest t = 1
    double best_gap = 1e300, amp = 0.0;
    for (const auto& r : rows) {
      const double gap = std::abs(r.t - 1.0);
      if (gap < best_gap) {
        best_gap = gap;
        amp = r.ratio * std::exp(res.sigma * (1.0 - r.t));
      }
    }
    amp_at_1.push_back(amp);
  }
  c.require(amp_at_1[1] > amp_at_1[0],
            "amplification at t=1 not increasing in |b|");
  c.finish();
}

void criterion_8() {
  Criterion c("8. conservation suite");
  {
    SimConfig cfg;
    cfg.sym = ipm_symbol(0.0);
    cfg.K = 8;
    cfg.dt = 1e-2;
    NonlinearSimulator sim(cfg);
    SpectralField theta = sine_state(2, 8, 1);
    const Eigen::VectorXcd init = theta.data();
    for (int s = 0; s < 10000; ++s) sim.step(theta, cfg.dt);
    c.require((theta.data() - init).cwiseAbs().maxCoeff() <= 1e-12,
              "steady-state drift");
  }
  {
    SimConfig cfg;
    cfg.sym = ipm_symbol(0.0);
    cfg.K = 32;
    cfg.dt = 1e-3;
    NonlinearSimulator sim(cfg);
    SpectralField theta = random_analytic_field(2, 32, 0.4, 0.05, 2);
    const double e0 = l2_norm(theta);
    for (int s = 0; s < 1000; ++s) sim.step(theta, cfg.dt);
    c.require(std::abs(l2_norm(theta) - e0) / e0 <= 1e-8, "L2 drift");
    c.require(theta.mean_coefficient() == 0.0, "mean drift");
    c.require(theta.max_conjugate_asymmetry() <= 1e-13, "conjugate symmetry");
  }
  c.finish();
}

void criterion_9() {
  Criterion c("9. well-posed regime diagnostic");
  const auto res = wellposed_radius_experiment(32, 0.5, 1.0, 0.01, 1);
  c.require(res.monotone, "Gevrey norm increased by " +
                              std::to_string(res.max_rel_increase) +
                              " at C=" + std::to_string(res.C));
  c.finish();
}

void criterion_10() {
  Criterion c("10. fractional-dissipation persistence");
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const auto res =
      linearized_growth(mg, 1, {4, 2}, {1.0, 0.1, 4.0}, 16, 0.01, 0.25);
  c.require(res.sigma_measured >= 0.8 * res.sigma,
            "rate " + std::to_string(res.sigma_measured) + " < 0.8 sigma = " +
                std::to_string(0.8 * res.sigma));
  c.finish();
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
