#include "asl/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace asl {

namespace {

// advance by `span` in accuracy-limited chunks of at most `dt_max`
void advance(const NonlinearSimulator& sim, SpectralField& theta, double span,
             double dt_max) {
  const int n = std::max(1, int(std::ceil(span / dt_max)));
  const double h = span / n;
  for (int i = 0; i < n; ++i) sim.step(theta, h);
}

}  // namespace

GrowthResult growth_experiment(const MultiplierSymbol& sym, int a,
                               const std::array<int, 2>& b,
                               const std::vector<double>& epsilons,
                               const GevreyParams& gp, int K, double kappa,
                               double gamma, double ratio_cap, int samples) {
  double bn2 = double(b[0]) * b[0];
  if (sym.d == 3) bn2 += double(b[1]) * b[1];
  RecursionData rec = build_recursion(sym, a, b, default_depth(std::sqrt(bn2)));
  EigenPair pair = solve_sigma(rec);
  SpectralField phi = synthesize_eigenfunction(pair, rec, gp);

  SpectralField phiK = phi.restricted(K);
  const double pk_l2 = l2_norm(phiK);
  if (!(pk_l2 > 0.0))
    throw std::runtime_error("growth_experiment: eigenfunction lost by truncation");
  phiK.data() /= pk_l2;
  const SpectralField base = sine_state(sym.d, K, a);

  GrowthResult res;
  res.sigma = pair.sigma;
  res.q = sym.r0 + sym.d / 4.0 + 0.25;

  // accuracy-limited step from the linearization's operator-norm bound; the
  // simulator's own CFL guard only sees the O(epsilon) velocity
  LinearizedOperator lin(sym, a, K, kappa, gamma);
  const double dt_max = lin.cfl_dt(0.2);

  for (double eps : epsilons) {
    if (!(eps > 0.0))
      throw std::invalid_argument("growth_experiment: epsilon > 0");
    // default amplitudes keep the whole window inside the linear regime; the
    // per-row flag handles larger epsilon
    const double t_end = 2.0 / pair.sigma;
    SimConfig cfg;
    cfg.sym = sym;
    cfg.K = K;
    cfg.dt = dt_max;
    cfg.t_end = t_end;
    cfg.kappa = kappa;
    cfg.gamma = gamma;
    NonlinearSimulator sim(cfg);

    SpectralField theta = base;
    theta.data() += eps * phiK.data();

    GrowthSeries series;
    series.epsilon = eps;
    SpectralField diff(sym.d, K);
    for (int i = 0; i <= samples; ++i) {
      const double t = t_end * i / samples;
      if (i > 0) advance(sim, theta, t_end / samples, dt_max);
      diff.data() = theta.data() - base.data();
      GrowthRow row;
      row.t = t;
      row.ratio = l2_norm(diff) / eps;
      row.hq = sobolev_norm(diff, res.q) / eps;
      row.predicted = std::exp(pair.sigma * t);
      row.linear_regime = eps * row.predicted <= ratio_cap;
      series.rows.push_back(row);
    }
    res.series.push_back(std::move(series));
  }
  return res;
}

LinearGrowthResult linearized_growth(const MultiplierSymbol& sym, int a,
                                     const std::array<int, 2>& b,
                                     const GevreyParams& gp, int K,
                                     double kappa, double gamma,
                                     double horizon_over_sigma, int samples) {
  double bn2 = double(b[0]) * b[0];
  if (sym.d == 3) bn2 += double(b[1]) * b[1];
  RecursionData rec = build_recursion(sym, a, b, default_depth(std::sqrt(bn2)));
  EigenPair pair = solve_sigma(rec);
  SpectralField phi = synthesize_eigenfunction(pair, rec, gp);
  SpectralField Theta = phi.restricted(K);

  LinearizedOperator lin(sym, a, K, kappa, gamma);
  const double dt_max = lin.cfl_dt(0.5);
  const double t_end = horizon_over_sigma / pair.sigma;

  // the transverse wavevector block is an exact invariant subspace of the
  // linearized operator; projecting after each step removes FFT roundoff that
  // would otherwise seed faster-growing blocks over long horizons
  auto project_block = [&](SpectralField& f) {
    f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
      bool in = std::abs(k.c[0]) == b[0];
      if (f.d() == 3) in = in && std::abs(k.c[1]) == b[1];
      if (!in) f.data()(i) = 0.0;
    });
  };

  LinearGrowthResult res;
  res.sigma = pair.sigma;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_end * i / samples;
    if (i > 0) {
      const double span = t_end / samples;
      const int n = std::max(1, int(std::ceil(span / dt_max)));
      for (int s = 0; s < n; ++s) {
        lin.step(Theta, span / n);
        project_block(Theta);
      }
    }
    const double l2 = l2_norm(Theta);
    res.rows.push_back({t, l2});
    const double y = std::log(l2);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
  }
  const int n = samples + 1;
  res.sigma_measured = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

RadiusResult wellposed_radius_experiment(int K, double tau0, double decay,
                                         double amplitude, std::uint64_t seed,
                                         double tolerance, int samples) {
  const MultiplierSymbol sym = ipm_symbol(0.0);
  const SpectralField theta0 =
      random_analytic_field(2, K, decay, amplitude, seed);
  const GevreyParams gp0{1.0, tau0, 4.0};
  const double K0 = gevrey_norm(theta0, gp0).value;
  if (!(K0 > 0.0 && std::isfinite(K0)))
    throw std::runtime_error("wellposed_radius_experiment: bad initial norm");

  RadiusResult res;
  for (double C = 1.0; C <= 65536.0; C *= 2.0) {
    const RadiusSchedule sch = radius_schedule(tau0, C, K0);
    const double horizon = sch.t_star() / 2.0;

    SimConfig cfg;
    cfg.sym = sym;
    cfg.K = K;
    cfg.dt = 1e-2;
    cfg.t_end = horizon;
    NonlinearSimulator sim(cfg);

    res = RadiusResult{};
    res.C = C;
    res.K0 = K0;
    res.t_star = sch.t_star();

    SpectralField theta = theta0;
    double running_min = std::numeric_limits<double>::infinity();
    double base_norm = 0;
    for (int i = 0; i <= samples; ++i) {
      const double t = horizon * i / samples;
      if (i > 0) advance(sim, theta, horizon / samples, cfg.dt);
      const double tau = sch.tau(t);
      const double g = gevrey_norm(theta, {1.0, tau, 4.0}).value;
      res.rows.push_back({t, tau, g, l2_norm(theta)});
      if (i == 0) base_norm = g;
      if (std::isfinite(g) && g > running_min)
        res.max_rel_increase =
            std::max(res.max_rel_increase, (g - running_min) / base_norm);
      if (!std::isfinite(g)) res.max_rel_increase = 1.0;
      running_min = std::min(running_min, g);
    }
    res.monotone = res.max_rel_increase <= tolerance;
    if (res.monotone) return res;
  }
  return res;
}

}  // namespace asl
