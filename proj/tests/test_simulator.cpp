#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "asl/eigensolver.hpp"
#include "asl/experiments.hpp"
#include "asl/norms.hpp"
#include "asl/simulator.hpp"

using namespace asl;

namespace {

SimConfig ipm_config(int K, double kappa = 0.0) {
  SimConfig cfg;
  cfg.sym = ipm_symbol(0.0);
  cfg.K = K;
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  cfg.kappa = kappa;
  cfg.gamma = 0.25;
  return cfg;
}

// product state sin(b.x') sin(p a x_d) as a spectral field
SpectralField product_sine(int d, int K, const std::array<int, 2>& b, int pa) {
  SpectralField f(d, K);
  const std::complex<double> i2(0.0, 0.5);  // 1/(2i) = -i/2
  for (int mask = 0; mask < (1 << d); ++mask) {
    WaveVector k = stacked(b, pa, d);
    int prod = 1;
    for (int c = 0; c < d; ++c)
      if (mask & (1 << c)) {
        k.c[c] = -k.c[c];
        prod = -prod;
      }
    std::complex<double> v = double(prod);
    for (int c = 0; c < d; ++c) v *= -i2;
    f.at(k) = v;
  }
  return f;
}

}  // namespace

TEST_CASE("velocity acts diagonally and is divergence-free") {
  const auto ipm = ipm_symbol(0.0);
  SpectralField theta(2, 8);
  const WaveVector k0(2, 1);
  theta.at(k0) = {0.3, 0.4};
  theta.at(-k0) = {0.3, -0.4};
  const auto u = velocity(ipm, theta);
  const Eigen::Vector3d t = ipm(k0);
  CHECK(std::abs(u[0].at(k0) - t(0) * theta.at(k0)) == 0.0);
  CHECK(std::abs(u[1].at(k0) - t(1) * theta.at(k0)) == 0.0);

  const SpectralField rnd = random_analytic_field(2, 8, 0.4, 1.0, 5);
  const auto ur = velocity(ipm, rnd);
  double div = 0.0;
  rnd.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    div += std::abs(double(k.c[0]) * ur[0].data()(i) +
                    double(k.c[1]) * ur[1].data()(i));
  });
  CHECK(div <= 1e-14);
}

TEST_CASE("steady state has zero velocity and zero rhs") {
  for (int d : {2, 3}) {
    SimConfig cfg;
    cfg.sym = d == 2 ? ipm_symbol(0.0) : mg_symbol({1.0, 1.0}, 0.0);
    cfg.K = 8;
    cfg.dt = 1e-2;
    const SpectralField s = sine_state(d, 8, 1);
    const auto u = velocity(cfg.sym, s);
    for (const auto& ui : u) CHECK(ui.data().cwiseAbs().maxCoeff() == 0.0);
    NonlinearSimulator sim(cfg);
    CHECK(sim.rhs(s).data().cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("dissipation is diagonal on a single mode pair") {
  SimConfig cfg = ipm_config(8, 0.01);
  NonlinearSimulator sim(cfg);
  SpectralField theta(2, 8);
  const WaveVector k0(3, 1);
  theta.at(k0) = {0.2, -0.1};
  theta.at(-k0) = {0.2, 0.1};
  // u.grad theta vanishes for one conjugate pair (u is parallel to the level
  // sets), so the rhs is the pure dissipation term
  const SpectralField r = sim.rhs(theta);
  const double w = 0.01 * std::pow(10.0, 0.25);
  CHECK(std::abs(r.at(k0) + w * theta.at(k0)) <= 1e-15);
  CHECK(std::abs(r.at(-k0) + w * theta.at(-k0)) <= 1e-15);
  theta.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    if (k == k0 || k == -k0) return;
    CHECK(std::abs(r.data()(i)) <= 1e-16);
  });
}

TEST_CASE("advective term is energy-neutral") {
  SimConfig cfg = ipm_config(12);
  NonlinearSimulator sim(cfg);
  const SpectralField theta = random_analytic_field(2, 12, 0.3, 1.0, 17);
  const SpectralField r = sim.rhs(theta);
  const double inner = (r.data().conjugate().cwiseProduct(theta.data()))
                           .real()
                           .sum();
  CHECK(std::abs(inner) <= 1e-12 * theta.data().squaredNorm());
}

TEST_CASE("steady state survives stepping") {
  SimConfig cfg = ipm_config(8);
  NonlinearSimulator sim(cfg);
  SpectralField theta = sine_state(2, 8, 1);
  const Eigen::VectorXcd init = theta.data();
  for (int s = 0; s < 200; ++s) sim.step(theta, 1e-2);
  CHECK((theta.data() - init).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("transport conserves the L2 norm and field invariants") {
  SimConfig cfg = ipm_config(16);
  NonlinearSimulator sim(cfg);
  SpectralField theta = random_analytic_field(2, 16, 0.4, 0.05, 23);
  const double e0 = l2_norm(theta);
  for (int s = 0; s < 50; ++s) sim.step(theta, 1e-2);
  CHECK(std::abs(l2_norm(theta) - e0) / e0 <= 1e-8);
  CHECK(theta.mean_coefficient() == 0.0);
  CHECK(theta.max_conjugate_asymmetry() <= 1e-13);
}

TEST_CASE("cfl guard splits oversized steps") {
  SimConfig cfg = ipm_config(16);
  NonlinearSimulator sim(cfg);
  SpectralField theta = random_analytic_field(2, 16, 0.2, 5.0, 31);
  CHECK(sim.max_speed(theta) > 0.0);
  const int nsub = sim.step(theta, 0.05);
  CHECK(nsub > 1);
}

TEST_CASE("linearized operator reproduces the recursion row p=1") {
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const int K = 12, a = 1;
  const std::array<int, 2> b{1, 1};
  const auto rec = build_recursion(mg, a, b, 512);
  LinearizedOperator L(mg, a, K);

  const SpectralField e1 = product_sine(3, K, b, a);
  const SpectralField e2 = product_sine(3, K, b, 2 * a);
  const SpectralField Le1 = L.apply(e1);
  // L e_1 = -(1/alpha_1) e_2 and nothing else
  const Eigen::VectorXcd gap =
      Le1.data() + (1.0 / rec.alpha_p(1)) * e2.data();
  CHECK(gap.cwiseAbs().maxCoeff() <= 1e-14);

  // interior row p=3 couples to p=2 and p=4
  const SpectralField e3 = product_sine(3, K, b, 3 * a);
  const SpectralField e4 = product_sine(3, K, b, 4 * a);
  const SpectralField Le3 = L.apply(e3);
  const Eigen::VectorXcd gap3 =
      Le3.data() + (1.0 / rec.alpha_p(3)) * (e2.data() + e4.data());
  CHECK(gap3.cwiseAbs().maxCoeff() <= 1e-14);

  CHECK(L.apply(SpectralField(3, K)).data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("linearized operator has the eigenfunction as eigenvector") {
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const auto rec = build_recursion(mg, 1, {1, 1}, 512);
  EigenPair pair = solve_sigma(rec);
  const SpectralField phi = synthesize_eigenfunction(pair, rec, {1.0, 0.1, 4.0});
  const int K = std::max(24, phi.K());
  const SpectralField Phi = phi.restricted(K);
  LinearizedOperator L(mg, 1, K);
  const SpectralField LPhi = L.apply(Phi);
  const double resid =
      (LPhi.data() - pair.sigma * Phi.data()).norm() / Phi.data().norm();
  CHECK(resid <= 1e-6);
}

TEST_CASE("linearized evolution grows at rate sigma") {
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const auto res = linearized_growth(mg, 1, {4, 2}, {1.0, 0.1, 4.0}, 16);
  CHECK(res.sigma == doctest::Approx(0.20935769789481706).epsilon(1e-9));
  CHECK(res.sigma_measured == doctest::Approx(res.sigma).epsilon(0.02));
}

TEST_CASE("nonlinear runs linearize as epsilon -> 0") {
  const auto mg = mg_symbol({1.0, 1.0}, 0.0);
  const int K = 10, a = 1;
  const std::array<int, 2> b{1, 1};
  const auto rec = build_recursion(mg, a, b, 512);
  EigenPair pair = solve_sigma(rec);
  const SpectralField phi = synthesize_eigenfunction(pair, rec, {1.0, 0.1, 4.0});
  SpectralField phiK = phi.restricted(K);
  phiK.data() /= l2_norm(phiK);
  const SpectralField base = sine_state(3, K, a);

  LinearizedOperator L(mg, a, K);
  const double T = 2.0;
  const double dt = std::min(L.cfl_dt(0.2), T / 32.0);
  const int steps = int(std::ceil(T / dt));

  SpectralField Theta = phiK;
  for (int s = 0; s < steps; ++s) L.step(Theta, T / steps);

  double prev_err = 0.0;
  int level = 0;
  for (double eps : {1e-2, 5e-3}) {
    SimConfig cfg;
    cfg.sym = mg;
    cfg.K = K;
    cfg.dt = dt;
    cfg.t_end = T;
    NonlinearSimulator sim(cfg);
    SpectralField theta = base;
    theta.data() += eps * phiK.data();
    for (int s = 0; s < steps; ++s) sim.step(theta, T / steps);
    const double err =
        ((theta.data() - base.data()) / eps - Theta.data()).norm();
    if (level == 0) {
      prev_err = err;
    } else {
      // halving epsilon should shrink the defect at observed order >= 0.9
      const double order = std::log(prev_err / err) / std::log(2.0);
      CHECK(order >= 0.9);
    }
    ++level;
  }
}

TEST_CASE("config validation") {
  SimConfig cfg = ipm_config(8);
  cfg.gamma = 1.5;
  CHECK_THROWS_AS(NonlinearSimulator{cfg}, std::invalid_argument);
  cfg = ipm_config(8);
  cfg.dt = 0.0;
  CHECK_THROWS_AS(NonlinearSimulator{cfg}, std::invalid_argument);
  cfg = ipm_config(8);
  cfg.source = SpectralField(3, 4);
  CHECK_THROWS_AS(NonlinearSimulator{cfg}, std::invalid_argument);
}
