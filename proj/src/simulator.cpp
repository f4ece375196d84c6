#include "asl/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace asl {

void SimConfig::validate() const {
  if (!sym.eval) throw std::invalid_argument("SimConfig: symbol not set");
  if (K < 2) throw std::invalid_argument("SimConfig: K >= 2 required");
  if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt > 0 required");
  if (!(t_end >= 0.0)) throw std::invalid_argument("SimConfig: t_end >= 0");
  if (!(kappa >= 0.0)) throw std::invalid_argument("SimConfig: kappa >= 0");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("SimConfig: gamma in (0,1)");
  if (!(dealias > 0.0 && dealias <= 1.0))
    throw std::invalid_argument("SimConfig: dealias in (0,1]");
  if (source) {
    if (source->d() != sym.d)
      throw std::invalid_argument("SimConfig: source dimension mismatch");
    if (source->mean_coefficient() != 0.0)
      throw std::invalid_argument("SimConfig: source not mean-free");
  }
}

std::vector<SpectralField> velocity(const MultiplierSymbol& sym,
                                    const SpectralField& theta) {
  if (theta.d() != sym.d)
    throw std::invalid_argument("velocity: dimension mismatch");
  std::vector<SpectralField> u(sym.d, SpectralField(theta.d(), theta.K()));
  theta.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    const auto v = theta.data()(i);
    if (v == 0.0) return;
    const Eigen::Vector3d t = sym(k);
    for (int c = 0; c < sym.d; ++c) u[c].data()(i) = t(c) * v;
  });
  return u;
}

NonlinearSimulator::NonlinearSimulator(SimConfig cfg)
    : cfg_(std::move(cfg)), ft_(cfg_.sym.d, grid_for(cfg_.K, cfg_.dealias)) {
  cfg_.validate();
  if (cfg_.source && cfg_.source->K() != cfg_.K)
    cfg_.source = cfg_.source->restricted(cfg_.K);
}

SpectralField NonlinearSimulator::advective(const SpectralField& theta) const {
  const auto u = velocity(cfg_.sym, theta);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(ft_.grid_points());
  Eigen::VectorXd pu, pg;
  SpectralField grad(theta.d(), theta.K());
  for (int c = 0; c < theta.d(); ++c) {
    ft_.to_physical(u[c], pu);
    theta.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
      grad.data()(i) = std::complex<double>(0.0, double(k.c[c])) *
                       theta.data()(i);
    });
    ft_.to_physical(grad, pg);
    acc.array() += pu.array() * pg.array();
  }
  return ft_.to_spectral(acc, theta.K(), MeanPolicy::Project);
}

SpectralField NonlinearSimulator::rhs(const SpectralField& theta) const {
  SpectralField out = advective(theta);
  out.data() = -out.data();
  if (cfg_.source) out.data() += cfg_.source->data();
  if (cfg_.kappa > 0.0) {
    theta.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
      out.data()(i) -= cfg_.kappa *
                       std::pow(double(k.squared_norm()), cfg_.gamma) *
                       theta.data()(i);
    });
  }
  out.project_mean_free();
  return out;
}

double NonlinearSimulator::max_speed(const SpectralField& theta) const {
  const auto u = velocity(cfg_.sym, theta);
  Eigen::VectorXd sum2 = Eigen::VectorXd::Zero(ft_.grid_points());
  Eigen::VectorXd p;
  for (const auto& ui : u) {
    ft_.to_physical(ui, p);
    sum2.array() += p.array().square();
  }
  return std::sqrt(sum2.maxCoeff());
}

int NonlinearSimulator::step(SpectralField& theta, double dt) const {
  const double v = max_speed(theta);
  int nsub = 1;
  while (dt / nsub * v * cfg_.K > 0.5) {
    nsub *= 2;
    if (nsub > (1 << 20))
      throw std::runtime_error("step: CFL guard cannot be met");
  }
  const double h = dt / nsub;
  auto shifted = [](const SpectralField& y, double a, const SpectralField& k) {
    SpectralField r = y;
    r.data() += a * k.data();
    return r;
  };
  for (int s = 0; s < nsub; ++s) {
    const SpectralField k1 = rhs(theta);
    const SpectralField k2 = rhs(shifted(theta, 0.5 * h, k1));
    const SpectralField k3 = rhs(shifted(theta, 0.5 * h, k2));
    const SpectralField k4 = rhs(shifted(theta, h, k3));
    theta.data() +=
        (h / 6.0) * (k1.data() + 2.0 * k2.data() + 2.0 * k3.data() + k4.data());
    if (!theta.data().allFinite())
      throw std::runtime_error("step: non-finite coefficients, run aborted");
  }
  return nsub;
}

LinearizedOperator::LinearizedOperator(const MultiplierSymbol& sym, int a,
                                       int K, double kappa, double gamma)
    : sym_(sym),
      a_(a),
      K_(K),
      kappa_(kappa),
      gamma_(gamma),
      ft_(sym.d, fast_grid_size(2 * (K + a) + 2)) {
  if (a < 1) throw std::invalid_argument("LinearizedOperator: a >= 1");
  if (K < a) throw std::invalid_argument("LinearizedOperator: K >= a");

  double m = 0.0;
  const int B = K + a;
  for (int k1 = -B; k1 <= B; ++k1)
    for (int k2 = -B; k2 <= B; ++k2) {
      if (sym.d == 2) {
        m = std::max(m, std::abs(sym.last(WaveVector(k1, k2))));
      } else {
        for (int k3 = -B; k3 <= B; ++k3)
          m = std::max(m, std::abs(sym.last(WaveVector(k1, k2, k3))));
      }
    }
  norm_bound_ = a * m + kappa * std::pow(double(sym.d) * K * K, gamma);

  const int N = ft_.N();
  const Eigen::Index stride =
      sym.d == 2 ? Eigen::Index(N) : Eigen::Index(N) * N;
  cos_profile_.resize(ft_.grid_points());
  for (Eigen::Index i = 0; i < cos_profile_.size(); ++i) {
    const Eigen::Index jd = i / stride;
    cos_profile_(i) = a * std::cos(a * 2.0 * M_PI * double(jd) / N);
  }
}

SpectralField LinearizedOperator::apply(const SpectralField& Theta) const {
  if (Theta.K() != K_ || Theta.d() != sym_.d)
    throw std::invalid_argument("LinearizedOperator: shape mismatch");
  SpectralField psi(sym_.d, K_);
  Theta.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    psi.data()(i) = sym_.last(k) * Theta.data()(i);
  });
  Eigen::VectorXd p;
  ft_.to_physical(psi, p);
  p = -p.cwiseProduct(cos_profile_);
  SpectralField out = ft_.to_spectral(p, K_, MeanPolicy::Project);
  if (kappa_ > 0.0) {
    Theta.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
      out.data()(i) -= kappa_ *
                       std::pow(double(k.squared_norm()), gamma_) *
                       Theta.data()(i);
    });
    out.project_mean_free();
  }
  return out;
}

double LinearizedOperator::cfl_dt(double target) const {
  return target / std::max(norm_bound_, 1e-12);
}

void LinearizedOperator::step(SpectralField& Theta, double dt) const {
  auto shifted = [](const SpectralField& y, double a, const SpectralField& k) {
    SpectralField r = y;
    r.data() += a * k.data();
    return r;
  };
  const SpectralField k1 = apply(Theta);
  const SpectralField k2 = apply(shifted(Theta, 0.5 * dt, k1));
  const SpectralField k3 = apply(shifted(Theta, 0.5 * dt, k2));
  const SpectralField k4 = apply(shifted(Theta, dt, k3));
  Theta.data() +=
      (dt / 6.0) * (k1.data() + 2.0 * k2.data() + 2.0 * k3.data() + k4.data());
  if (!Theta.data().allFinite())
    throw std::runtime_error("LinearizedOperator::step: non-finite state");
}

SpectralField sine_state(int d, int K, int a) {
  if (K < a) throw std::invalid_argument("sine_state: K >= a required");
  SpectralField f(d, K);
  const WaveVector plus = d == 2 ? WaveVector(0, a) : WaveVector(0, 0, a);
  f.at(plus) = std::complex<double>(0.0, -0.5);
  f.at(-plus) = std::complex<double>(0.0, 0.5);
  return f;
}

}  // namespace asl
