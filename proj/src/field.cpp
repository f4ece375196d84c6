#include "asl/field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace asl {

SpectralField::SpectralField(int d, int K) : d_(d), K_(K) {
  if (d != 2 && d != 3) throw std::invalid_argument("SpectralField: d in {2,3}");
  if (K < 1) throw std::invalid_argument("SpectralField: K >= 1");
  Eigen::Index n = 2 * K + 1;
  coeffs_ = Eigen::VectorXcd::Zero(d == 2 ? n * n : n * n * n);
}

SpectralField SpectralField::from_coeffs(int d, int K, Eigen::VectorXcd coeffs,
                                         MeanPolicy policy) {
  SpectralField f(d, K);
  if (coeffs.size() != f.size())
    throw std::invalid_argument("from_coeffs: size mismatch");
  f.coeffs_ = std::move(coeffs);
  if (std::abs(f.mean_coefficient()) != 0.0) {
    if (policy == MeanPolicy::Reject)
      throw std::invalid_argument("from_coeffs: field is not mean-free");
    f.project_mean_free();
  }
  return f;
}

Eigen::Index SpectralField::index(const WaveVector& k) const {
  const Eigen::Index n = 2 * K_ + 1;
  Eigen::Index i = 0;
  for (int a = d_ - 1; a >= 0; --a) i = i * n + (k.c[a] + K_);
  return i;
}

WaveVector SpectralField::wavevector(Eigen::Index i) const {
  const Eigen::Index n = 2 * K_ + 1;
  WaveVector k;
  k.d = d_;
  for (int a = 0; a < d_; ++a) {
    k.c[a] = int(i % n) - K_;
    i /= n;
  }
  return k;
}

void SpectralField::project_mean_free() {
  WaveVector zero;
  zero.d = d_;
  coeffs_(index(zero)) = 0.0;
}

double SpectralField::mean_coefficient() const {
  WaveVector zero;
  zero.d = d_;
  return std::abs(coeffs_(index(zero)));
}

double SpectralField::max_conjugate_asymmetry() const {
  double m = 0.0;
  for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    const auto v = coeffs_(i) - std::conj(coeffs_(index(-k)));
    m = std::max(m, std::abs(v));
  });
  return m;
}

SpectralField SpectralField::embedded(int K_new) const {
  if (K_new < K_) throw std::invalid_argument("embedded: K_new < K");
  SpectralField out(d_, K_new);
  for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    out.at(k) = coeffs_(i);
  });
  return out;
}

SpectralField SpectralField::restricted(int K_new) const {
  if (K_new > K_) return embedded(K_new);
  SpectralField out(d_, K_new);
  out.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    out.data()(i) = coeffs_(index(k));
  });
  return out;
}

SpectralField random_analytic_field(int d, int K, double decay,
                                    double amplitude, std::uint64_t seed) {
  SpectralField f(d, K);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> mag(0.5, 1.0);
  f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    if (k.is_zero()) return;
    // fill each conjugate pair once, from the lexicographically positive side
    for (int a = d - 1; a >= 0; --a) {
      if (k.c[a] > 0) break;
      if (k.c[a] < 0) return;
    }
    const double rho = amplitude * mag(rng) * std::exp(-decay * k.norm());
    const double phase = unif(rng);
    const std::complex<double> v = std::polar(rho, phase);
    f.data()(i) = v;
    f.at(-k) = std::conj(v);
  });
  return f;
}

void write_field_csv(const SpectralField& f, std::ostream& os) {
  os.precision(17);
  if (f.d() == 2)
    os << "k1,k2,re,im\n";
  else
    os << "k1,k2,k3,re,im\n";
  f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    const auto v = f.data()(i);
    if (v == 0.0) return;
    for (int a = 0; a < f.d(); ++a) os << k.c[a] << ',';
    os << v.real() << ',' << v.imag() << '\n';
  });
}

}  // namespace asl
