#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <ostream>

#include "asl/wave_vector.hpp"

namespace asl {

enum class MeanPolicy { Reject, Project };

/// Truncated, mean-free array of Fourier coefficients on the lattice
/// |k|_inf <= K. Fields representing real scalars carry conjugate symmetry
/// theta^(-k) = conj(theta^(k)); this is measured, not enforced.
class SpectralField {
 public:
  SpectralField(int d, int K);

  static SpectralField from_coeffs(int d, int K, Eigen::VectorXcd coeffs,
                                   MeanPolicy policy);

  int d() const { return d_; }
  int K() const { return K_; }
  Eigen::Index size() const { return coeffs_.size(); }

  Eigen::Index index(const WaveVector& k) const;
  WaveVector wavevector(Eigen::Index i) const;
  bool contains(const WaveVector& k) const { return k.inf_norm() <= K_; }

  std::complex<double>& at(const WaveVector& k) { return coeffs_(index(k)); }
  const std::complex<double>& at(const WaveVector& k) const {
    return coeffs_(index(k));
  }

  Eigen::VectorXcd& data() { return coeffs_; }
  const Eigen::VectorXcd& data() const { return coeffs_; }

  void project_mean_free();
  double mean_coefficient() const;

  /// max over k of |theta^(k) - conj(theta^(-k))|.
  double max_conjugate_asymmetry() const;

  /// Copy into a (possibly larger) truncation radius.
  SpectralField embedded(int K_new) const;

  /// Copy of the modes with |k|_inf <= K_new; discards the rest.
  SpectralField restricted(int K_new) const;

  template <class F>
  void for_each_mode(F&& f) const {
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) f(wavevector(i), i);
  }

 private:
  int d_;
  int K_;
  Eigen::VectorXcd coeffs_;  // dense (2K+1)^d block, index = sum (k_i+K) n^i
};

/// Real random field with coefficients of size ~ amplitude * e^(-decay |k|),
/// mean-free and conjugate-symmetric. Deterministic in the seed.
SpectralField random_analytic_field(int d, int K, double decay,
                                    double amplitude, std::uint64_t seed);

/// CSV rows (k1, k2[, k3], re, im), nonzero coefficients only, fixed order.
void write_field_csv(const SpectralField& f, std::ostream& os);

}  // namespace asl
