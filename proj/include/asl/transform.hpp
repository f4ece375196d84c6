#pragma once

#include <Eigen/Dense>
#include <fftw3.h>

#include "asl/field.hpp"

namespace asl {

/// Smallest 2^a 3^b 5^c >= n, for FFT-friendly grids.
int fast_grid_size(int n);

/// Grid size serving truncation K: at least 2K+2 (Nyquist margin), at least
/// 2K/dealias so the dealias cutoff covers K, and at least 2(K+extra)+2 when a
/// product shifts modes by `extra` in one direction.
int grid_for(int K, double dealias, int extra = 0);

/// FFT bridge between physical samples on the uniform N^d grid of [0,2pi)^d
/// and truncated spectral fields. Convention: theta(x) = sum theta^(k) e^(ikx),
/// theta^(k) = (2pi)^-d integral theta e^(-ikx).
class FourierTransform {
 public:
  FourierTransform(int d, int N);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  int d() const { return d_; }
  int N() const { return N_; }
  Eigen::Index grid_points() const { return size_; }

  /// Samples indexed x0-fastest: i = x0 + N x1 (+ N^2 x2), x_j = 2 pi j / N.
  void to_physical(const SpectralField& f, Eigen::VectorXd& out) const;
  SpectralField to_spectral(const Eigen::VectorXd& samples, int K,
                            MeanPolicy policy) const;

 private:
  int d_;
  int N_;
  Eigen::Index size_;
  mutable Eigen::VectorXcd buf_in_, buf_out_;
  fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

}  // namespace asl
