#include "asl/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace asl {

int fast_grid_size(int n) {
  for (int m = n;; ++m) {
    int q = m;
    for (int f : {2, 3, 5})
      while (q % f == 0) q /= f;
    if (q == 1) return m;
  }
}

int grid_for(int K, double dealias, int extra) {
  if (!(dealias > 0.0 && dealias <= 1.0))
    throw std::invalid_argument("grid_for: dealias fraction in (0,1]");
  int n = 2 * K + 2;
  n = std::max(n, int(std::ceil(2.0 * K / dealias)) + 1);
  n = std::max(n, 2 * (K + extra) + 2);
  return fast_grid_size(n);
}

FourierTransform::FourierTransform(int d, int N) : d_(d), N_(N) {
  if (d != 2 && d != 3)
    throw std::invalid_argument("FourierTransform: d in {2,3}");
  if (N < 4) throw std::invalid_argument("FourierTransform: N >= 4");
  size_ = d == 2 ? Eigen::Index(N) * N : Eigen::Index(N) * N * N;
  buf_in_.resize(size_);
  buf_out_.resize(size_);
  auto* in = reinterpret_cast<fftw_complex*>(buf_in_.data());
  auto* out = reinterpret_cast<fftw_complex*>(buf_out_.data());
  int dims[3] = {N, N, N};
  fwd_ = fftw_plan_dft(d, dims, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft(d, dims, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() {
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
}

void FourierTransform::to_physical(const SpectralField& f,
                                   Eigen::VectorXd& out) const {
  if (2 * f.K() + 2 > N_)
    throw std::invalid_argument("to_physical: grid too small for K");
  buf_in_.setZero();
  f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    if (f.data()(i) == 0.0) return;
    Eigen::Index idx = 0;
    for (int a = d_ - 1; a >= 0; --a)
      idx = idx * N_ + ((k.c[a] % N_) + N_) % N_;
    buf_in_(idx) = f.data()(i);
  });
  fftw_execute(bwd_);
  out.resize(size_);
  out = buf_out_.real();
}

SpectralField FourierTransform::to_spectral(const Eigen::VectorXd& samples,
                                            int K, MeanPolicy policy) const {
  if (samples.size() != size_)
    throw std::invalid_argument("to_spectral: sample count mismatch");
  if (2 * K + 2 > N_)
    throw std::invalid_argument("to_spectral: grid too small for K");
  buf_in_ = samples.cast<std::complex<double>>();
  fftw_execute(fwd_);
  const double scale = 1.0 / double(size_);
  SpectralField f(d_, K);
  f.for_each_mode([&](const WaveVector& k, Eigen::Index i) {
    Eigen::Index idx = 0;
    for (int a = d_ - 1; a >= 0; --a)
      idx = idx * N_ + ((k.c[a] % N_) + N_) % N_;
    f.data()(i) = buf_out_(idx) * scale;
  });
  if (f.mean_coefficient() != 0.0) {
    if (policy == MeanPolicy::Reject &&
        f.mean_coefficient() > 1e-13 * (1.0 + samples.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("to_spectral: samples have nonzero mean");
    f.project_mean_free();
  }
  return f;
}

}  // namespace asl
