#pragma once

#include <Eigen/Core>

#include <memory>

namespace tunnel {

/// In-place complex-to-complex FFT of a fixed length, backed by FFTW.
///
/// Both directions are unnormalized: inverse(forward(v)) == n * v.
/// Plan creation is serialized internally, so instances may be constructed
/// from several threads; a single instance must not be shared between threads.
class Fft {
 public:
  explicit Fft(Eigen::Index n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Eigen::Index size() const { return n_; }

  void forward(Eigen::Ref<Eigen::VectorXcd> v) const;
  void inverse(Eigen::Ref<Eigen::VectorXcd> v) const;

 private:
  struct Plans;
  Eigen::Index n_ = 0;
  std::unique_ptr<Plans> plans_;
};

}  // namespace tunnel
