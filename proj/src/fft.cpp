#include "tunnel/fft.hpp"

#include "tunnel/errors.hpp"

#include <fftw3.h>

#include <mutex>
#include <string>

namespace tunnel {

namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Fft::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Fft::Fft(Eigen::Index n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 1) throw ConfigError("Fft: length must be positive, got " + std::to_string(n));
  // Scratch buffer only used for planning; FFTW_ESTIMATE leaves it untouched.
  Eigen::VectorXcd scratch(n);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->fwd = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                 FFTW_FORWARD, flags);
  plans_->bwd = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                 FFTW_BACKWARD, flags);
  if (!plans_->fwd || !plans_->bwd) throw Error("Fft: FFTW planning failed");
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward(Eigen::Ref<Eigen::VectorXcd> v) const {
  if (v.size() != n_) throw GridMismatch("Fft::forward: length mismatch");
  fftw_execute_dft(plans_->fwd, as_fftw(v.data()), as_fftw(v.data()));
}

void Fft::inverse(Eigen::Ref<Eigen::VectorXcd> v) const {
  if (v.size() != n_) throw GridMismatch("Fft::inverse: length mismatch");
  fftw_execute_dft(plans_->bwd, as_fftw(v.data()), as_fftw(v.data()));
}

}  // namespace tunnel
