#pragma once

#include <stdexcept>
#include <string>

namespace tunnel {

/// Base class of every error raised by the simulation library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two wavefunctions (or a wavefunction and an operator) live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid argument or configuration: bad grid, detector inside the absorber, ...
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The field is too strong: the barrier top lies below -I_p.
class OverBarrier : public Error {
 public:
  using Error::Error;
};

/// No field, hence no tunnelling barrier.
class NoBarrier : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf or a vanishing quantity that makes an observable undefined.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A peak sits on the edge of a sampled series; the recording window is too short.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// A classical electron fell back behind the barrier entry.
class Recaptured : public Error {
 public:
  using Error::Error;
};

}  // namespace tunnel
