#ifndef CSS2D_ERROR_HPP
#define CSS2D_ERROR_HPP

#include <stdexcept>
#include <string>

namespace css2d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different grids.
class GridMismatch : public Error {
 public:
  GridMismatch() : Error("fields live on different grids") {}
};

/// A field picked up NaN or Inf.
class NonFiniteField : public Error {
 public:
  explicit NonFiniteField(const std::string& where)
      : Error("non-finite value detected in " + where) {}
};

/// The H^1 norm crossed the configured ceiling.
class BlowupError : public Error {
 public:
  BlowupError(double t, double h1, double ceiling)
      : Error("H^1 norm " + std::to_string(h1) + " exceeded ceiling " +
              std::to_string(ceiling) + " at t=" + std::to_string(t)),
        time(t), h1_norm(h1) {}
  double time;
  double h1_norm;
};

/// Invalid configuration or argument outside the documented domain.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace css2d

#endif  // CSS2D_ERROR_HPP
