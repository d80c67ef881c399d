#pragma once

#include <stdexcept>
#include <string>

namespace rotinv {

enum class ErrorKind {
  NonUnitary,
  WindowTooSmall,
  InsufficientData,
  MultiKraus,
  NotHermitian,
  SingularSystem,
  NonQuasiInvariant,
  NonUnitaryCocycle,
  MeasureMismatch,
  Validation,
};

const char* to_string(ErrorKind kind);

// Numerical failures map to CLI exit code 3, everything else to 2.
inline bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::NotHermitian || kind == ErrorKind::SingularSystem;
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace rotinv
