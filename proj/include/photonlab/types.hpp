#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace photonlab {

// Nested finite differences at h ~ 1e-5 p lose ~10 digits to cancellation,
// so the numeric core runs in x87 extended precision.
using Real = long double;
using Complex = std::complex<Real>;

using Vec3 = Eigen::Matrix<Real, 3, 1>;
using CVec3 = Eigen::Matrix<Complex, 3, 1>;
using Mat3 = Eigen::Matrix<Real, 3, 3>;
using CMat3 = Eigen::Matrix<Complex, 3, 3>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;
inline constexpr Complex kI{0, 1};

/// Algebraic tolerance for closed-form identities.
inline constexpr Real kTauAlg = 1e-12L;
/// Exclusion zone (in sin(theta)) around the polar axis.
inline constexpr Real kEpsPole = 1e-6L;

enum class ErrorKind {
  PoleProximity,
  StepTooLarge,
  StringProximity,
  AmbiguousCap,
  DegenerateLoop,
  NonintegrableGauge,
  ConfigError,
  SingularRegion,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Real levi_civita(int j, int k, int l) {
  return static_cast<Real>((j - k) * (k - l) * (l - j)) / 2;
}

}  // namespace photonlab
