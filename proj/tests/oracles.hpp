#pragma once

// Independent reference computations used by the unit tests.

#include "photonlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

using photonlab::CMat3;
using photonlab::Complex;
using photonlab::Mat3;
using photonlab::Real;
using photonlab::Vec3;

// exp(m) by scaling and squaring a truncated Taylor series.
inline CMat3 expm_series(const CMat3& m) {
  int squarings = 0;
  Real norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25L) {
    norm /= 2;
    ++squarings;
  }
  const CMat3 a = m / std::ldexp(Real{1}, squarings);
  CMat3 term = CMat3::Identity(), sum = CMat3::Identity();
  for (int n = 1; n < 30; ++n) {
    term = term * a / Real(n);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

class Sampler {
 public:
  explicit Sampler(unsigned long long seed) : gen_(seed) {}
  Real uniform(Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Vec3 vector(Real scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  // A direction whose polar angle stays inside [margin, pi - margin].
  Vec3 momentum(Real magnitude, Real margin = 0.2L) {
    const Real t = std::acos(uniform(std::cos(Real{3.14159265358979L} - margin), std::cos(margin)));
    const Real f = uniform(-3.1L, 3.1L);
    return magnitude * Vec3(std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t));
  }

 private:
  std::mt19937_64 gen_;
};

// Euler angles of R = Rz(phi) Ry(theta) Rz(chi), generic (non-polar) case,
// with phi and chi taken on the branch nearest the reference values.
inline void zyz_angles(const Mat3& r, Real ref_phi, Real ref_chi, Real& phi, Real& theta, Real& chi) {
  theta = std::acos(std::clamp(r(2, 2), Real{-1}, Real{1}));
  phi = std::atan2(r(1, 2), r(0, 2));
  chi = std::atan2(r(2, 1), -r(2, 0));
  const Real two_pi = 2 * std::acos(Real{-1});
  phi += two_pi * std::round((ref_phi - phi) / two_pi);
  chi += two_pi * std::round((ref_chi - chi) / two_pi);
}

inline Real max_abs(const CMat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
