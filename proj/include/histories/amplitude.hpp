#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "histories/error.hpp"

namespace histories {

/// Dimensionless relative path amplitude. Counting rates are |A|^2 with the
/// proportionality constant fixed to 1.
template <typename Real>
using BasicAmplitude = std::complex<Real>;

using Amplitude = BasicAmplitude<double>;

template <typename Real>
bool is_finite(const std::complex<Real>& a) {
  return std::isfinite(a.real()) && std::isfinite(a.imag());
}

template <typename Real>
void require_finite(const std::complex<Real>& a, const std::string& what) {
  if (!is_finite(a)) throw Error(ErrorCode::NonFinite, what + " has a non-finite component");
}

}  // namespace histories
