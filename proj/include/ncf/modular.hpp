#pragma once

// Every formula that carries the modular function lives here, so the finite
// groups (where it is identically 1) and the ax+b quadrature model share one
// implementation.

#include <cmath>
#include <complex>

namespace ncf::modular {

/// Scalar factor of the involution f*(t) = Delta(t^-1) conj(f(t^-1)),
/// given Delta(t^-1).
inline double involution_factor(double modular_at_inverse) { return modular_at_inverse; }

/// Scalar factor of the modular conjugation (J xi)(t) = Delta(t)^{-1/2} conj(xi(t^-1)).
inline double conjugation_factor(double modular_at_t) { return 1.0 / std::sqrt(modular_at_t); }

/// Delta^{iz}, the multiplier of the analytically continued modular flow
/// sigma_z(lambda_t) = Delta(t)^{iz} lambda_t.
inline std::complex<double> flow_factor(double modular_at_t, std::complex<double> z) {
  return std::exp(std::complex<double>(0.0, 1.0) * z * std::log(modular_at_t));
}

/// Weight Delta^{1/2} relating positivity of lambda(f) to positive definiteness.
inline double half_density(double modular_at_t) { return std::sqrt(modular_at_t); }

}  // namespace ncf::modular
