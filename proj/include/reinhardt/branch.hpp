#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"

namespace reinhardt {

/// Principal argument in (-pi, pi]; negative reals (including -0 imaginary part) map to +pi.
inline double principal_arg(std::complex<double> t)
{
    if (t.imag() == 0.0 && t.real() < 0.0) return std::numbers::pi;
    return std::atan2(t.imag(), t.real());
}

/// t^{1/alpha} = exp((log|t| + i arg t) / alpha) on the principal branch; 0 for t = 0.
inline std::complex<double> frac_pow(std::complex<double> t, double alpha)
{
    if (!(alpha > 0.0)) throw ContractViolation("frac_pow: exponent denominator must be positive");
    if (t == std::complex<double>{0.0, 0.0}) return {0.0, 0.0};
    const double mod = std::pow(std::abs(t), 1.0 / alpha);
    return std::polar(mod, principal_arg(t) / alpha);
}

} // namespace reinhardt
