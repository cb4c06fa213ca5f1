#pragma once

namespace tripod::special {

/// sin(pi x) with argument reduction, exact zeros at the integers.
double sin_pi(double x);

/// Real gamma function by the Lanczos approximation (g = 607/128, 15 terms), reflection below 1/2.
/// Relative accuracy ~1e-14 for moderate |x|. Throws Error(GammaPole) at non-positive integers.
double gamma(double x);

/// Distance from x to the nearest pole of gamma (non-positive integer); +inf for x > 0.
double pole_distance(double x);

}  // namespace tripod::special
