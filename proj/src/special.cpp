#include "tripod/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "tripod/config.hpp"

namespace tripod::special {

namespace {

constexpr double kG = 607.0 / 128.0;
constexpr std::array<double, 15> kCoefficients = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

// Gamma(z + 1) for z >= -1/2.
double lanczos_shifted(double z) {
  double series = kCoefficients[0];
  for (std::size_t k = 1; k < kCoefficients.size(); ++k) series += kCoefficients[k] / (z + static_cast<double>(k));
  const double t = z + kG + 0.5;
  const double log_prefactor = 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t;
  return std::exp(log_prefactor) * series;
}

}  // namespace

double sin_pi(double x) {
  const double n = std::round(x);
  const double r = x - n;
  const double s = std::sin(std::numbers::pi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double pole_distance(double x) {
  if (x > 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(x - std::round(x));
}

double gamma(double x) {
  if (x <= 0.0 && x == std::round(x))
    throw Error(ErrorCode::GammaPole, fmt::format("gamma function pole at {}", x));
  if (x < 0.5) return std::numbers::pi / (sin_pi(x) * gamma(1.0 - x));
  return lanczos_shifted(x - 1.0);
}

}  // namespace tripod::special
