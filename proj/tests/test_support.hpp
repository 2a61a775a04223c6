// Shared helpers for the unit tests.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "whitham/spectral.hpp"

namespace whitham::testing {

inline constexpr double kPi = std::numbers::pi;

// Random trigonometric polynomial with modes 1..kmax, smooth amplitude decay
// and no mean.
inline Field random_field(const GridPtr& grid, std::mt19937_64& rng, int kmax = 8,
                          double amplitude = 1.0, bool with_mean = false) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexArray c = ComplexArray::Zero(grid->half_size());
  for (int k = 1; k <= kmax; ++k) {
    const double decay = amplitude / (1.0 + 0.25 * k * k);
    c[k] = std::complex<double>(gauss(rng), gauss(rng)) * (0.5 * decay);
  }
  if (with_mean) c[0] = gauss(rng);
  return Field::from_spectrum(grid, c);
}

// Localized mean-zero bump on a long domain: a Gaussian minus its mean.
inline Field bump(const GridPtr& grid, double amplitude, double center, double width) {
  Field f = Field::sample(grid, [&](double x) {
    const double d = (x - center) / width;
    return amplitude * std::exp(-d * d);
  });
  return project_mean_zero(f);
}

inline double max_diff(const Field& a, const Field& b) {
  return (a.values() - b.values()).abs().maxCoeff();
}

}  // namespace whitham::testing
