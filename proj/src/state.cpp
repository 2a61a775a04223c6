#include "whitham/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace whitham {

const char* to_string(Chart chart) noexcept {
  switch (chart) {
    case Chart::SurfacePotential: return "SurfacePotential";
    case Chart::SurfaceVelocity: return "SurfaceVelocity";
    case Chart::Diagonal: return "Diagonal";
    case Chart::Scalar: return "Scalar";
  }
  return "Unknown";
}

double ModelState::max_abs() const {
  if (chart == Chart::Scalar) return first.max_abs();
  return std::max(first.max_abs(), second.max_abs());
}

void require_chart(const ModelState& state, Chart expected) {
  if (state.chart != expected) {
    throw Error(ErrorCode::ChartMismatch, std::string("expected chart ") + to_string(expected) +
                                              ", got " + to_string(state.chart));
  }
}

namespace {

void require_compatible(const ModelState& a, const ModelState& b) {
  if (a.chart != b.chart) {
    throw Error(ErrorCode::ChartMismatch, std::string("cannot combine ") + to_string(a.chart) +
                                              " with " + to_string(b.chart));
  }
}

}  // namespace

ModelState operator+(const ModelState& a, const ModelState& b) {
  require_compatible(a, b);
  return ModelState(a.chart, a.first + b.first, a.second + b.second);
}

ModelState operator-(const ModelState& a, const ModelState& b) {
  require_compatible(a, b);
  return ModelState(a.chart, a.first - b.first, a.second - b.second);
}

ModelState operator*(double c, const ModelState& a) {
  return ModelState(a.chart, c * a.first, c * a.second);
}

double inner(const ModelState& a, const ModelState& b) {
  require_compatible(a, b);
  return inner(a.first, b.first) + inner(a.second, b.second);
}

double norm_hs(const ModelState& a, double alpha) {
  const double x = norm_hs(a.first, alpha);
  const double y = norm_hs(a.second, alpha);
  return std::sqrt(x * x + y * y);
}

}  // namespace whitham
