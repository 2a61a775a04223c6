// Coordinate charts and two-component states.
#pragma once

#include <utility>

#include "whitham/spectral.hpp"

namespace whitham {

enum class Chart {
  SurfacePotential,  // (zeta, psi)
  SurfaceVelocity,   // (zeta, v)
  Diagonal,          // (u+, u-) or (r, s)
  Scalar,            // single field; `second` is carried as zero
};

const char* to_string(Chart chart) noexcept;

struct ModelState {
  Chart chart;
  Field first;
  Field second;

  ModelState(Chart c, Field a, Field b) : chart(c), first(std::move(a)), second(std::move(b)) {
    check_same_grid(first, second);
  }

  static ModelState scalar(Field u) {
    Field zero = Field::zeros(u.grid_ptr());
    return ModelState(Chart::Scalar, std::move(u), std::move(zero));
  }

  const Grid& grid() const { return first.grid(); }
  const GridPtr& grid_ptr() const { return first.grid_ptr(); }
  double max_abs() const;
};

void require_chart(const ModelState& state, Chart expected);

ModelState operator+(const ModelState& a, const ModelState& b);
ModelState operator-(const ModelState& a, const ModelState& b);
ModelState operator*(double c, const ModelState& a);

// L2 pairing of both components.
double inner(const ModelState& a, const ModelState& b);
// sqrt of the sum of squared H^alpha norms of both components.
double norm_hs(const ModelState& a, double alpha);

}  // namespace whitham
