#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "whitham/hamiltonians.hpp"
#include "whitham/models.hpp"

using namespace whitham;
using whitham::testing::kPi;
using whitham::testing::max_diff;
using whitham::testing::random_field;

namespace {

const FunctionalKind kDiagonalKinds[] = {FunctionalKind::H_BW,   FunctionalKind::H_Wh,
                                         FunctionalKind::L_quad, FunctionalKind::Z_cubic,
                                         FunctionalKind::W_coupling, FunctionalKind::G_aux};

struct Fixture : ::testing::Test {
  GridPtr g = make_grid(64, 2 * kPi);
  std::mt19937_64 rng{99};
  Field rf(int kmax = 6, double amp = 0.5) { return random_field(g, rng, kmax, amp); }
  ModelState diag() { return ModelState(Chart::Diagonal, rf(), rf()); }
};

// Relative mismatch between <grad, delta> and a central difference of eval.
double fd_mismatch(const Functional& fn, const ModelState& u, const ModelState& delta,
                   double h = 1e-5) {
  const double fd = (eval(fn, u + h * delta) - eval(fn, u - h * delta)) / (2 * h);
  const double an = inner(gradient(fn, u), delta);
  return std::abs(an - fd) / std::max(std::abs(fd), 1e-300);
}

double pair_inner(const FieldPair& a, const FieldPair& b) {
  return inner(a.first, b.first) + inner(a.second, b.second);
}

}  // namespace

using Hamiltonians = Fixture;

TEST_F(Hamiltonians, ZeroStateGivesZero) {
  const Params p{0.2, 0.1};
  const ModelState zd(Chart::Diagonal, Field::zeros(g), Field::zeros(g));
  for (FunctionalKind k : kDiagonalKinds) EXPECT_EQ(eval(Functional{k, p}, zd), 0.0) << to_string(k);
  const ModelState zs(Chart::SurfacePotential, Field::zeros(g), Field::zeros(g));
  EXPECT_EQ(eval(Functional{FunctionalKind::H_WW, p}, zs), 0.0);
  EXPECT_EQ(eval(Functional{FunctionalKind::H0_eps_H1, p}, zs), 0.0);
}

TEST_F(Hamiltonians, QuadraticOfSine) {
  const Field s = Field::sample(g, [](double x) { return std::sin(x); });
  const double l = eval(Functional{FunctionalKind::L_quad, Params{}},
                        ModelState(Chart::Diagonal, s, Field::zeros(g)));
  EXPECT_NEAR(l, kPi, 1e-13);
}

TEST_F(Hamiltonians, SplittingIdentities) {
  const Params p{0.2, 0.15};
  for (int trial = 0; trial < 5; ++trial) {
    const ModelState u = diag();
    auto ev = [&](FunctionalKind k) { return eval(Functional{k, p}, u); };
    const double l = ev(FunctionalKind::L_quad), z = ev(FunctionalKind::Z_cubic),
                 w = ev(FunctionalKind::W_coupling);
    EXPECT_NEAR(ev(FunctionalKind::H_BW), l + p.eps * (z + w), 1e-12);
    EXPECT_NEAR(ev(FunctionalKind::H_Wh), l + p.eps * z, 1e-12);
  }
}

TEST_F(Hamiltonians, TrivialGradients) {
  const ModelState u = diag();
  const ModelState gl = gradient(Functional{FunctionalKind::L_quad, Params{}}, u);
  EXPECT_EQ(max_diff(gl.first, 2.0 * u.first), 0.0);
  const ModelState gz = gradient(Functional{FunctionalKind::Z_cubic, Params{}}, u);
  EXPECT_LT(max_diff(gz.second, 1.5 * (u.second * u.second)), 1e-15);
}

TEST_F(Hamiltonians, DiagonalGradientsMatchFiniteDifferences) {
  const Params p{0.2, 0.15};
  for (FunctionalKind k : kDiagonalKinds) {
    for (int trial = 0; trial < 5; ++trial) {
      const ModelState u = diag();
      const ModelState d = diag();
      EXPECT_LT(fd_mismatch(Functional{k, p}, u, d), 1e-6) << to_string(k);
    }
  }
}

TEST_F(Hamiltonians, SurfaceGradientsMatchFiniteDifferences) {
  const Params p{0.1, 0.05};
  const Functional hww{FunctionalKind::H_WW, p, DnoConfig{2, true}};
  const Functional h01{FunctionalKind::H0_eps_H1, p};
  for (int trial = 0; trial < 5; ++trial) {
    // The closed-form gradient differs from the truncated functional's by a
    // term cubic in amplitude, hence the small base state for H_WW.
    const ModelState small(Chart::SurfacePotential, rf(6, 0.1), rf(6, 0.1));
    const ModelState u(Chart::SurfacePotential, rf(), rf());
    const ModelState d(Chart::SurfacePotential, rf(), rf());
    EXPECT_LT(fd_mismatch(hww, small, d), 1e-6);
    EXPECT_LT(fd_mismatch(h01, u, d), 1e-6);
    const ModelState uv(Chart::SurfaceVelocity, rf(), rf());
    const ModelState dv(Chart::SurfaceVelocity, rf(), rf());
    EXPECT_LT(fd_mismatch(h01, uv, dv), 1e-6);
  }
}

TEST_F(Hamiltonians, TensorsAreSkew) {
  const Params p{0.3, 0.1};
  for (TensorKind k : {TensorKind::J_canonical, TensorKind::J_tilde, TensorKind::J_mu,
                       TensorKind::J_simp}) {
    const PoissonTensor t{k, p};
    const FieldPair u{rf(), rf()}, v{rf(), rf()};
    EXPECT_NEAR(pair_inner(u, apply_tensor(t, v)), -pair_inner(apply_tensor(t, u), v), 1e-12);
  }
}

TEST_F(Hamiltonians, TensorSpecialCases) {
  const FieldPair u{rf(), rf()};
  const FieldPair c = apply_tensor(PoissonTensor{TensorKind::J_canonical, Params{}}, u);
  EXPECT_EQ(max_diff(c.first, u.second), 0.0);
  EXPECT_EQ(max_diff(c.second, -u.first), 0.0);
  const FieldPair a = apply_tensor(PoissonTensor{TensorKind::J_mu, Params{0.0, 0.1}}, u);
  const FieldPair b = apply_tensor(PoissonTensor{TensorKind::J_simp, Params{0.0, 0.1}}, u);
  EXPECT_LT(max_diff(a.first, b.first), 1e-12);
  EXPECT_LT(max_diff(a.second, b.second), 1e-12);
}

TEST_F(Hamiltonians, BracketSkewness) {
  const Params p{0.3, 0.1};
  const ModelState u = diag();
  const PoissonTensor jm{TensorKind::J_mu, p};
  const Functional hbw{FunctionalKind::H_BW, p};
  const Functional l{FunctionalKind::L_quad, p};
  EXPECT_NEAR(lie_bracket(hbw, hbw, u, jm), 0.0, 1e-12);
  EXPECT_NEAR(lie_bracket(l, l, u, PoissonTensor{TensorKind::J_simp, p}), 0.0, 1e-12);
  const Functional z{FunctionalKind::Z_cubic, p};
  EXPECT_NEAR(lie_bracket(l, z, u, jm), -lie_bracket(z, l, u, jm), 1e-12);
}

TEST_F(Hamiltonians, HomologicalIdentity) {
  const Params p{0.2, 0.1};
  for (int trial = 0; trial < 20; ++trial) {
    const Field r = rf(8, 1.0), s = rf(8, 1.0);
    const double scale = 1 + std::pow(norm_l2(r), 3) + std::pow(norm_l2(s), 3);
    EXPECT_LE(homological_residual(r, s, p).residual, 1e-10 * scale);
  }
  EXPECT_EQ(homological_residual(Field::zeros(g), Field::zeros(g), p).residual, 0.0);
}

TEST_F(Hamiltonians, HomologicalMuGapIsLinear) {
  const Field r = rf(), s = rf();
  const double a = homological_residual(r, s, Params{0.02, 0.1}).mu_gap;
  const double b = homological_residual(r, s, Params{0.01, 0.1}).mu_gap;
  EXPECT_NEAR(b / a, 0.5, 0.15);
}

TEST_F(Hamiltonians, CancellationIdentity) {
  for (int trial = 0; trial < 5; ++trial) {
    const Field r = rf(), s = rf();
    const double lhs = inner(r * derivative(r), anti_derivative(s));
    const double rhs = -0.5 * inner(r * r, s);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST_F(Hamiltonians, NormalFormDefect) {
  const Field r = rf(), s = rf();
  EXPECT_EQ(normal_form_defect(r, s, Params{0.3, 0.0}), 0.0);
  const double a = normal_form_defect(r, s, Params{0.3, 0.1});
  const double b = normal_form_defect(r, s, Params{0.3, 0.05});
  EXPECT_NEAR(a / b, 4.0, 0.2);
  EXPECT_NEAR(normal_form_defect(r, s, Params{0.7, 0.1}), a, 1e-12);
}

TEST_F(Hamiltonians, DiagonalChartCarriesWhithamBoussinesqEnergy) {
  const Params p{0.3, 0.15};
  for (int trial = 0; trial < 5; ++trial) {
    const Field r = rf(), s = rf();
    const FieldPair zv = t_d(r, s, p);
    const double lhs =
        eval(Functional{FunctionalKind::H0_eps_H1, p}, ModelState(Chart::SurfaceVelocity, zv.first, zv.second));
    const double rhs = eval(Functional{FunctionalKind::H_BW, p}, ModelState(Chart::Diagonal, r, s));
    EXPECT_NEAR(lhs, rhs, 1e-10);
  }
}

TEST_F(Hamiltonians, StructureDefect) {
  const Field r = rf(), s = rf();
  const FieldPair u{rf(), rf()};
  EXPECT_EQ(structure_defect(r, s, u, Params{0.3, 0.0}), 0.0);
  // At mu = 0 what remains is the eps^2 part.
  const double a = structure_defect(r, s, u, Params{0.0, 0.1});
  const double b = structure_defect(r, s, u, Params{0.0, 0.05});
  EXPECT_GT(a / b, 3.5);
  EXPECT_LT(a / b, 4.5);
}

// Band-limited fields keep every product resolved, so the dealiased
// right-hand sides agree with the nodewise gradients.
TEST_F(Hamiltonians, HamiltonEquations) {
  const Params p{0.3, 0.2};
  const Field a = rf(4), b = rf(4);
  {
    const ModelState u(Chart::Diagonal, a, b);
    const ModelState grad = gradient(Functional{FunctionalKind::H_Wh, p}, u);
    const ModelState field = apply_tensor(PoissonTensor{TensorKind::J_mu, p}, grad, Chart::Diagonal);
    const ModelState r = rhs(ModelKind::DecoupledWhithamPair, u, p);
    EXPECT_LT(max_diff(field.first, r.first), 1e-12);
    EXPECT_LT(max_diff(field.second, r.second), 1e-12);
  }
  {
    const ModelState u(Chart::SurfacePotential, a, b);
    const ModelState grad = gradient(Functional{FunctionalKind::H0_eps_H1, p}, u);
    const ModelState field =
        apply_tensor(PoissonTensor{TensorKind::J_canonical, p}, grad, Chart::SurfacePotential);
    const ModelState r = rhs(ModelKind::HamiltonianWB, u, p);
    EXPECT_LT(max_diff(field.first, r.first), 1e-12);
    EXPECT_LT(max_diff(field.second, r.second), 1e-12);
  }
  {
    const ModelState u(Chart::SurfacePotential, 0.3 * a, 0.3 * b);
    const ModelState grad = gradient(Functional{FunctionalKind::H_WW, p}, u);
    const ModelState field =
        apply_tensor(PoissonTensor{TensorKind::J_canonical, p}, grad, Chart::SurfacePotential);
    const ModelState r = rhs(ModelKind::WaterWaves, u, p);
    EXPECT_LT(max_diff(field.first, r.first), 1e-12);
    EXPECT_LT(max_diff(field.second, r.second), 1e-12);
  }
}

TEST_F(Hamiltonians, ChartAndMeanErrors) {
  const Params p{0.2, 0.1};
  const ModelState scalar = ModelState::scalar(rf());
  try {
    eval(Functional{FunctionalKind::H_BW, p}, scalar);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ChartMismatch);
  }
  const ModelState meanful(Chart::Diagonal, random_field(g, rng, 4, 0.5, true), rf());
  try {
    eval(Functional{FunctionalKind::G_aux, p}, meanful);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonZeroMean);
  }
}
