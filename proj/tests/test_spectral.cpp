#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "whitham/spectral.hpp"

namespace whitham {
namespace {

using testing::kPi;
using testing::max_diff;
using testing::random_field;

GridPtr unit_circle(Index n = 64) { return make_grid<double>(n, 2 * kPi); }

TEST(Grid, RejectsOddOrTinyPointCounts) {
  EXPECT_THROW(Grid(7, 1.0), Error);
  EXPECT_THROW(Grid(6, 1.0), Error);
  EXPECT_THROW(Grid(16, -1.0), Error);
  EXPECT_NO_THROW(Grid(8, 1.0));
}

TEST(Grid, NodesAndFrequencies) {
  Grid g(16, 3.0);
  EXPECT_DOUBLE_EQ(g.spacing() * 16, 3.0);
  for (Index j = 1; j < g.size(); ++j) {
    EXPECT_NEAR(g.nodes()[j] - g.nodes()[j - 1], g.spacing(), 1e-15);
  }
  const RealArray xi = g.frequencies();
  EXPECT_NEAR(xi[0], -2 * kPi * 8 / 3.0, 1e-14);
  for (Index k = 1; k < 8; ++k) EXPECT_NEAR(xi[8 + k], -xi[8 - k], 1e-14);
  EXPECT_DOUBLE_EQ(xi[8], 0.0);
}

TEST(Field, RejectsNonFiniteValues) {
  auto g = unit_circle(8);
  RealArray v = RealArray::Zero(8);
  v[3] = std::nan("");
  EXPECT_THROW(Field(g, v), Error);
  try {
    Field(g, v);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Field, SpectrumRoundTrip) {
  auto g = unit_circle(128);
  std::mt19937_64 rng(11);
  Field f = random_field(g, rng, 40, 1.0, true);
  Field raw(g, f.values());
  Field back = Field::from_spectrum(g, raw.spectrum());
  EXPECT_LT(max_diff(back, raw), 1e-12 * (1 + raw.max_abs()));
}

TEST(Field, SpectrumOfCosine) {
  auto g = unit_circle(32);
  Field f = Field::sample(g, [](double x) { return 3.0 + std::cos(2 * x); });
  const auto& c = f.spectrum();
  EXPECT_NEAR(c[0].real(), 3.0, 1e-14);
  EXPECT_NEAR(c[2].real(), 0.5, 1e-14);
  EXPECT_NEAR(c[2].imag(), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(c[1]), 0.0, 1e-14);
}

TEST(Fmu, ValueAtUnitArgument) {
  // sqrt(tanh(1)) from a 30-digit evaluation, frozen.
  EXPECT_NEAR(fmu(1.0, 1.0), 0.87269362089782969154, 1e-15);
  // sqrt(tanh(a)/a), a = 3 sqrt(0.1).
  EXPECT_NEAR(fmu(3.0, 0.1), 0.88270654807518812268, 1e-15);
}

TEST(Fmu, SeriesBranchIsContinuous) {
  const double mu = 1.0;
  const double below = fmu(0.99999e-4, mu);
  const double above = fmu(1.00001e-4, mu);
  EXPECT_NEAR(below, above, 1e-12);
  EXPECT_DOUBLE_EQ(fmu(0.0, mu), 1.0);
}

TEST(Fmu, RangeParityAndZeroMuLimit) {
  for (double mu : {0.01, 0.1, 1.0}) {
    for (double xi = -50; xi <= 50; xi += 0.37) {
      const double f = fmu(xi, mu);
      EXPECT_GT(f, 0.0);
      EXPECT_LE(f, 1.0);
      EXPECT_DOUBLE_EQ(f, fmu(-xi, mu));
    }
  }
  EXPECT_EQ(fmu(123.0, 0.0), 1.0);
}

TEST(ApplyMultiplier, FmuOnPlaneWave) {
  auto g = unit_circle(32);
  Params p{1.0, 0.0};
  Field f = Field::sample(g, [](double x) { return std::cos(x); });
  Field out = apply_multiplier(Symbol(SymbolKind::Fmu), f, p);
  Field expect = Field::sample(g, [](double x) { return 0.87269362089782969154 * std::cos(x); });
  EXPECT_LT(max_diff(out, expect), 1e-14);
}

TEST(ApplyMultiplier, ZeroMuIsIdentity) {
  auto g = unit_circle(64);
  std::mt19937_64 rng(3);
  Field f = random_field(g, rng, 20, 1.0, true);
  Params p{0.0, 0.3};
  for (auto kind : {SymbolKind::Fmu, SymbolKind::Fmu2, SymbolKind::FmuInv}) {
    Field out = apply_multiplier(Symbol(kind), f, p);
    EXPECT_EQ(max_diff(out, f), 0.0);
  }
}

TEST(ApplyMultiplier, Fmu2AndInverseAreConsistent) {
  auto g = make_grid<double>(128, 40 * kPi);
  std::mt19937_64 rng(5);
  Field f = random_field(g, rng, 50);
  Params p{0.3, 0.1};
  Field twice = apply_multiplier(Symbol(SymbolKind::Fmu),
                                 apply_multiplier(Symbol(SymbolKind::Fmu), f, p), p);
  Field squared = apply_multiplier(Symbol(SymbolKind::Fmu2), f, p);
  EXPECT_LT(max_diff(twice, squared), 1e-13);
  Field back = apply_multiplier(Symbol(SymbolKind::FmuInv),
                                apply_multiplier(Symbol(SymbolKind::Fmu), f, p), p);
  EXPECT_LT(max_diff(back, f), 1e-13);
}

TEST(ApplyMultiplier, IsLinear) {
  auto g = unit_circle(64);
  std::mt19937_64 rng(8);
  Field f = random_field(g, rng, 25, 1.0, true);
  Field h = random_field(g, rng, 25, 1.0, true);
  Params p{0.5, 0.1};
  Symbol sym(SymbolKind::Fmu);
  Field lhs = apply_multiplier(sym, 2.5 * f + (-1.5) * h, p);
  Field rhs = 2.5 * apply_multiplier(sym, f, p) + (-1.5) * apply_multiplier(sym, h, p);
  EXPECT_LT(max_diff(lhs, rhs), 1e-12);
}

TEST(ApplyMultiplier, CustomSymbolKeepsFieldReal) {
  auto g = unit_circle(16);
  Field f = Field::sample(g, [](double x) { return std::cos(8 * x) + std::sin(3 * x); });
  Symbol shift([](double xi, const Params&) { return std::complex<double>(0, xi); });
  Field out = apply_multiplier(shift, f, Params{});
  Field expect = Field::sample(g, [](double x) { return 3 * std::cos(3 * x); });
  EXPECT_LT(max_diff(out, expect), 1e-13);
}

TEST(AntiDerivative, CosineToSine) {
  auto g = unit_circle(32);
  Field f = Field::sample(g, [](double x) { return std::cos(x); });
  Field out = anti_derivative(f);
  Field expect = Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_LT(max_diff(out, expect), 1e-14);
  Field via_symbol = apply_multiplier(Symbol(SymbolKind::AntiDerivative), f, Params{});
  EXPECT_LT(max_diff(via_symbol, expect), 1e-14);
}

TEST(AntiDerivative, RejectsNonZeroMean) {
  auto g = unit_circle(32);
  Field f = Field::sample(g, [](double x) { return 0.1 + std::cos(x); });
  try {
    anti_derivative(f);
    FAIL() << "expected NonZeroMean";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonZeroMean);
  }
  EXPECT_THROW(apply_multiplier(Symbol(SymbolKind::AntiDerivative), f, Params{}), Error);
  Field projected = anti_derivative(f, MeanPolicy::Project);
  EXPECT_LT(max_diff(projected, anti_derivative(project_mean_zero(f))), 1e-15);
}

TEST(AntiDerivative, SkewAdjointAndRightInverse) {
  auto g = make_grid<double>(256, 40 * kPi);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Field f = random_field(g, rng, 60);
    Field h = random_field(g, rng, 60);
    const double scale = norm_l2(f) * norm_l2(h);
    EXPECT_LT(std::abs(inner(anti_derivative(f), h) + inner(f, anti_derivative(h))),
              1e-12 * scale);
    Field dd = derivative(anti_derivative(f));
    EXPECT_LT(max_diff(dd, f), 1e-10 * f.max_abs());
    EXPECT_LT(std::abs(anti_derivative(f).mean()), 1e-14);
  }
}

TEST(AntiDerivative, LeftInverseUpToMean) {
  auto g = unit_circle(64);
  std::mt19937_64 rng(4);
  Field f = random_field(g, rng, 20, 1.0, true);
  Field back = anti_derivative(derivative(f));
  Field expect = project_mean_zero(f);
  EXPECT_LT(max_diff(back, expect), 1e-10 * (1 + f.max_abs()));
}

TEST(Derivative, ConstantAndSine) {
  auto g = unit_circle(32);
  EXPECT_LT(derivative(Field::constant(g, 4.2)).max_abs(), 1e-15);
  Field s = Field::sample(g, [](double x) { return std::sin(x); });
  Field c = Field::sample(g, [](double x) { return std::cos(x); });
  EXPECT_LT(max_diff(derivative(s), c), 1e-12);
}

TEST(Derivative, NyquistModeIsRemoved) {
  auto g = unit_circle(16);
  Field f = Field::sample(g, [](double x) { return std::cos(8 * x); });
  EXPECT_LT(derivative(f).max_abs(), 1e-13);
}

TEST(Derivative, MatchesCenteredDifferences) {
  // Second-order finite differences: error should drop 4x per refinement.
  std::mt19937_64 rng(17);
  std::vector<double> errors;
  ComplexArray c = ComplexArray::Zero(5);
  std::normal_distribution<double> gauss;
  for (int k = 1; k <= 4; ++k) c[k] = {gauss(rng), gauss(rng)};
  for (Index n : {64, 128, 256}) {
    auto g = unit_circle(n);
    Field f = Field::sample(g, [&](double x) {
      double v = 0;
      for (int k = 1; k <= 4; ++k) v += 2 * (c[k] * std::polar(1.0, k * x)).real();
      return v;
    });
    Field d = derivative(f);
    const double dx = g->spacing();
    double err = 0;
    for (Index j = 0; j < n; ++j) {
      const double fd = (f[(j + 1) % n] - f[(j + n - 1) % n]) / (2 * dx);
      err = std::max(err, std::abs(fd - d[j]));
    }
    errors.push_back(err);
  }
  EXPECT_NEAR(errors[0] / errors[1], 4.0, 0.1);
  EXPECT_NEAR(errors[1] / errors[2], 4.0, 0.1);
}

TEST(NormHs, SineNorms) {
  auto g = unit_circle(32);
  EXPECT_EQ(norm_hs(Field::zeros(g), 0.0), 0.0);
  Field s = Field::sample(g, [](double x) { return std::sin(x); });
  EXPECT_NEAR(norm_hs(s, 0.0), std::sqrt(kPi), 1e-13);
  EXPECT_NEAR(norm_hs(s, 1.0), std::sqrt(2 * kPi), 1e-13);
  // Quadrature of f^2 + f'^2.
  Field c = Field::sample(g, [](double x) { return std::cos(x); });
  EXPECT_NEAR(norm_hs(s, 1.0), std::sqrt(inner(s, s) + inner(c, c)), 1e-13);
}

TEST(NormHs, Parseval) {
  auto g = make_grid<double>(128, 10.0);
  std::mt19937_64 rng(9);
  Field f = random_field(g, rng, 63, 1.0, true);
  const double l2 = norm_l2(f);
  EXPECT_NEAR(l2 * l2, inner(f, f), 1e-12 * inner(f, f));
}

TEST(PointwiseProduct, UnitAndSquareIdentities) {
  auto g = unit_circle(32);
  Field c = Field::sample(g, [](double x) { return std::cos(x); });
  EXPECT_LT(max_diff(pointwise_product(c, Field::constant(g, 1.0)), c), 1e-14);
  Field sq = pointwise_product(c, c);
  Field expect = Field::sample(g, [](double x) { return 0.5 * (1 + std::cos(2 * x)); });
  EXPECT_LT(max_diff(sq, expect), 1e-12);
}

TEST(PointwiseProduct, RejectsGridMismatch) {
  Field a = Field::zeros(unit_circle(32));
  Field b = Field::zeros(unit_circle(64));
  try {
    pointwise_product(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(PointwiseProduct, DealiasedMatchesFineGridProduct) {
  // Fields with modes up to n/3; the product is formed exactly on a 2n grid,
  // transformed by a direct DFT sum and truncated back to the 2/3 band.
  const Index n = 48;
  const int kmax = 16;
  std::mt19937_64 rng(33);
  std::normal_distribution<double> gauss;
  std::vector<std::complex<double>> a(kmax + 1), b(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    a[k] = {gauss(rng), gauss(rng)};
    b[k] = {gauss(rng), gauss(rng)};
  }
  a[0] = gauss(rng);
  b[0] = gauss(rng);
  auto eval = [&](const std::vector<std::complex<double>>& c, double x) {
    double v = c[0].real();
    for (int k = 1; k <= kmax; ++k) v += 2 * (c[k] * std::polar(1.0, k * x)).real();
    return v;
  };
  auto g = unit_circle(n);
  Field fa = Field::sample(g, [&](double x) { return eval(a, x); });
  Field fb = Field::sample(g, [&](double x) { return eval(b, x); });
  Field prod = pointwise_product(fa, fb, true);

  const Index nf = 2 * n;
  std::vector<double> fine(nf);
  for (Index j = 0; j < nf; ++j) {
    const double x = 2 * kPi * j / nf;
    fine[j] = eval(a, x) * eval(b, x);
  }
  Field oracle = Field::sample(g, [&](double x) {
    double v = 0;
    for (Index k = -n / 2 + 1; k < n / 2; ++k) {
      if (3 * std::abs(k) >= n) continue;
      std::complex<double> ck = 0;
      for (Index j = 0; j < nf; ++j) ck += fine[j] * std::polar(1.0, -2 * kPi * k * j / nf);
      ck /= double(nf);
      v += (ck * std::polar(1.0, k * x)).real();
    }
    return v;
  });
  EXPECT_LT(max_diff(prod, oracle), 1e-12 * (1 + oracle.max_abs()));
}

TEST(LongDouble, SpectralCoreInstantiates) {
  auto g = make_grid<long double>(32, 2 * std::numbers::pi_v<long double>);
  auto f = BasicField<long double>::sample(g, [](long double x) { return std::sin(x); });
  auto d = derivative(f);
  long double err = 0;
  for (Index j = 0; j < 32; ++j) err = std::max(err, std::abs(d[j] - std::cos(g->nodes()[j])));
  EXPECT_LT(static_cast<double>(err), 2e-15);
}

}  // namespace
}  // namespace whitham
