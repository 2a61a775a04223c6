#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles/laplace_oracle.hpp"
#include "test_support.hpp"
#include "whitham/dno.hpp"

namespace whitham {
namespace {

using testing::kPi;
using testing::max_diff;
using testing::random_field;

Eigen::VectorXd to_vec(const Field& f) { return f.values().matrix(); }

TEST(LaplaceOracle, FlatSurfaceMatchesClosedForm) {
  const int n = 16;
  auto g = make_grid<double>(n, 2 * kPi);
  const double mu = 0.7;
  Field psi = Field::sample(g, [](double x) { return std::cos(3 * x); });
  Eigen::VectorXd out = oracle::dno_laplace(Eigen::VectorXd::Zero(n), to_vec(psi), 2 * kPi, mu, 20);
  const double factor = 3 * std::tanh(std::sqrt(mu) * 3) / std::sqrt(mu);
  for (int j = 0; j < n; ++j) EXPECT_NEAR(out[j], factor * psi[j], 1e-9);
}

TEST(Dno, FlatSurfaceSymbol) {
  auto g = make_grid<double>(128, 40 * kPi);
  std::mt19937_64 rng(1);
  Field psi = random_field(g, rng, 60, 1.0, true);
  Params p{0.4, 0.1};
  Field zero = Field::zeros(g);
  for (int order = 0; order <= 3; ++order) {
    Field out = dno_apply(zero, psi, p, DnoConfig{order, true});
    Symbol flat([](double xi, const Params& q) {
      const double a = std::abs(xi);
      if (a == 0) return std::complex<double>(0);
      return std::complex<double>(a * std::tanh(std::sqrt(q.mu) * a) / std::sqrt(q.mu));
    });
    EXPECT_LT(max_diff(out, apply_multiplier(flat, psi, p)), 1e-12);
  }
}

TEST(Dno, SmallMuApproachesMinusSecondDerivative) {
  auto g = make_grid<double>(64, 2 * kPi);
  Field psi = Field::sample(g, [](double x) { return std::sin(2 * x); });
  Field zero = Field::zeros(g);
  Field lap = -derivative(derivative(psi));
  double prev = 0;
  for (double mu : {1e-2, 5e-3}) {
    const double err = max_diff(dno_apply(zero, psi, Params{mu, 0.1}), lap);
    EXPECT_LT(err, 10 * mu);
    if (prev > 0) EXPECT_NEAR(prev / err, 2.0, 0.05);
    prev = err;
  }
}

TEST(Dno, FirstOrderTermMatchesEllipticSolve) {
  // The order-eps part of the operator, extracted from the elliptic solve by
  // a Richardson-extrapolated central difference in eps.
  const int n = 32;
  const double length = 2 * kPi;
  auto g = make_grid<double>(n, length);
  const double mu = 1.0;
  Field zeta = Field::sample(g, [](double x) { return std::cos(x) + 0.5 * std::sin(2 * x); });
  Field psi = Field::sample(g, [](double x) { return std::cos(2 * x) - 0.3 * std::sin(x); });

  auto central = [&](double e) {
    Eigen::VectorXd plus = oracle::dno_laplace(e * to_vec(zeta), to_vec(psi), length, mu, 28);
    Eigen::VectorXd minus = oracle::dno_laplace(-e * to_vec(zeta), to_vec(psi), length, mu, 28);
    return Eigen::VectorXd((plus - minus) / (2 * e));
  };
  const double e = 0.02;
  Eigen::VectorXd g1_oracle = (4 * central(e / 2) - central(e)) / 3;

  const double eps = 0.5;
  Params p{mu, eps, 1.0, 0.1};
  Field g0 = dno_apply(zeta, psi, p, DnoConfig{0, true});
  Field g1 = (1.0 / eps) * (dno_apply(zeta, psi, p, DnoConfig{1, true}) - g0);
  const double rel = (to_vec(g1) - g1_oracle).lpNorm<Eigen::Infinity>() /
                     g1_oracle.lpNorm<Eigen::Infinity>();
  EXPECT_LT(rel, 1e-6);
}

TEST(Dno, TruncationErrorAgainstEllipticSolveDecays) {
  const int n = 32;
  const double length = 2 * kPi;
  auto g = make_grid<double>(n, length);
  const double mu = 0.5;
  Field zeta = Field::sample(g, [](double x) { return std::cos(x); });
  Field psi = Field::sample(g, [](double x) { return std::sin(x) + 0.2 * std::cos(2 * x); });
  const double eps = 0.05;
  Eigen::VectorXd exact =
      oracle::dno_laplace(eps * to_vec(zeta), to_vec(psi), length, mu, 28);
  double prev = 1e300;
  for (int order = 0; order <= 3; ++order) {
    Field out = dno_apply(zeta, psi, Params{mu, eps}, DnoConfig{order, false});
    const double err = (to_vec(out) - exact).lpNorm<Eigen::Infinity>();
    EXPECT_LT(err, 0.5 * prev) << "order " << order;
    prev = err;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Dno, LinearInPsi) {
  auto g = make_grid<double>(128, 40 * kPi);
  std::mt19937_64 rng(2);
  Field zeta = random_field(g, rng, 30);
  Field a = random_field(g, rng, 30);
  Field b = random_field(g, rng, 30);
  Params p{0.2, 0.1};
  Field lhs = dno_apply(zeta, 2.0 * a + (-3.0) * b, p);
  Field rhs = 2.0 * dno_apply(zeta, a, p) + (-3.0) * dno_apply(zeta, b, p);
  EXPECT_LT(max_diff(lhs, rhs), 1e-12 * (1 + rhs.max_abs()));
}

TEST(Dno, SelfAdjointAndMeanFree) {
  auto g = make_grid<double>(256, 40 * kPi);
  std::mt19937_64 rng(3);
  for (int order = 0; order <= 2; ++order) {
    Field zeta = random_field(g, rng, 60);
    Field a = random_field(g, rng, 60);
    Field b = random_field(g, rng, 60);
    Params p{0.3, 0.2};
    DnoConfig cfg{order, true};
    const double lhs = inner(a, dno_apply(zeta, b, p, cfg));
    const double rhs = inner(dno_apply(zeta, a, p, cfg), b);
    EXPECT_NEAR(lhs, rhs, 1e-8 * (std::abs(lhs) + 1));
    EXPECT_LT(std::abs(dno_apply(zeta, a, p, cfg).mean()), 1e-10);
  }
}

TEST(Dno, DirichletEnergyIsPositive) {
  auto g = make_grid<double>(256, 40 * kPi);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Field zeta = random_field(g, rng, 40);
    Field psi = random_field(g, rng, 40);
    Params p{0.5, 0.1 / zeta.max_abs()};
    EXPECT_GT(inner(psi, dno_apply(zeta, psi, p)), 0.0);
  }
}

TEST(Dno, SuccessiveTermsScaleWithEpsPower) {
  auto g = make_grid<double>(256, 40 * kPi);
  std::mt19937_64 rng(5);
  Field zeta = random_field(g, rng, 30);
  Field psi = random_field(g, rng, 30);
  for (int order = 1; order <= 3; ++order) {
    auto gap = [&](double eps) {
      Params p{0.5, eps};
      return norm_l2(dno_apply(zeta, psi, p, DnoConfig{order, true}) -
                     dno_apply(zeta, psi, p, DnoConfig{order - 1, true}));
    };
    const double ratio = gap(0.1) / gap(0.05);
    const double target = std::pow(2.0, order);
    EXPECT_NEAR(ratio, target, 0.2 * target) << "order " << order;
  }
}

TEST(Dno, ShallowSurrogateAgreesAtFlatOrZeroEps) {
  auto g = make_grid<double>(128, 40 * kPi);
  std::mt19937_64 rng(6);
  Field zeta = random_field(g, rng, 30);
  Field psi = random_field(g, rng, 30);
  Params p{0.3, 0.0};
  EXPECT_LT(max_diff(dno_shallow(zeta, psi, p), dno_apply(zeta, psi, p)), 1e-12);
  Field zero = Field::zeros(g);
  Params q{0.3, 0.2};
  EXPECT_LT(max_diff(dno_shallow(zero, psi, q), dno_apply(zero, psi, q)), 1e-12);
}

TEST(Dno, ShallowGapScalesLikeMuEps) {
  auto g = make_grid<double>(512, 40 * kPi);
  Field zeta = testing::bump(g, 1.0, 20 * kPi, 2.0);
  Field psi = anti_derivative(testing::bump(g, 1.0, 20 * kPi, 2.0));
  std::vector<double> scaled;
  for (double t : {0.1, 0.05, 0.025}) {
    Params p{t, t};
    scaled.push_back(norm_l2(dno_apply(zeta, psi, p) - dno_shallow(zeta, psi, p)) / (t * t));
  }
  EXPECT_LT(scaled[2] / scaled[0], 1.5);
  EXPECT_GT(scaled[2] / scaled[0], 0.5);
}

TEST(Dno, Errors) {
  auto g = make_grid<double>(32, 2 * kPi);
  Field zeta = Field::sample(g, [](double x) { return -std::cos(x); });
  Field psi = Field::zeros(g);
  try {
    dno_apply(zeta, psi, Params{0.1, 0.9, 1.0, 0.2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CavitationViolated);
  }
  EXPECT_THROW(dno_shallow(zeta, psi, Params{0.1, 0.9, 1.0, 0.2}), Error);
  try {
    dno_apply(zeta, psi, Params{0.1, 0.1}, DnoConfig{4, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationUnsupported);
  }
}

}  // namespace
}  // namespace whitham
