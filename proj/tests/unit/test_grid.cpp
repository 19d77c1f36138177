#include <gtest/gtest.h>

#include <cmath>

#include "lcnet/errors.hpp"
#include "lcnet/grid.hpp"
#include "oracles.hpp"

namespace lcnet {
namespace {

TEST(Grid, UniformValidates) {
  EXPECT_THROW(GridMeta::uniform(1.0, 0.0, 10), std::invalid_argument);
  EXPECT_THROW(GridMeta::uniform(0.0, 1.0, 1), std::invalid_argument);
  const auto g = GridMeta::uniform(0.0, 1.0, 101);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.01);
  EXPECT_EQ(g.node(100), 1.0);
  EXPECT_EQ(g.node(0), 0.0);
}

TEST(Grid, TrapezoidOfConstantIsExact) {
  const auto g = GridMeta::uniform(0.0, 1.0, 101);
  std::vector<double> ones(101, 1.0);
  EXPECT_EQ(trapezoid(g, ones), 1.0);
  auto w = trapezoid_weights(g);
  EXPECT_DOUBLE_EQ(w.front(), 0.005);
  EXPECT_DOUBLE_EQ(w[50], 0.01);
}

TEST(Grid, TrapezoidRejectsSizeMismatch) {
  const auto g = GridMeta::uniform(0.0, 1.0, 11);
  std::vector<double> f(10, 1.0);
  EXPECT_THROW(trapezoid(g, f), ShapeError);
}

TEST(Grid, FdWeightsMatchClassicStencils) {
  const std::vector<double> three{-1.0, 0.0, 1.0};
  auto d1 = fd_weights(0.0, three, 1);
  EXPECT_NEAR(d1[0], -0.5, 1e-15);
  EXPECT_NEAR(d1[1], 0.0, 1e-15);
  EXPECT_NEAR(d1[2], 0.5, 1e-15);
  auto d2 = fd_weights(0.0, three, 2);
  EXPECT_NEAR(d2[0], 1.0, 1e-15);
  EXPECT_NEAR(d2[1], -2.0, 1e-15);
  EXPECT_NEAR(d2[2], 1.0, 1e-15);
  // One-sided second-order first derivative: (-3, 4, -1) / 2.
  auto side = fd_weights(0.0, std::vector<double>{0.0, 1.0, 2.0}, 1);
  EXPECT_NEAR(side[0], -1.5, 1e-15);
  EXPECT_NEAR(side[1], 2.0, 1e-15);
  EXPECT_NEAR(side[2], -0.5, 1e-15);
}

TEST(Grid, DerivativeOfSineIsSecondOrder) {
  auto err = [](std::size_t n, int order) {
    const auto g = GridMeta::uniform(0.0, 1.0, n);
    auto f = oracle::sample([](double x) { return std::sin(3.0 * x); }, 0.0, 1.0, n);
    auto d = derivative(g, f, order);
    auto exact = oracle::sample(
        [order](double x) { return order == 1 ? 3.0 * std::cos(3.0 * x) : -9.0 * std::sin(3.0 * x); },
        0.0, 1.0, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(d[i] - exact[i]));
    return worst;
  };
  for (int order : {1, 2}) {
    const double ratio = err(51, order) / err(101, order);
    EXPECT_GT(ratio, 3.0) << "order " << order;
    EXPECT_LT(ratio, 5.0) << "order " << order;
  }
}

TEST(Grid, DerivativeNeedsEnoughNodes) {
  const auto g = GridMeta::uniform(0.0, 1.0, 3);
  std::vector<double> f{0.0, 1.0, 4.0};
  EXPECT_THROW(derivative(g, f, 3), std::invalid_argument);
  auto d2 = derivative(g, f, 2);
  for (double v : d2) EXPECT_NEAR(v, 8.0, 1e-9);  // 4 x^2 sampled at h = 1/2
}

}  // namespace
}  // namespace lcnet
