#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lcnet/errors.hpp"
#include "lcnet/input_space.hpp"
#include "oracles.hpp"

namespace lcnet {
namespace {

const GridMeta kUnit = GridMeta::uniform(0.0, 1.0, 101);

TEST(ApplyFunctional, QuadratureOfConstant) {
  const auto l = LinearFunctional::quadrature(kUnit, std::vector<double>(101, 1.0));
  const auto s = InputPoint::function(kUnit, std::vector<double>(101, 2.5));
  EXPECT_DOUBLE_EQ(apply_functional(l, s), 2.5);
}

TEST(ApplyFunctional, MatrixTraceOfIdentity) {
  const auto l = LinearFunctional::matrix_trace(2, 2, {1.0, 0.0, 0.0, 1.0});
  const auto z = InputPoint::matrix(2, 2, {1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(apply_functional(l, z), 5.0);
}

TEST(ApplyFunctional, CoordinateFunctional) {
  const auto l = LinearFunctional::sequence_dot({1.0, 0.0, 0.0});
  EXPECT_EQ(apply_functional(l, InputPoint::sequence({7.0, -1.0, 4.0})), 7.0);
}

TEST(ApplyFunctional, ZeroAcceptsEverything) {
  const auto zero = LinearFunctional::zero();
  EXPECT_EQ(apply_functional(zero, InputPoint::sequence({7.0})), 0.0);
  EXPECT_EQ(apply_functional(zero, InputPoint::matrix(1, 2, {1.0, 2.0})), 0.0);
  EXPECT_EQ(apply_functional(zero, InputPoint::function(kUnit, std::vector<double>(101, 3.0))), 0.0);
}

TEST(ApplyFunctional, ShapeMismatch) {
  const auto l = LinearFunctional::sequence_dot({1.0, 0.0, 0.0});
  EXPECT_THROW(apply_functional(l, InputPoint::sequence({1.0, 2.0})), ShapeError);
  EXPECT_THROW(apply_functional(l, InputPoint::matrix(1, 3, {1.0, 2.0, 3.0})), ShapeError);
  const auto q = LinearFunctional::quadrature(kUnit, std::vector<double>(101, 1.0));
  const auto other = GridMeta::uniform(0.0, 2.0, 101);
  EXPECT_THROW(apply_functional(q, InputPoint::function(other, std::vector<double>(101, 1.0))),
               ShapeError);
}

TEST(InputPoint, Validates) {
  EXPECT_THROW(InputPoint::matrix(2, 2, {1.0, 2.0, 3.0}), ShapeError);
  EXPECT_THROW(InputPoint::sequence({1.0, INFINITY}), std::invalid_argument);
  EXPECT_THROW(InputPoint::sequence({1.0}) + InputPoint::sequence({1.0, 2.0}), ShapeError);
}

TEST(RandomFunctional, DeterministicInSeed) {
  for (const auto& shape : {InputShape::function(kUnit), InputShape::sequence(5), InputShape::matrix(2, 3)}) {
    const FunctionalSpec spec{shape, 1.5, 7};
    EXPECT_EQ(random_functional(spec, 11), random_functional(spec, 11));
  }
}

TEST(RandomFunctional, ZeroScaleIsZeroFunctional) {
  const auto l = random_functional({InputShape::sequence(4), 0.0, 7}, 3);
  EXPECT_EQ(l.kind(), FunctionalKind::Zero);
  EXPECT_TRUE(l.coefficients().empty());
}

TEST(RandomFunctional, DistinctSeedsDiffer) {
  for (const auto& shape : {InputShape::function(kUnit), InputShape::sequence(5), InputShape::matrix(2, 2)}) {
    const FunctionalSpec spec{shape, 1.0, 7};
    int identical = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      if (random_functional(spec, 2 * s) == random_functional(spec, 2 * s + 1)) ++identical;
    }
    EXPECT_EQ(identical, 0);
  }
}

TEST(RandomFunctional, RejectsNegativeScale) {
  EXPECT_THROW(random_functional({InputShape::sequence(4), -1.0, 7}, 3), std::invalid_argument);
}

TEST(SampleEnsemble, ZeroRadiusGivesZeroFunctions) {
  const EnsembleSpec spec{BandLimited{kUnit, {0.0}}, 10};
  const auto e = sample_ensemble(spec, 1);
  ASSERT_EQ(e.size(), 10u);
  for (const auto& s : e.samples) {
    for (double v : s.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(SampleEnsemble, BandLimitedRespectsBoundsAndReproduces) {
  const EnsembleSpec spec{BandLimited{kUnit, {1.0, 0.5, 0.25}}, 50};
  const auto a = sample_ensemble(spec, 7);
  const auto b = sample_ensemble(spec, 7);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.parameters[i].size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_LE(std::abs(a.parameters[i][k]), std::get<BandLimited>(spec.family).radii[k]);
    }
    // Sample values are the sine series of the recorded coefficients.
    for (std::size_t j = 0; j < kUnit.n; j += 10) {
      const double x = kUnit.node(j);
      double expect = 0.0;
      for (std::size_t k = 0; k < 3; ++k) expect += a.parameters[i][k] * std::sin((k + 1.0) * M_PI * x);
      EXPECT_NEAR(a.samples[i].values()[j], expect, 1e-14);
    }
    EXPECT_EQ(a.samples[i].values(), b.samples[i].values());  // bit-identical
  }
}

TEST(SampleEnsemble, SequenceBoxBounds) {
  const EnsembleSpec spec{SequenceBox{{1.0, 0.5, 0.1}}, 200};
  const auto e = sample_ensemble(spec, 3);
  for (const auto& s : e.samples) {
    EXPECT_LE(std::abs(s.values()[0]), 1.0);
    EXPECT_LE(std::abs(s.values()[1]), 0.5);
    EXPECT_LE(std::abs(s.values()[2]), 0.1);
  }
}

TEST(SampleEnsemble, MatrixBallBounds) {
  const EnsembleSpec spec{MatrixBall{2, 2, 2.0}, 20};
  const auto e = sample_ensemble(spec, 5);
  double biggest = 0.0;
  for (const auto& s : e.samples) {
    double n2 = 0.0;
    for (double v : s.values()) n2 += v * v;
    EXPECT_LE(std::sqrt(n2), 2.0);
    biggest = std::max(biggest, std::sqrt(n2));
  }
  EXPECT_GE(biggest, 1.0);
}

TEST(SampleEnsemble, Errors) {
  EXPECT_THROW(sample_ensemble({SequenceBox{{1.0}}, 0}, 1), std::invalid_argument);
  EXPECT_THROW(sample_ensemble({SequenceBox{{}}, 3}, 1), std::invalid_argument);
  EXPECT_THROW(sample_ensemble({BandLimited{kUnit, {}}, 3}, 1), std::invalid_argument);
}

TEST(InputSpaceProperty, FunctionalsAreLinear) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (const auto& shape : {InputShape::function(kUnit), InputShape::sequence(6), InputShape::matrix(3, 2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto l = random_functional({shape, 2.0, 7}, 1000 + trial);
      const InputPoint s(shape, oracle::normals(shape.size(), 2 * trial));
      const InputPoint u(shape, oracle::normals(shape.size(), 2 * trial + 1));
      const double alpha = normal(rng), beta = normal(rng);
      const double lhs = apply_functional(l, alpha * s + beta * u);
      const double rhs = alpha * apply_functional(l, s) + beta * apply_functional(l, u);
      EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST(InputSpaceProperty, QuadraturePairingBoundedOnEnsemble) {
  const auto e = sample_ensemble({BandLimited{kUnit, {1.0, 0.5, 0.25}}, 100}, 21);
  const auto w = trapezoid_weights(kUnit);
  for (int k = 0; k < 10; ++k) {
    const auto l = random_functional({InputShape::function(kUnit), 3.0, 7}, 500 + k);
    double weighted = 0.0;
    for (std::size_t i = 0; i < kUnit.n; ++i) weighted += w[i] * std::abs(l.coefficients()[i]);
    for (const auto& s : e.samples) {
      double sup = 0.0;
      for (double v : s.values()) sup = std::max(sup, std::abs(v));
      EXPECT_LE(std::abs(apply_functional(l, s)), weighted * sup * (1.0 + 1e-12));
    }
  }
}

TEST(DeriveSeed, SpreadsStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}

}  // namespace
}  // namespace lcnet
