#include "pairbell/states.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numbers>

#include "pairbell/errors.hpp"
#include "test_support.hpp"

using namespace pairbell;
using pairbell::testing::for_all;
using pairbell::testing::Rng;
using pairbell::testing::uniform;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

// Nonzero amplitudes as (x, y) -> value.
void expect_support(const StateVector& s, const std::vector<std::tuple<std::size_t, std::size_t, double>>& expected) {
  std::vector<cplx> want(s.space().total_dim());
  for (auto [x, y, v] : expected) want[s.space().index(x, y)] = v;
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_LE(std::abs(s.amplitudes()[i] - want[i]), 1e-15) << i;
}

Eigen::Matrix4cd to_eigen(const CMatrix& m) {
  Eigen::Matrix4cd e;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) e(r, c) = m(r, c);
  return e;
}

}  // namespace

TEST(GenericPair, CanonicalPair) {
  const auto s = generic_pair_state(FockSpace(2, 2), {{0, 1}, {0, 1}});
  expect_support(s, {{0, 1, kH}, {1, 0, kH}});
  EXPECT_EQ(s.norm_deficit(), 0.0);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(GenericPair, WidePair) {
  expect_support(generic_pair_state(FockSpace(4, 4), {{0, 3}, {0, 3}}), {{0, 3, kH}, {3, 0, kH}});
}

TEST(GenericPair, MixedPairsPlaceAmplitudesAtPsAndQr) {
  expect_support(generic_pair_state(FockSpace(6, 6), {{1, 4}, {2, 5}}), {{1, 5, kH}, {4, 2, kH}});
}

TEST(GenericPair, Errors) {
  EXPECT_THROW(generic_pair_state(FockSpace(4, 4), {{0, 4}, {0, 1}}), IndexError);
  EXPECT_THROW(generic_pair_state(FockSpace(4, 4), {{2, 2}, {0, 1}}), IndexError);
}

TEST(Noon, Examples) {
  const auto s1 = noon_state(FockSpace(2, 2), 1);
  const auto g = generic_pair_state(FockSpace(2, 2), {{0, 1}, {0, 1}});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s1.amplitudes()[i], g.amplitudes()[i]);
  expect_support(noon_state(FockSpace(4, 4), 3), {{3, 0, kH}, {0, 3, kH}});
  EXPECT_THROW(noon_state(FockSpace(4, 4), 5), RangeError);
  EXPECT_THROW(noon_state(FockSpace(4, 4), 4), RangeError);
  EXPECT_THROW(noon_state(FockSpace(4, 4), 0), RangeError);
}

TEST(Coherent, ZeroAmplitudeIsPairState) {
  const auto s = coherent_superposition_state(FockSpace(4, 4), 0.0);
  expect_support(s, {{1, 0, kH}, {0, 1, kH}});
  EXPECT_EQ(s.norm_deficit(), 0.0);
}

TEST(Coherent, OneOneAmplitude) {
  const auto s = coherent_superposition_state(FockSpace(4, 4), 1.0);
  const double expected = 2.0 * std::exp(-0.5) / (std::sqrt(2.0) * std::sqrt(1.0 + std::exp(-1.0)));
  EXPECT_NEAR(s.amplitude(1, 1).real(), expected, 1e-15);
  EXPECT_NEAR(s.amplitude(1, 1).imag(), 0.0, 1e-15);
}

TEST(Coherent, NormPlusDeficitIsOne) {
  for_all(200, 21, [](Rng& rng, int) {
    const double r = uniform(rng, 0.0, 3.0);
    const cplx z = std::polar(r, uniform(rng, -std::numbers::pi, std::numbers::pi));
    const std::size_t da = pairbell::testing::random_even_dim(rng, 2, 24);
    const std::size_t db = pairbell::testing::random_even_dim(rng, 2, 24);
    const FockSpace space(da, db);
    const auto s = coherent_superposition_state(space, z);
    EXPECT_LE(s.normalization_residual(), 1e-12) << "z=" << z << " dims " << da << "x" << db;
    EXPECT_EQ(s.norm_deficit(), tail_bound(CoherentSuperposition{z}, space).tail_probability);
  });
}

TEST(Coherent, ExchangeSymmetric) {
  for_all(50, 22, [](Rng& rng, int) {
    const cplx z{uniform(rng, -2, 2), uniform(rng, -2, 2)};
    const std::size_t d = pairbell::testing::random_even_dim(rng, 2, 20);
    const auto s = coherent_superposition_state(FockSpace(d, d), z);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) EXPECT_EQ(s.amplitude(x, y), s.amplitude(y, x));
  });
}

TEST(Squeezed, Amplitudes) {
  const auto s = two_mode_squeezed_state(FockSpace(8, 8), 0.5);
  EXPECT_NEAR(s.amplitude(2, 2).real(), std::sqrt(0.75) * 0.25, 1e-15);
  EXPECT_EQ(s.amplitude(2, 3), cplx(0.0));
  const auto small = two_mode_squeezed_state(FockSpace(4, 4), 1e-8);
  EXPECT_NEAR(small.amplitude(0, 0).real(), 1.0, 1e-15);
}

TEST(Squeezed, DeficitIsGeometricTail) {
  const auto s = two_mode_squeezed_state(FockSpace(16, 16), 0.7);
  EXPECT_NEAR(s.norm_deficit(), 1.1044276742439203e-05, 1e-18);
  EXPECT_NEAR(tail_bound(TwoModeSqueezed{0.7}, FockSpace(16, 16)).tail_probability, std::pow(0.49, 16), 1e-18);
}

TEST(Squeezed, RealDecreasingAndNormalized) {
  for_all(100, 23, [](Rng& rng, int) {
    const double eta = uniform(rng, 0.01, 0.99);
    const std::size_t d = pairbell::testing::random_even_dim(rng, 2, 32);
    const auto s = two_mode_squeezed_state(FockSpace(d, d), eta);
    EXPECT_LE(s.normalization_residual(), 1e-12);
    for (std::size_t n = 0; n < d; ++n) {
      EXPECT_EQ(s.amplitude(n, n).imag(), 0.0);
      EXPECT_GT(s.amplitude(n, n).real(), 0.0);
      if (n > 0) EXPECT_LT(s.amplitude(n, n).real(), s.amplitude(n - 1, n - 1).real());
    }
  });
}

TEST(Squeezed, Errors) {
  EXPECT_THROW(two_mode_squeezed_state(FockSpace(4, 4), 0.0), RangeError);
  EXPECT_THROW(two_mode_squeezed_state(FockSpace(4, 4), 1.0), RangeError);
  EXPECT_THROW(two_mode_squeezed_state(FockSpace(4, 6), 0.5), DimensionError);
}

TEST(Werner, Limits) {
  const CMatrix near_zero = werner_state(1e-15).matrix();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(std::abs(near_zero(r, c) - (r == c ? 0.25 : 0.0)), 0.0, 1e-15);

  const CMatrix singlet = werner_state(1.0).matrix();
  // (|1,0> - |0,1>)/sqrt(2): indices 2 and 1
  EXPECT_NEAR(singlet(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(singlet(2, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(singlet(1, 2).real(), -0.5, 1e-15);
  EXPECT_EQ(singlet(0, 0), cplx(0.0));
  EXPECT_EQ(singlet(3, 3), cplx(0.0));
}

TEST(Werner, SpectrumFromEigenSolver) {
  for (double w : {0.05, 0.3, 0.5, 0.70710678118654752, 0.9, 1.0}) {
    const Eigen::Matrix4cd rho = to_eigen(werner_state(w).matrix());
    EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, 1e-15);
    EXPECT_LE((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho);
    auto ev = solver.eigenvalues();
    std::vector<double> got(ev.data(), ev.data() + 4);
    std::sort(got.begin(), got.end());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], (1.0 - w) / 4.0, 1e-14) << w;
    EXPECT_NEAR(got[3], (1.0 + 3.0 * w) / 4.0, 1e-14) << w;
  }
}

TEST(Werner, EmbeddingAgreesWithBlock) {
  const FockSpace space(4, 6);
  const CMatrix small = werner_state(0.6).matrix();
  const CMatrix big = werner_state(space, 0.6).matrix();
  double outside = 0.0;
  for (std::size_t r = 0; r < big.rows(); ++r)
    for (std::size_t c = 0; c < big.cols(); ++c) outside += std::abs(big(r, c));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t v = 0; v < 2; ++v) {
          EXPECT_EQ(big(space.index(x, y), space.index(u, v)), small(2 * x + y, 2 * u + v));
          outside -= std::abs(small(2 * x + y, 2 * u + v));
        }
  EXPECT_NEAR(outside, 0.0, 1e-15);
}

TEST(Werner, DomainErrors) {
  EXPECT_THROW(werner_state(0.0), RangeError);
  EXPECT_THROW(werner_state(1.2), RangeError);
}

TEST(TailBound, Values) {
  EXPECT_EQ(tail_bound(Noon{3}, FockSpace(4, 4)).tail_probability, 0.0);
  EXPECT_EQ(tail_bound(GenericPair{}, FockSpace(4, 4)).tail_probability, 0.0);
  EXPECT_EQ(tail_bound(Werner{0.5}, FockSpace(2, 2)).tail_probability, 0.0);
  const double coh = tail_bound(CoherentSuperposition{1.0}, FockSpace(20, 20)).tail_probability;
  EXPECT_LT(coh, 1e-15);
  EXPECT_GT(coh, 0.0);
}

// Upward summation against an independent direct sum of the tail terms, and
// against 1 - CDF where that complement is still well conditioned.
TEST(PoissonTail, MatchesIndependentSums) {
  EXPECT_NEAR(poisson_upper_tail(1.0, 20) / 1.5875276010732630e-19, 1.0, 1e-10);
  for (double mean : {0.1, 0.5, 1.0, 2.5, 5.0}) {
    for (std::size_t cutoff : {1u, 2u, 4u, 8u}) {
      const double oracle = pairbell::testing::poisson_tail_from_cdf(mean, cutoff);
      EXPECT_NEAR(poisson_upper_tail(mean, cutoff), oracle, 1e-15 + 1e-12 * oracle) << mean << " " << cutoff;
    }
  }
  EXPECT_EQ(poisson_upper_tail(0.0, 3), 0.0);
  EXPECT_EQ(poisson_upper_tail(2.0, 0), 1.0);
}

TEST(Families, NamesRoundTrip) {
  for (auto f : {Family::GenericPair, Family::Noon, Family::CoherentSuperposition, Family::TwoModeSqueezed,
                 Family::Werner}) {
    EXPECT_EQ(family_from_name(family_name(f)), f);
  }
  EXPECT_THROW(family_from_name("cat"), ParseError);
  EXPECT_EQ(family_of(StateSpec{Werner{0.3}}), Family::Werner);
}

TEST(Families, BuildStateDispatches) {
  const FockSpace space(4, 4);
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(build_state(Werner{0.5}, space)));
  EXPECT_TRUE(std::holds_alternative<StateVector>(build_state(TwoModeSqueezed{0.5}, space)));
  EXPECT_THROW(build_state(TwoModeSqueezed{1.5}, space), RangeError);
  EXPECT_THROW(build_state(Noon{0}, space), RangeError);
}
