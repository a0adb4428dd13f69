#include "pairbell/kernels.hpp"

#include <gtest/gtest.h>

#include "pairbell/errors.hpp"
#include "test_support.hpp"

using namespace pairbell;
using pairbell::testing::random_matrix;
using pairbell::testing::random_vector;
using pairbell::testing::Rng;

namespace {

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

// Sizes straddle the parallel cutoff so both the serial-fallback and the
// OpenMP branches of each kernel are compared with the reference loops.
class KernelsMatchReference : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelsMatchReference, MultiplyAndMatvec) {
  Rng rng(GetParam());
  const std::size_t n = GetParam();
  const CMatrix a = random_matrix(rng, n, n);
  const CMatrix b = random_matrix(rng, n, n);
  const auto v = random_vector(rng, n);
  EXPECT_LE(pairbell::max_abs_diff(kernels::multiply(a, b), reference::multiply(a, b)), 1e-12 * n);
  EXPECT_LE(max_abs_diff(kernels::multiply(a, v), reference::multiply(a, v)), 1e-12 * n);
  EXPECT_LE(std::abs(kernels::quadratic_form(a, v) - reference::quadratic_form(a, v)), 1e-11 * n);
  EXPECT_LE(std::abs(kernels::trace_product(a, b) - reference::trace_product(a, b)), 1e-11 * n);
}

TEST_P(KernelsMatchReference, LocalProductAgainstFullKronecker) {
  Rng rng(1000 + GetParam());
  const std::size_t da = GetParam() / 4 + 2;
  const std::size_t db = GetParam() / 8 + 2;
  const CMatrix a = random_matrix(rng, da, da);
  const CMatrix b = random_matrix(rng, db, db);
  const auto psi = random_vector(rng, da * db);
  const CMatrix rho = random_matrix(rng, da * db, da * db);
  EXPECT_LE(pairbell::max_abs_diff(kernels::kron(a, b), reference::kron(a, b)), 0.0);
  EXPECT_LE(std::abs(kernels::local_product_expectation(a, b, psi) - reference::local_product_expectation(a, b, psi)),
            1e-10);
  EXPECT_LE(std::abs(kernels::local_product_trace(a, b, rho) - reference::local_product_trace(a, b, rho)), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelsMatchReference, ::testing::Values(3, 16, 64, 130));

TEST(Kernels, ReductionsAreDeterministic) {
  Rng rng(7);
  const CMatrix m = random_matrix(rng, 200, 200);
  const auto v = random_vector(rng, 200);
  const cplx first = kernels::quadratic_form(m, v);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(kernels::quadratic_form(m, v), first);
}

TEST(Kernels, ShapeErrors) {
  const CMatrix a(2, 3);
  const CMatrix b(2, 2);
  EXPECT_THROW(kernels::multiply(a, b), DimensionError);
  const std::vector<cplx> v(5);
  EXPECT_THROW(kernels::multiply(b, v), DimensionError);
  EXPECT_THROW(kernels::local_product_expectation(b, b, v), DimensionError);
  EXPECT_THROW(reference::local_product_expectation(b, b, v), DimensionError);
}

TEST(Kernels, KronOfIdentitiesIsIdentity) {
  EXPECT_EQ(kernels::kron(CMatrix::identity(2), CMatrix::identity(3)), CMatrix::identity(6));
}
