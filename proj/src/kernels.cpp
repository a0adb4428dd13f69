#include "pairbell/kernels.hpp"

#include <cstddef>
#include <numeric>

#include "pairbell/errors.hpp"

namespace pairbell {

namespace {

// Below this many rows the fork/join overhead outweighs the work.
constexpr std::ptrdiff_t kParallelRows = 64;

void require_square(const CMatrix& m, const char* what) {
  if (!m.is_square()) throw DimensionError(std::string(what) + ": matrix is not square");
}

void check_multiply(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
}

void check_local(const CMatrix& a, const CMatrix& b, std::size_t n) {
  require_square(a, "local product");
  require_square(b, "local product");
  if (a.rows() * b.rows() != n) throw DimensionError("local product: state size does not match a ⊗ b");
}

cplx ordered_sum(const std::vector<cplx>& partials) {
  return std::accumulate(partials.begin(), partials.end(), cplx{});
}

}  // namespace

namespace kernels {

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  check_multiply(a, b);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  CMatrix c(a.rows(), cols);
  const cplx* pa = a.data().data();
  const cplx* pb = b.data().data();
  cplx* pc = c.data().data();
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    cplx* __restrict crow = pc + static_cast<std::size_t>(i) * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const cplx aik = pa[static_cast<std::size_t>(i) * inner + k];
      if (aik == cplx{}) continue;
      const double ar = aik.real(), ai = aik.imag();
      const cplx* __restrict brow = pb + k * cols;
      // Plain real arithmetic; std::complex's operator* carries a NaN
      // recovery branch that blocks vectorization.
      for (std::size_t j = 0; j < cols; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] = {crow[j].real() + ar * br - ai * bi, crow[j].imag() + ar * bi + ai * br};
      }
    }
  }
  return c;
}

std::vector<cplx> multiply(const CMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw DimensionError("multiply: vector length differs from matrix columns");
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
  std::vector<cplx> out(a.rows());
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    cplx acc{};
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) acc += r[k] * v[k];
    out[i] = acc;
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t br = b.rows();
  const std::size_t bc = b.cols();
  CMatrix out(a.rows() * br, a.cols() * bc);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (rows * static_cast<std::ptrdiff_t>(br) >= kParallelRows)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < br; ++k) {
        for (std::size_t l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

cplx quadratic_form(const CMatrix& m, std::span<const cplx> v) {
  require_square(m, "quadratic_form");
  if (m.rows() != v.size()) throw DimensionError("quadratic_form: vector length differs from matrix");
  const auto n = static_cast<std::ptrdiff_t>(m.rows());
  std::vector<cplx> partial(m.rows());
#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (v[i] == cplx{}) continue;
    cplx acc{};
    const auto r = m.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) acc += r[k] * v[k];
    partial[i] = std::conj(v[i]) * acc;
  }
  return ordered_sum(partial);
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) throw DimensionError("trace_product: shapes incompatible");
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
  std::vector<cplx> partial(a.rows());
#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cplx acc{};
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, i);
    partial[i] = acc;
  }
  return ordered_sum(partial);
}

cplx local_product_expectation(const CMatrix& a, const CMatrix& b, std::span<const cplx> psi) {
  check_local(a, b, psi.size());
  const std::size_t da = a.rows();
  const std::size_t db = b.rows();
  const auto rows = static_cast<std::ptrdiff_t>(da);
  // t = a * Psi
  std::vector<cplx> t(da * db);
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
  for (std::ptrdiff_t x = 0; x < rows; ++x) {
    for (std::size_t k = 0; k < da; ++k) {
      const cplx axk = a(x, k);
      if (axk == cplx{}) continue;
      for (std::size_t y = 0; y < db; ++y) t[x * db + y] += axk * psi[k * db + y];
    }
  }
  // sum_x sum_y conj(Psi[x,y]) * (t b^T)[x,y]
  std::vector<cplx> partial(da);
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
  for (std::ptrdiff_t x = 0; x < rows; ++x) {
    cplx acc{};
    for (std::size_t y = 0; y < db; ++y) {
      const cplx p = psi[x * db + y];
      if (p == cplx{}) continue;
      cplx u{};
      for (std::size_t k = 0; k < db; ++k) u += t[x * db + k] * b(y, k);
      acc += std::conj(p) * u;
    }
    partial[x] = acc;
  }
  return ordered_sum(partial);
}

cplx local_product_trace(const CMatrix& a, const CMatrix& b, const CMatrix& rho) {
  require_square(rho, "local_product_trace");
  check_local(a, b, rho.rows());
  const std::size_t da = a.rows();
  const std::size_t db = b.rows();
  const auto n = static_cast<std::ptrdiff_t>(rho.rows());
  // Tr(rho O) = sum_{(x,y),(x',y')} rho[(x,y),(x',y')] a[x',x] b[y',y]
  std::vector<cplx> partial(rho.rows());
#pragma omp parallel for schedule(static) if (n >= kParallelRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::size_t x = static_cast<std::size_t>(i) / db;
    const std::size_t y = static_cast<std::size_t>(i) % db;
    cplx acc{};
    for (std::size_t xp = 0; xp < da; ++xp) {
      const cplx axx = a(xp, x);
      if (axx == cplx{}) continue;
      for (std::size_t yp = 0; yp < db; ++yp) acc += rho(i, xp * db + yp) * axx * b(yp, y);
    }
    partial[i] = acc;
  }
  return ordered_sum(partial);
}

}  // namespace kernels

namespace reference {

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  check_multiply(a, b);
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

std::vector<cplx> multiply(const CMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw DimensionError("multiply: vector length differs from matrix columns");
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

cplx quadratic_form(const CMatrix& m, std::span<const cplx> v) {
  require_square(m, "quadratic_form");
  const auto mv = multiply(m, v);
  cplx acc{};
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * mv[i];
  return acc;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) throw DimensionError("trace_product: shapes incompatible");
  cplx acc{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, i);
  return acc;
}

// The serial references form the full Kronecker product on purpose: they are
// the literal lifted-operator route the structured kernels must agree with.
cplx local_product_expectation(const CMatrix& a, const CMatrix& b, std::span<const cplx> psi) {
  check_local(a, b, psi.size());
  return quadratic_form(kron(a, b), psi);
}

cplx local_product_trace(const CMatrix& a, const CMatrix& b, const CMatrix& rho) {
  require_square(rho, "local_product_trace");
  check_local(a, b, rho.rows());
  return trace_product(rho, kron(a, b));
}

}  // namespace reference

}  // namespace pairbell
