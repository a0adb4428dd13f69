#include "pairbell/pseudospin.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pairbell/errors.hpp"

namespace pairbell {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_pair(std::size_t dim, PairIndex n) {
  if (2 * n.n + 1 >= dim) throw IndexError(fmt::format("pair n={} does not fit in dimension {}", n.n, dim));
}

// Adds the 2x2 block [[b00, b01], [b10, b11]] on modes (lo, hi) to m.
void add_block(CMatrix& m, std::size_t lo, std::size_t hi, cplx b00, cplx b01, cplx b10, cplx b11) {
  m(lo, lo) += b00;
  m(lo, hi) += b01;
  m(hi, lo) += b10;
  m(hi, hi) += b11;
}

void add_pair_spin(CMatrix& m, std::size_t n, Axis axis, cplx scale = 1.0) {
  const std::size_t lo = 2 * n;
  const std::size_t hi = lo + 1;
  switch (axis) {
    case Axis::X: add_block(m, lo, hi, 0.0, scale, scale, 0.0); break;
    case Axis::Y: add_block(m, lo, hi, 0.0, -kI * scale, kI * scale, 0.0); break;
    case Axis::Z: add_block(m, lo, hi, scale, 0.0, 0.0, -scale); break;
  }
}

}  // namespace

UnitVector::UnitVector(double ux, double uy, double uz) : ux_(ux), uy_(uy), uz_(uz) {
  const double norm2 = ux * ux + uy * uy + uz * uz;
  if (std::abs(norm2 - 1.0) > 1e-12) throw ContractError(fmt::format("direction has |u|^2 = {:.17g}", norm2));
}

UnitVector UnitVector::in_plane(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

LinOp pair_spin(std::size_t dim, PairIndex n, Axis axis, Side side) {
  require_pair(dim, n);
  CMatrix m(dim, dim);
  add_pair_spin(m, n.n, axis);
  return {side, std::move(m)};
}

LinOp total_spin(std::size_t dim, Axis axis, Side side) {
  require_even_dim(dim);
  CMatrix m(dim, dim);
  for (std::size_t n = 0; 2 * n + 1 < dim; ++n) add_pair_spin(m, n, axis);
  return {side, std::move(m)};
}

LinOp spin_dot(std::size_t dim, PairIndex n, const UnitVector& u, Side side) {
  require_pair(dim, n);
  CMatrix m(dim, dim);
  add_pair_spin(m, n.n, Axis::X, u.ux());
  add_pair_spin(m, n.n, Axis::Y, u.uy());
  add_pair_spin(m, n.n, Axis::Z, u.uz());
  return {side, std::move(m)};
}

LinOp rest_identity(std::size_t dim, ModePair pair, Side side) {
  if (pair.p == pair.q) throw IndexError("rest_identity: pair modes must differ");
  if (pair.p >= dim || pair.q >= dim) {
    throw IndexError(fmt::format("rest_identity: pair ({}, {}) outside dimension {}", pair.p, pair.q, dim));
  }
  CMatrix m = CMatrix::identity(dim);
  m(pair.p, pair.p) = 0.0;
  m(pair.q, pair.q) = 0.0;
  return {side, std::move(m)};
}

}  // namespace pairbell
