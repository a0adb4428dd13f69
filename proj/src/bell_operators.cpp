#include "pairbell/bell_operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "pairbell/errors.hpp"
#include "pairbell/kernels.hpp"

namespace pairbell {

namespace presets {

AngleSet paper_choice() { return {0.0, std::numbers::pi / 2, std::numbers::pi / 4, -std::numbers::pi / 4}; }

AngleSet paper_choice_sq() { return {0.0, std::numbers::pi / 2, -std::numbers::pi / 4, std::numbers::pi / 4}; }

}  // namespace presets

LinOp bell_side_operator(std::size_t dim, const BellOpSpec& spec) {
  if (spec.side == Side::Full) throw ValidationError("Bell operator side must be A or B");
  const auto [p, q] = spec.pair;
  if (p == q || p >= dim || q >= dim) {
    throw IndexError(fmt::format("Bell operator pair ({}, {}) invalid for dimension {}", p, q, dim));
  }
  CMatrix m = rest_identity(dim, spec.pair, spec.side).matrix();
  const cplx phase = std::polar(1.0, spec.angle);
  m(q, p) = phase;
  m(p, q) = std::conj(phase);
  return {spec.side, std::move(m)};
}

LinOp bell_operator(const FockSpace& space, const BellOpSpec& spec) {
  const std::size_t dim = spec.side == Side::B ? space.dim_b() : space.dim_a();
  return lift(bell_side_operator(dim, spec), space);
}

DichotomyReport dichotomy_check(const LinOp& op) {
  const CMatrix& m = op.matrix();
  const double herm = max_abs_diff(m, m.adjoint());
  const double invol = max_abs_diff(kernels::multiply(m, m), CMatrix::identity(m.rows()));
  return {herm <= kDichotomyTol, invol <= kDichotomyTol, std::max(herm, invol)};
}

double commuting_sides_check(const LinOp& op_a, const LinOp& op_b) {
  if (op_a.side() != Side::Full || op_b.side() != Side::Full) {
    throw DimensionError("commuting_sides_check expects lifted (FULL) operators");
  }
  return max_abs(commutator(op_a, op_b).matrix());
}

}  // namespace pairbell
