#include "pairbell/fock.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "pairbell/errors.hpp"
#include "pairbell/kernels.hpp"

namespace pairbell {

void require_even_dim(std::size_t dim) {
  if (dim < 2 || dim % 2 != 0) {
    throw DimensionError(fmt::format("side dimension must be even and >= 2, got {}", dim));
  }
}

FockSpace::FockSpace(std::size_t dim_a, std::size_t dim_b) : dim_a_(dim_a), dim_b_(dim_b) {
  require_even_dim(dim_a);
  require_even_dim(dim_b);
}

const char* to_string(Side side) {
  switch (side) {
    case Side::A: return "A";
    case Side::B: return "B";
    case Side::Full: return "FULL";
  }
  return "?";
}

LinOp::LinOp(Side side, CMatrix matrix) : side_(side), matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) throw DimensionError("LinOp matrix must be square");
}

bool LinOp::is_hermitian(double tol) const { return max_abs_diff(matrix_, matrix_.adjoint()) <= tol; }

namespace {

void require_compatible(const LinOp& p, const LinOp& q) {
  if (p.side() != q.side() || p.dim() != q.dim()) {
    throw DimensionError(fmt::format("operator mismatch: side {} dim {} vs side {} dim {}", to_string(p.side()),
                                     p.dim(), to_string(q.side()), q.dim()));
  }
}

double real_part_checked(cplx value) {
  if (std::abs(value.imag()) > kHermitianTol) {
    throw ContractError(fmt::format("expectation has imaginary residue {:.3e}", value.imag()));
  }
  return value.real();
}

void require_hermitian_full(const LinOp& op, std::size_t total_dim) {
  if (op.side() != Side::Full) throw DimensionError("expectation needs a FULL-side operator");
  if (op.dim() != total_dim) throw DimensionError("expectation: operator and state dimensions differ");
  if (!op.is_hermitian()) throw ContractError("expectation of a non-Hermitian operator");
}

}  // namespace

LinOp compose(const LinOp& p, const LinOp& q) {
  require_compatible(p, q);
  return {p.side(), kernels::multiply(p.matrix(), q.matrix())};
}

LinOp commutator(const LinOp& p, const LinOp& q) {
  require_compatible(p, q);
  return {p.side(), kernels::multiply(p.matrix(), q.matrix()) - kernels::multiply(q.matrix(), p.matrix())};
}

StateVector::StateVector(FockSpace space, std::vector<cplx> amplitudes, double norm_deficit)
    : space_(space), amplitudes_(std::move(amplitudes)), norm_deficit_(norm_deficit) {
  if (amplitudes_.size() != space_.total_dim()) throw DimensionError("amplitude count differs from dim_a * dim_b");
  if (!(norm_deficit_ >= 0.0)) throw ContractError("norm deficit must be nonnegative");
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

StateVector operator+(const StateVector& s1, const StateVector& s2) {
  if (!(s1.space_ == s2.space_)) throw DimensionError("adding states from different spaces");
  std::vector<cplx> sum(s1.amplitudes_.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = s1.amplitudes_[i] + s2.amplitudes_[i];
  return {s1.space_, std::move(sum)};
}

StateVector operator*(cplx scale, const StateVector& s) {
  std::vector<cplx> out(s.amplitudes_.begin(), s.amplitudes_.end());
  for (auto& a : out) a *= scale;
  return {s.space_, std::move(out)};
}

DensityMatrix::DensityMatrix(FockSpace space, CMatrix matrix) : space_(space), matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() != space_.total_dim()) {
    throw DimensionError("density matrix side differs from dim_a * dim_b");
  }
  if (max_abs_diff(matrix_, matrix_.adjoint()) > kNormTol) throw ContractError("density matrix is not Hermitian");
  cplx trace{};
  for (std::size_t i = 0; i < matrix_.rows(); ++i) trace += matrix_(i, i);
  if (std::abs(trace - 1.0) > kNormTol) throw ContractError("density matrix trace differs from 1");
}

const FockSpace& space_of(const QuantumState& state) {
  return std::visit([](const auto& s) -> const FockSpace& { return s.space(); }, state);
}

double norm_deficit_of(const QuantumState& state) {
  if (const auto* pure = std::get_if<StateVector>(&state)) return pure->norm_deficit();
  return 0.0;
}

StateVector basis_state(const FockSpace& space, std::size_t x, std::size_t y) {
  if (x >= space.dim_a() || y >= space.dim_b()) {
    throw IndexError(fmt::format("basis index ({}, {}) outside {}x{} space", x, y, space.dim_a(), space.dim_b()));
  }
  std::vector<cplx> amps(space.total_dim());
  amps[space.index(x, y)] = 1.0;
  return {space, std::move(amps)};
}

LinOp lift(const LinOp& op, const FockSpace& space) {
  switch (op.side()) {
    case Side::A:
      if (op.dim() != space.dim_a()) throw DimensionError("lift: side-A operator dimension differs from dim_a");
      return {Side::Full, kernels::kron(op.matrix(), CMatrix::identity(space.dim_b()))};
    case Side::B:
      if (op.dim() != space.dim_b()) throw DimensionError("lift: side-B operator dimension differs from dim_b");
      return {Side::Full, kernels::kron(CMatrix::identity(space.dim_a()), op.matrix())};
    case Side::Full:
      break;
  }
  throw DimensionError("lift: operator is already FULL");
}

StateVector apply(const LinOp& op, const StateVector& s) {
  if (op.side() != Side::Full || op.dim() != s.space().total_dim()) {
    throw DimensionError("apply: operator does not act on the state's product space");
  }
  return {s.space(), kernels::multiply(op.matrix(), s.amplitudes()), s.norm_deficit()};
}

cplx inner(const StateVector& s1, const StateVector& s2) {
  if (!(s1.space() == s2.space())) throw DimensionError("inner: states live in different spaces");
  cplx acc{};
  auto a = s1.amplitudes();
  auto b = s2.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double expectation(const LinOp& op, const StateVector& state) {
  require_hermitian_full(op, state.space().total_dim());
  return real_part_checked(kernels::quadratic_form(op.matrix(), state.amplitudes()));
}

double expectation(const LinOp& op, const DensityMatrix& state) {
  require_hermitian_full(op, state.space().total_dim());
  return real_part_checked(kernels::trace_product(op.matrix(), state.matrix()));
}

double expectation(const LinOp& op, const QuantumState& state) {
  return std::visit([&](const auto& s) { return expectation(op, s); }, state);
}

}  // namespace pairbell
