#pragma once

// Truncated bipartite Fock spaces H_a ⊗ H_b, operators on one side or on the
// product, pure and mixed states.
//
// Product basis index of |x, y> is x * dim_b + y (side b fastest). Every module,
// and the CSV/JSON outputs, use this ordering.

#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "pairbell/matrix.hpp"

namespace pairbell {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

// Retained modes |0>..|dim-1> per side. Both dimensions must be even and at
// least 2, so every mode belongs to a complete pair (|2n>, |2n+1>).
class FockSpace {
 public:
  FockSpace(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t total_dim() const { return dim_a_ * dim_b_; }
  std::size_t index(std::size_t x, std::size_t y) const { return x * dim_b_ + y; }

  bool operator==(const FockSpace&) const = default;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
};

void require_even_dim(std::size_t dim);

enum class Side { A, B, Full };

const char* to_string(Side side);

// Square complex operator tagged with the space it acts on.
class LinOp {
 public:
  LinOp(Side side, CMatrix matrix);

  Side side() const { return side_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

  LinOp adjoint() const { return {side_, matrix_.adjoint()}; }
  bool is_hermitian(double tol = kHermitianTol) const;

 private:
  Side side_;
  CMatrix matrix_;
};

LinOp compose(const LinOp& p, const LinOp& q);     // p q
LinOp commutator(const LinOp& p, const LinOp& q);  // p q - q p

// Pure state (or, as the result of apply(), an arbitrary ket). For states
// built by this library ||amplitudes||^2 + norm_deficit == 1.
class StateVector {
 public:
  StateVector(FockSpace space, std::vector<cplx> amplitudes, double norm_deficit = 0.0);

  const FockSpace& space() const { return space_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx amplitude(std::size_t x, std::size_t y) const { return amplitudes_[space_.index(x, y)]; }
  double norm_deficit() const { return norm_deficit_; }

  double norm_squared() const;
  // | ||amplitudes||^2 + norm_deficit - 1 |
  double normalization_residual() const { return std::abs(norm_squared() + norm_deficit_ - 1.0); }

  friend StateVector operator+(const StateVector& s1, const StateVector& s2);
  friend StateVector operator*(cplx scale, const StateVector& s);

 private:
  FockSpace space_;
  std::vector<cplx> amplitudes_;
  double norm_deficit_;
};

// Hermitian, unit-trace, positive semidefinite operator on the product space.
// The constructor checks Hermiticity and trace; positivity is checked by the
// state builders that know the spectrum.
class DensityMatrix {
 public:
  DensityMatrix(FockSpace space, CMatrix matrix);

  const FockSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  FockSpace space_;
  CMatrix matrix_;
};

using QuantumState = std::variant<StateVector, DensityMatrix>;

const FockSpace& space_of(const QuantumState& state);
// Truncation deficit of the state (always 0 for density matrices).
double norm_deficit_of(const QuantumState& state);

StateVector basis_state(const FockSpace& space, std::size_t x, std::size_t y);

// op ⊗ I for side A, I ⊗ op for side B.
LinOp lift(const LinOp& op, const FockSpace& space);

StateVector apply(const LinOp& op, const StateVector& s);

// <s1|s2>, conjugate-linear in s1.
cplx inner(const StateVector& s1, const StateVector& s2);

// <psi|op|psi> or Tr(op rho). op must be Hermitian to kHermitianTol; an
// imaginary residue above the same tolerance is reported as ContractError.
double expectation(const LinOp& op, const StateVector& state);
double expectation(const LinOp& op, const DensityMatrix& state);
double expectation(const LinOp& op, const QuantumState& state);

}  // namespace pairbell
