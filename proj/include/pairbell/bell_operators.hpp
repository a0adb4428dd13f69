#pragma once

// Dichotomic Bell operators acting on a single mode pair.
//
// For side A with pair (p, q) and angle theta the one-side matrix is
//
//   e^{i theta} |q><p| + e^{-i theta} |p><q| + sum_{m not in {p,q}} |m><m|
//
// i.e. A|p> = e^{i theta}|q>, A|q> = e^{-i theta}|p>, identity elsewhere. For
// (p, q) = (0, 1) this equals spin_dot(u = (cos theta, sin theta, 0)) + R.
// Side B is built the same way on the second tensor factor.

#include "pairbell/fock.hpp"
#include "pairbell/pseudospin.hpp"

namespace pairbell {

struct BellOpSpec {
  Side side = Side::A;
  ModePair pair{};
  double angle = 0.0;
};

// The four CHSH angles: alpha1, alpha2 for side A, beta1, beta2 for side B.
struct AngleSet {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  bool operator==(const AngleSet&) const = default;
};

namespace presets {
// (0, pi/2, pi/4, -pi/4): maximal for correlators depending on alpha - beta.
AngleSet paper_choice();
// (0, pi/2, -pi/4, pi/4): maximal for correlators depending on alpha + beta.
AngleSet paper_choice_sq();
}  // namespace presets

// One-side matrix (side A or B, as given by spec.side), not lifted.
LinOp bell_side_operator(std::size_t dim, const BellOpSpec& spec);
// bell_side_operator lifted to the full product space.
LinOp bell_operator(const FockSpace& space, const BellOpSpec& spec);

struct DichotomyReport {
  bool hermitian = false;
  bool squares_to_identity = false;
  double max_residual = 0.0;
};

inline constexpr double kDichotomyTol = 1e-12;

DichotomyReport dichotomy_check(const LinOp& op);

// max-norm of [opA, opB]; both must be FULL operators on the same space.
double commuting_sides_check(const LinOp& op_a, const LinOp& op_b);

}  // namespace pairbell
