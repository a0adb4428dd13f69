#pragma once

// Correlators <A_i B_k> and the CHSH combination
//
//   C = E(a1,b1) + E(a2,b1) + E(a1,b2) - E(a2,b2)
//
// evaluated two independent ways: on the truncated matrices (Method::Matrix)
// and from the per-family closed forms (Method::ClosedForm).

#include <array>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

#include "pairbell/bell_operators.hpp"
#include "pairbell/states.hpp"

namespace pairbell {

inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;
// |C| must exceed 2 by more than this to count as a violation, so that
// boundary parameters (w = 1/sqrt(2) exactly) are not flagged by rounding.
inline constexpr double kViolationMargin = 1e-12;

enum class Method { Matrix, ClosedForm };

std::string method_name(Method method);
Method method_from_name(const std::string& name);

// Mode pairs the A and B operators act on.
struct BellSetup {
  ModePair pair_a{0, 1};
  ModePair pair_b{0, 1};
  bool operator==(const BellSetup&) const = default;
};

// Pair choice under which each family's closed form holds: the spec's own
// pairs for GenericPair, (0, N) for Noon, (0, 1) otherwise.
BellSetup canonical_setup(const StateSpec& spec);

// Angle preset at which each family reaches its optimum: paper_choice_sq for
// TwoModeSqueezed, paper_choice for the rest.
AngleSet canonical_angles(const StateSpec& spec);

struct ChshReport {
  // E(a1,b1), E(a2,b1), E(a1,b2), E(a2,b2)
  std::array<double, 4> correlators{};
  double chsh_value = 0.0;
  AngleSet angles{};
  Method method = Method::Matrix;
  bool violation = false;
  double tsirelson_gap = 0.0;
  double truncation_error_bound = 0.0;
};

ChshReport make_report(const std::array<double, 4>& correlators, const AngleSet& angles, Method method,
                       double truncation_error_bound);

bool is_violation(double chsh_value);

// Expectation of bell_operator(spec_a) bell_operator(spec_b). spec_a must be a
// side-A spec and spec_b a side-B spec.
double correlator_matrix(const QuantumState& state, const BellOpSpec& spec_a, const BellOpSpec& spec_b);

// Every closed-form correlator is offset + amplitude * cos(alpha -/+ beta).
struct CorrelatorForm {
  double offset = 0.0;
  double amplitude = 1.0;
  bool sum_type = false;  // cos(alpha + beta) instead of cos(alpha - beta)
};

CorrelatorForm correlator_form(const StateSpec& spec);
double correlator_closed_form(const StateSpec& spec, double alpha, double beta);

// max over angles of |C| from the closed form: 2|offset| + 2 sqrt(2) |amplitude|.
double optimal_abs_chsh_closed_form(const StateSpec& spec);

// Pure-state matrix path: truncation_error_bound = 8 * tail.
ChshReport chsh_matrix(const QuantumState& state, const BellSetup& setup, const AngleSet& angles);
ChshReport chsh_closed_form(const StateSpec& spec, const AngleSet& angles);

// Builds the state when needed. method ClosedForm rejects a non-canonical
// setup with ValidationError.
ChshReport chsh(const StateSpec& spec, const FockSpace& space, const AngleSet& angles, Method method,
                const std::optional<BellSetup>& setup = std::nullopt);

// E(alpha, beta) for a fixed state and pair choice.
using CorrelatorFn = std::function<double(double alpha, double beta)>;

struct CorrelatorModel {
  CorrelatorFn correlator;
  Method method = Method::Matrix;
  double tail_probability = 0.0;  // zero for ClosedForm
};

CorrelatorModel make_model(const StateSpec& spec, const FockSpace& space, Method method,
                           const std::optional<BellSetup>& setup = std::nullopt);

ChshReport evaluate(const CorrelatorModel& model, const AngleSet& angles);

// Whether the family's optimal CHSH exceeds 2 at the spec's parameter.
// Defined for CoherentSuperposition, TwoModeSqueezed and Werner.
bool violation_window(const StateSpec& spec);

}  // namespace pairbell
