#pragma once

// Maximization of |CHSH| over the four angles, parameter sweeps and
// violation thresholds.
//
// With three angles held fixed, the CHSH value is k + c1 cos(theta) +
// c2 sin(theta) in the remaining one, because every Bell operator is
// R + e^{i theta}|q><p| + e^{-i theta}|p><q|. Evaluating at theta = 0, pi/2, pi
// recovers (k, c1, c2), and the coordinate maximizer of |.| is
// atan2(c2, c1) or its antipode. The optimizer runs this exact coordinate
// ascent from the best point of a coarse grid over [0, 2 pi)^4.

#include <optional>
#include <string>
#include <vector>

#include "pairbell/chsh.hpp"

namespace pairbell {

struct OptimizerOptions {
  int grid_resolution = 8;  // points per angle, >= 4
  int max_sweeps = 200;
  double tolerance = 1e-12;  // stop once a full sweep improves |C| by less
};

struct OptimizationResult {
  AngleSet best_angles{};
  double best_abs_chsh = 0.0;
  int iterations = 0;  // coordinate-ascent sweeps performed
  bool converged = false;
  ChshReport report{};  // evaluation at best_angles
  std::vector<double> trace;  // |C| after the grid and after every sweep
};

OptimizationResult optimize_angles(const CorrelatorModel& model, const OptimizerOptions& options = {});
OptimizationResult optimize_angles(const StateSpec& spec, const FockSpace& space, Method method,
                                   const OptimizerOptions& options = {});

enum class SweepParameter {
  Eta,              // two_mode_squeezed
  W,                // werner
  ZModulus,         // coherent_superposition, |z|
  ZModulusSquared,  // coherent_superposition, |z|^2
};

std::string parameter_name(SweepParameter parameter);
SweepParameter parameter_from_name(const std::string& name);

// Copy of `templ` with its family parameter replaced (the phase of a complex z
// is kept). Throws ValidationError if the parameter does not belong to the
// family and RangeError if the value is outside the family's domain.
StateSpec with_parameter(const StateSpec& templ, SweepParameter parameter, double value);

// The scalar reported in the CSV "param" column: N, |z|, eta, w; NaN for
// GenericPair.
double natural_parameter(const StateSpec& spec);

struct SweepOptions {
  SweepParameter parameter = SweepParameter::Eta;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  bool optimize = false;
  Method method = Method::ClosedForm;
  FockSpace space{16, 16};
  std::optional<AngleSet> angles;  // canonical_angles(family) when empty
  OptimizerOptions optimizer{};
};

struct SweepRow {
  double parameter = 0.0;
  double best_abs_chsh = 0.0;
  bool violation = false;
  AngleSet best_angles{};
  ChshReport report{};
};

std::vector<SweepRow> parameter_sweep(const StateSpec& templ, const SweepOptions& options);

// Bisection for the parameter where the closed-form optimal |CHSH| crosses 2.
double find_threshold(const StateSpec& templ, SweepParameter parameter, double lo, double hi,
                      double tolerance = 1e-10);

}  // namespace pairbell
