#include "pairbell/optimizer.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "parallel.hpp"
#include "pairbell/errors.hpp"

namespace pairbell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSeedTieTol = 1e-12;
// Coordinate lines whose cosine amplitude is below this are treated as flat.
constexpr double kFlatTol = 1e-12;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

// Angles as (alpha1, alpha2, beta1, beta2).
using Coords = std::array<double, 4>;

AngleSet to_angles(const Coords& c) { return {c[0], c[1], c[2], c[3]}; }

double chsh_value(const CorrelatorFn& e, const Coords& c) {
  return e(c[0], c[2]) + e(c[1], c[2]) + e(c[0], c[3]) - e(c[1], c[3]);
}

struct Seed {
  Coords coords{};
  double abs_chsh = -1.0;
};

Seed grid_seed(const CorrelatorFn& e, int resolution) {
  const auto n = static_cast<std::size_t>(resolution);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);

  // A correlator only depends on one alpha and one beta, so the n^4 grid
  // needs just n^2 distinct evaluations.
  std::vector<double> table(n * n);
  detail::parallel_for(n * n, [&](std::size_t cell) { table[cell] = e(grid[cell / n], grid[cell % n]); });
  auto at = [&](std::size_t ia, std::size_t ib) { return table[ia * n + ib]; };

  // Lexicographic scan; a later tuple replaces the incumbent only when it is
  // better by more than kSeedTieTol.
  Seed best;
  for (std::size_t a1 = 0; a1 < n; ++a1)
    for (std::size_t a2 = 0; a2 < n; ++a2)
      for (std::size_t b1 = 0; b1 < n; ++b1)
        for (std::size_t b2 = 0; b2 < n; ++b2) {
          const double v = std::abs(at(a1, b1) + at(a2, b1) + at(a1, b2) - at(a2, b2));
          if (v > best.abs_chsh + kSeedTieTol) best = {{grid[a1], grid[a2], grid[b1], grid[b2]}, v};
        }
  return best;
}

}  // namespace

OptimizationResult optimize_angles(const CorrelatorModel& model, const OptimizerOptions& options) {
  if (options.grid_resolution < 4) {
    throw ValidationError(fmt::format("grid resolution must be >= 4, got {}", options.grid_resolution));
  }
  const CorrelatorFn& e = model.correlator;
  Seed seed = grid_seed(e, options.grid_resolution);
  Coords cur = seed.coords;
  double best = std::abs(chsh_value(e, cur));

  OptimizationResult result;
  result.trace.push_back(best);
  // At a point with alpha1 = alpha2 or beta1 = beta2 some coordinates leave
  // |C| exactly unchanged and the ascent stalls there. On a stall, one flat
  // coordinate is turned by pi/2 (which keeps |C|) and the sweeps resume; if
  // that yields nothing the pre-kick point is restored.
  Coords stalled_at{};
  double kick_value = 0.0;
  bool kick_pending = false;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    const double before = best;
    int flat = -1;
    for (std::size_t c = 0; c < 4; ++c) {
      Coords probe = cur;
      auto value_at = [&](double theta) {
        probe[c] = theta;
        return chsh_value(e, probe);
      };
      const double f0 = value_at(0.0);
      const double f_half = value_at(std::numbers::pi / 2);
      const double f_pi = value_at(std::numbers::pi);
      const double k = 0.5 * (f0 + f_pi);
      const double c1 = 0.5 * (f0 - f_pi);
      const double c2 = f_half - k;
      const double amp = std::hypot(c1, c2);
      if (amp <= kFlatTol) {
        if (flat < 0) flat = static_cast<int>(c);
        continue;
      }
      double theta = std::atan2(c2, c1);
      if (std::abs(k - amp) > std::abs(k + amp)) theta += std::numbers::pi;
      theta = wrap_angle(theta);

      const double candidate = std::abs(value_at(theta));
      // Accepting only improvements keeps the objective nondecreasing even
      // when the closed-form maximizer is off by rounding.
      if (candidate > best) {
        cur[c] = theta;
        best = candidate;
      }
    }
    result.iterations = sweep + 1;
    result.trace.push_back(best);
    if (best - before >= options.tolerance) {
      kick_pending = false;
      continue;
    }
    if (kick_pending) {
      if (best <= kick_value) cur = stalled_at;
    } else if (flat >= 0) {
      stalled_at = cur;
      kick_value = best;
      kick_pending = true;
      cur[flat] = wrap_angle(cur[flat] + std::numbers::pi / 2);
      continue;
    }
    result.converged = true;
    break;
  }

  result.best_angles = to_angles(cur);
  result.report = evaluate(model, result.best_angles);
  result.best_abs_chsh = std::abs(result.report.chsh_value);
  return result;
}

OptimizationResult optimize_angles(const StateSpec& spec, const FockSpace& space, Method method,
                                   const OptimizerOptions& options) {
  return optimize_angles(make_model(spec, space, method), options);
}

std::string parameter_name(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::Eta: return "eta";
    case SweepParameter::W: return "w";
    case SweepParameter::ZModulus: return "z";
    case SweepParameter::ZModulusSquared: return "z2";
  }
  return "?";
}

SweepParameter parameter_from_name(const std::string& name) {
  for (auto p : {SweepParameter::Eta, SweepParameter::W, SweepParameter::ZModulus, SweepParameter::ZModulusSquared}) {
    if (parameter_name(p) == name) return p;
  }
  throw ParseError(fmt::format("unknown sweep parameter '{}' (expected eta, w, z or z2)", name));
}

StateSpec with_parameter(const StateSpec& templ, SweepParameter parameter, double value) {
  StateSpec out = templ;
  switch (parameter) {
    case SweepParameter::Eta:
      if (auto* s = std::get_if<TwoModeSqueezed>(&out)) {
        s->eta = value;
        break;
      }
      throw ValidationError("parameter eta needs a two_mode_squeezed spec");
    case SweepParameter::W:
      if (auto* s = std::get_if<Werner>(&out)) {
        s->w = value;
        break;
      }
      throw ValidationError("parameter w needs a werner spec");
    case SweepParameter::ZModulus:
    case SweepParameter::ZModulusSquared:
      if (auto* s = std::get_if<CoherentSuperposition>(&out)) {
        if (!(value >= 0.0)) throw RangeError(fmt::format("|z| parameter must be >= 0, got {}", value));
        const double modulus = parameter == SweepParameter::ZModulus ? value : std::sqrt(value);
        s->z = std::polar(modulus, std::arg(s->z));
        break;
      }
      throw ValidationError("parameters z and z2 need a coherent_superposition spec");
  }
  validate(out);
  return out;
}

double natural_parameter(const StateSpec& spec) {
  if (const auto* s = std::get_if<Noon>(&spec)) return s->n;
  if (const auto* s = std::get_if<CoherentSuperposition>(&spec)) return std::abs(s->z);
  if (const auto* s = std::get_if<TwoModeSqueezed>(&spec)) return s->eta;
  if (const auto* s = std::get_if<Werner>(&spec)) return s->w;
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<SweepRow> parameter_sweep(const StateSpec& templ, const SweepOptions& options) {
  if (options.steps < 2) throw ValidationError(fmt::format("sweep needs at least 2 steps, got {}", options.steps));
  const auto steps = static_cast<std::size_t>(options.steps);
  std::vector<double> params(steps);
  std::vector<StateSpec> specs;
  specs.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    params[i] = i + 1 == steps ? options.to : options.from + t * (options.to - options.from);
    specs.push_back(with_parameter(templ, options.parameter, params[i]));
  }

  std::vector<SweepRow> rows(steps);
  detail::parallel_for(steps, [&](std::size_t i) {
    const StateSpec& spec = specs[i];
    const CorrelatorModel model = make_model(spec, options.space, options.method);
    SweepRow row;
    row.parameter = params[i];
    if (options.optimize) {
      const OptimizationResult best = optimize_angles(model, options.optimizer);
      row.report = best.report;
    } else {
      row.report = evaluate(model, options.angles.value_or(canonical_angles(spec)));
    }
    row.best_abs_chsh = std::abs(row.report.chsh_value);
    row.violation = row.report.violation;
    row.best_angles = row.report.angles;
    rows[i] = row;
  });
  return rows;
}

double find_threshold(const StateSpec& templ, SweepParameter parameter, double lo, double hi, double tolerance) {
  if (!(lo < hi)) throw ValidationError("threshold search needs lo < hi");
  if (!(tolerance > 0.0)) throw ValidationError("threshold tolerance must be positive");
  auto excess = [&](double p) { return optimal_abs_chsh_closed_form(with_parameter(templ, parameter, p)) - 2.0; };
  double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw BracketError(fmt::format("optimal |CHSH| - 2 does not change sign on [{}, {}] ({:.6g}, {:.6g})", lo, hi,
                                   f_lo, f_hi));
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = excess(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace pairbell
