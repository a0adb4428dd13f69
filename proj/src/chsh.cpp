#include "pairbell/chsh.hpp"

#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "pairbell/errors.hpp"
#include "pairbell/kernels.hpp"

namespace pairbell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double checked_real(cplx value) {
  if (std::abs(value.imag()) > kHermitianTol) {
    throw ContractError(fmt::format("correlator has imaginary residue {:.3e}", value.imag()));
  }
  return value.real();
}

std::array<double, 4> correlators_of(const CorrelatorFn& e, const AngleSet& a) {
  return {e(a.alpha1, a.beta1), e(a.alpha2, a.beta1), e(a.alpha1, a.beta2), e(a.alpha2, a.beta2)};
}

bool is_canonical(const StateSpec& spec, const std::optional<BellSetup>& setup) {
  return !setup || *setup == canonical_setup(spec);
}

}  // namespace

std::string method_name(Method method) { return method == Method::Matrix ? "matrix" : "closed_form"; }

Method method_from_name(const std::string& name) {
  if (name == "matrix") return Method::Matrix;
  if (name == "closed_form") return Method::ClosedForm;
  throw ParseError(fmt::format("unknown method '{}'", name));
}

BellSetup canonical_setup(const StateSpec& spec) {
  if (const auto* g = std::get_if<GenericPair>(&spec)) return {g->pair_a, g->pair_b};
  if (const auto* n = std::get_if<Noon>(&spec)) {
    const auto mode = static_cast<std::size_t>(n->n);
    return {{0, mode}, {0, mode}};
  }
  return {};
}

AngleSet canonical_angles(const StateSpec& spec) {
  return std::holds_alternative<TwoModeSqueezed>(spec) ? presets::paper_choice_sq() : presets::paper_choice();
}

bool is_violation(double chsh_value) { return std::abs(chsh_value) > 2.0 + kViolationMargin; }

ChshReport make_report(const std::array<double, 4>& e, const AngleSet& angles, Method method,
                       double truncation_error_bound) {
  ChshReport r;
  r.correlators = e;
  r.chsh_value = e[0] + e[1] + e[2] - e[3];
  r.angles = angles;
  r.method = method;
  r.violation = is_violation(r.chsh_value);
  r.tsirelson_gap = kTsirelsonBound - std::abs(r.chsh_value);
  r.truncation_error_bound = truncation_error_bound;
  return r;
}

double correlator_matrix(const QuantumState& state, const BellOpSpec& spec_a, const BellOpSpec& spec_b) {
  if (spec_a.side != Side::A || spec_b.side != Side::B) {
    throw ValidationError("correlator needs one side-A and one side-B operator");
  }
  const FockSpace& space = space_of(state);
  const LinOp a = bell_side_operator(space.dim_a(), spec_a);
  const LinOp b = bell_side_operator(space.dim_b(), spec_b);
  return std::visit(overloaded{
                        [&](const StateVector& s) {
                          return checked_real(
                              kernels::local_product_expectation(a.matrix(), b.matrix(), s.amplitudes()));
                        },
                        [&](const DensityMatrix& rho) {
                          return checked_real(kernels::local_product_trace(a.matrix(), b.matrix(), rho.matrix()));
                        },
                    },
                    state);
}

CorrelatorForm correlator_form(const StateSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const GenericPair&) { return CorrelatorForm{0.0, 1.0, false}; },
                        [](const Noon&) { return CorrelatorForm{0.0, 1.0, false}; },
                        [](const CoherentSuperposition& s) {
                          const double damp = std::exp(-std::norm(s.z));
                          return CorrelatorForm{0.0, damp / (1.0 + std::norm(s.z) * damp), false};
                        },
                        [](const TwoModeSqueezed& s) {
                          const double e2 = s.eta * s.eta;
                          return CorrelatorForm{1.0 - (1.0 - e2) * (1.0 + e2), 2.0 * s.eta * (1.0 - e2), true};
                        },
                        [](const Werner& s) { return CorrelatorForm{0.0, -s.w, false}; },
                    },
                    spec);
}

double correlator_closed_form(const StateSpec& spec, double alpha, double beta) {
  if (const auto* sq = std::get_if<TwoModeSqueezed>(&spec)) {
    validate(spec);
    const double e2 = sq->eta * sq->eta;
    return 1.0 + (1.0 - e2) * (2.0 * sq->eta * std::cos(alpha + beta) - 1.0 - e2);
  }
  const CorrelatorForm f = correlator_form(spec);
  return f.offset + f.amplitude * std::cos(alpha - beta);
}

double optimal_abs_chsh_closed_form(const StateSpec& spec) {
  const CorrelatorForm f = correlator_form(spec);
  return 2.0 * std::abs(f.offset) + kTsirelsonBound * std::abs(f.amplitude);
}

CorrelatorModel make_model(const StateSpec& spec, const FockSpace& space, Method method,
                           const std::optional<BellSetup>& setup) {
  validate(spec);
  if (method == Method::ClosedForm) {
    if (!is_canonical(spec, setup)) {
      throw ValidationError(fmt::format("no closed form for family {} with a non-canonical pair choice",
                                        family_name(family_of(spec))));
    }
    return {[spec](double a, double b) { return correlator_closed_form(spec, a, b); }, Method::ClosedForm, 0.0};
  }
  auto state = std::make_shared<const QuantumState>(build_state(spec, space));
  const BellSetup pairs = setup.value_or(canonical_setup(spec));
  const double tail = norm_deficit_of(*state);
  return {[state, pairs](double a, double b) {
            return correlator_matrix(*state, {Side::A, pairs.pair_a, a}, {Side::B, pairs.pair_b, b});
          },
          Method::Matrix, tail};
}

ChshReport evaluate(const CorrelatorModel& model, const AngleSet& angles) {
  return make_report(correlators_of(model.correlator, angles), angles, model.method,
                     model.method == Method::Matrix ? 8.0 * model.tail_probability : 0.0);
}

ChshReport chsh_matrix(const QuantumState& state, const BellSetup& setup, const AngleSet& angles) {
  const CorrelatorFn e = [&](double a, double b) {
    return correlator_matrix(state, {Side::A, setup.pair_a, a}, {Side::B, setup.pair_b, b});
  };
  return make_report(correlators_of(e, angles), angles, Method::Matrix, 8.0 * norm_deficit_of(state));
}

ChshReport chsh_closed_form(const StateSpec& spec, const AngleSet& angles) {
  const CorrelatorFn e = [&](double a, double b) { return correlator_closed_form(spec, a, b); };
  return make_report(correlators_of(e, angles), angles, Method::ClosedForm, 0.0);
}

ChshReport chsh(const StateSpec& spec, const FockSpace& space, const AngleSet& angles, Method method,
                const std::optional<BellSetup>& setup) {
  return evaluate(make_model(spec, space, method, setup), angles);
}

bool violation_window(const StateSpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const CoherentSuperposition& s) {
                          const double x = std::norm(s.z);
                          return std::exp(-x) / (1.0 + x * std::exp(-x)) > 1.0 / std::numbers::sqrt2;
                        },
                        [](const TwoModeSqueezed& s) { return s.eta > std::numbers::sqrt2 - 1.0 && s.eta < 1.0; },
                        [](const Werner& s) { return s.w > 1.0 / std::numbers::sqrt2; },
                        [](const auto&) -> bool {
                          throw ValidationError("violation window is defined for coherent, squeezed and werner");
                        },
                    },
                    spec);
}

}  // namespace pairbell
