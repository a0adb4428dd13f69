// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "pairbell/bell_operators.hpp"
#include "pairbell/chsh.hpp"
#include "pairbell/optimizer.hpp"
#include "pairbell/pseudospin.hpp"
#include "test_support.hpp"

using namespace pairbell;
using pairbell::testing::Rng;
using pairbell::testing::uniform;
using pairbell::testing::uniform_index;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;
const double kTsirelson = 2.0 * kSqrt2;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome generic_pair() {
  const auto r = chsh(GenericPair{}, FockSpace(8, 8), presets::paper_choice(), Method::Matrix);
  const double err = std::abs(r.chsh_value - 2.8284271247461903);
  return {err <= 1e-12, fmt::format("chsh={:.17g} err={:.2e}", r.chsh_value, err)};
}

Outcome noon() {
  double worst = 0.0;
  for (int n : {1, 2, 3, 5}) {
    const auto r = chsh(Noon{n}, FockSpace(8, 8), presets::paper_choice(), Method::Matrix);
    worst = std::max(worst, std::abs(r.chsh_value - kTsirelson));
  }
  return {worst <= 1e-12, fmt::format("N in {{1,2,3,5}} max err={:.2e}", worst)};
}

Outcome coherent() {
  const double x_star = pairbell::testing::coherent_threshold_oracle();
  bool pass = std::abs(x_star - pairbell::testing::kCoherentThreshold) < 1e-12;
  double worst_excess = -1.0;
  const FockSpace space(24, 24);
  auto check = [&](double x) {
    const CoherentSuperposition spec{std::sqrt(x)};
    const auto r = chsh(spec, space, presets::paper_choice(), Method::Matrix);
    const double damp = std::exp(-x) / (1.0 + x * std::exp(-x));
    const double err = std::abs(r.chsh_value - damp * kTsirelson);
    const double tol = 8.0 * tail_bound(spec, space).tail_probability + 1e-9;
    worst_excess = std::max(worst_excess, err - tol);
    if (err > tol) pass = false;
    if (r.violation != (x < x_star)) pass = false;
  };
  for (double x : {0.05, 0.1, 0.197, 0.5, 1.0}) check(x);
  check(x_star * (1.0 - 1e-6));
  check(x_star * (1.0 + 1e-6));
  return {pass, fmt::format("x*={:.17g}, flag flips across x*, worst err - tol={:.2e}", x_star, worst_excess)};
}

Outcome squeezed_closed_form() {
  const FockSpace space(32, 32);
  double worst_excess = -1.0;
  bool pass = true;
  for (int i = 0; i < 50; ++i) {
    const double eta = 0.05 + 0.9 * (i + 1) / 51.0;
    const auto r = chsh(TwoModeSqueezed{eta}, space, presets::paper_choice_sq(), Method::Matrix);
    const double expected = 2.0 + 2.0 * (1.0 - eta * eta) * (2.0 * kSqrt2 * eta - 1.0 - eta * eta);
    const double err = std::abs(r.chsh_value - expected);
    const double tol = 8.0 * std::pow(eta, 64) + 1e-9;
    worst_excess = std::max(worst_excess, err - tol);
    if (err > tol) pass = false;
  }
  return {pass, fmt::format("50 eta values, worst err - tol={:.2e}", worst_excess)};
}

Outcome squeezed_window() {
  const double t = find_threshold(TwoModeSqueezed{0.5}, SweepParameter::Eta, 0.1, 0.6);
  bool pass = std::abs(t - (kSqrt2 - 1.0)) <= 1e-9;
  std::string values;
  for (double eta : {0.40, 0.41, 0.42, 0.99}) {
    const double formula = optimal_abs_chsh_closed_form(TwoModeSqueezed{eta});
    const double searched = optimize_angles(TwoModeSqueezed{eta}, FockSpace(2, 2), Method::ClosedForm).best_abs_chsh;
    const bool inside = eta > 0.415;
    for (double v : {formula, searched}) {
      if (inside ? !(v > 2.0) : !(v <= 2.0 + 1e-9)) pass = false;
    }
    values += fmt::format(" {}:{:.6f}", eta, searched);
  }
  return {pass, fmt::format("threshold={:.12f} (err {:.2e}), optimal |C|{}", t, std::abs(t - (kSqrt2 - 1.0)), values)};
}

Outcome squeezed_maximum() {
  const double eta = 1.0 / kSqrt2;
  const auto best = optimize_angles(TwoModeSqueezed{eta}, FockSpace(48, 48), Method::Matrix);
  bool pass = std::abs(best.best_abs_chsh - 2.5) <= 1e-8;

  SweepOptions opts;
  opts.parameter = SweepParameter::Eta;
  opts.from = 0.4;
  opts.to = 0.95;
  opts.steps = 551;  // step 0.001
  opts.optimize = true;
  opts.method = Method::ClosedForm;
  const auto rows = parameter_sweep(TwoModeSqueezed{0.5}, opts);
  double peak = 0.0, arg = 0.0;
  for (const auto& row : rows) {
    if (row.best_abs_chsh > peak) peak = row.best_abs_chsh, arg = row.parameter;
  }
  if (std::abs(arg - 0.7071) > 0.001) pass = false;
  return {pass, fmt::format("optimized |C|={:.12f} at 1/sqrt2, scan peak {:.10f} at eta={:.3f}", best.best_abs_chsh,
                            peak, arg)};
}

Outcome werner_line() {
  bool pass = true;
  double worst = 0.0;
  for (double w : {0.2, 0.5, 1.0 / kSqrt2, 0.8, 0.95}) {
    const auto r = optimize_angles(Werner{w}, FockSpace(2, 2), Method::Matrix);
    worst = std::max(worst, std::abs(r.best_abs_chsh - w * kTsirelson));
    if (r.report.violation != (w > 1.0 / kSqrt2 + 1e-12)) pass = false;
  }
  if (worst > 1e-9) pass = false;
  return {pass, fmt::format("5 w values, max err={:.2e}, violation iff w > 1/sqrt2", worst)};
}

Outcome algebra() {
  constexpr cplx k2i{0.0, 2.0};
  double worst = 0.0;
  double cross = 0.0;
  auto su2 = [&](const LinOp& x, const LinOp& y, const LinOp& z) {
    worst = std::max({worst, max_abs_diff(commutator(x, y).matrix(), k2i * z.matrix()),
                      max_abs_diff(commutator(y, z).matrix(), k2i * x.matrix()),
                      max_abs_diff(commutator(z, x).matrix(), k2i * y.matrix())});
  };
  for (std::size_t dim : {2u, 8u, 16u, 32u}) {
    std::vector<std::array<LinOp, 3>> spins;
    for (std::size_t n = 0; n < dim / 2; ++n) {
      spins.push_back({pair_spin(dim, {n}, Axis::X), pair_spin(dim, {n}, Axis::Y), pair_spin(dim, {n}, Axis::Z)});
      su2(spins[n][0], spins[n][1], spins[n][2]);
    }
    su2(total_spin(dim, Axis::X), total_spin(dim, Axis::Y), total_spin(dim, Axis::Z));
    for (std::size_t m = 0; m < spins.size(); ++m)
      for (std::size_t n = 0; n < spins.size(); ++n) {
        if (m == n) continue;
        for (const auto& a : spins[m])
          for (const auto& b : spins[n]) cross = std::max(cross, max_abs(commutator(a, b).matrix()));
      }
  }
  return {worst <= 1e-14 && cross == 0.0,
          fmt::format("dims {{2,8,16,32}}: su(2) residual={:.2e}, cross-pair={:.1e}", worst, cross)};
}

// The spec's side takes a dimension up to 32; the opposite side, which only
// enters the commutator check, stays small so the lifted products remain cheap.
Outcome dichotomy_suite() {
  Rng rng(20240901);
  double worst_dich = 0.0;
  double worst_comm = 0.0;
  bool pass = true;
  for (int i = 0; i < 500; ++i) {
    const std::size_t dim = pairbell::testing::random_even_dim(rng, 2, 32);
    const std::size_t p = uniform_index(rng, 0, dim - 1);
    std::size_t q = uniform_index(rng, 0, dim - 2);
    if (q >= p) ++q;
    const Side side = uniform_index(rng, 0, 1) ? Side::A : Side::B;
    const BellOpSpec spec{side, {p, q}, pairbell::testing::random_angle(rng)};
    const auto report = dichotomy_check(bell_side_operator(dim, spec));
    pass = pass && report.hermitian && report.squares_to_identity;
    worst_dich = std::max(worst_dich, report.max_residual);

    const std::size_t other = pairbell::testing::random_even_dim(rng, 2, 4);
    const FockSpace space = side == Side::A ? FockSpace(dim, other) : FockSpace(other, dim);
    const BellOpSpec partner{side == Side::A ? Side::B : Side::A, {0, 1}, pairbell::testing::random_angle(rng)};
    const LinOp lifted = bell_operator(space, spec);
    const LinOp lifted_partner = bell_operator(space, partner);
    worst_dich = std::max(worst_dich, dichotomy_check(lifted).max_residual);
    worst_comm = std::max(worst_comm, side == Side::A ? commuting_sides_check(lifted, lifted_partner)
                                                      : commuting_sides_check(lifted_partner, lifted));
  }
  pass = pass && worst_dich <= 1e-12 && worst_comm <= 1e-12;
  return {pass, fmt::format("500 specs: dichotomy residual={:.2e}, side commutator={:.2e}", worst_dich, worst_comm)};
}

Outcome oracle_equivalence() {
  Rng rng(77);
  double worst_excess = -1.0;
  int samples = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = pairbell::testing::random_even_dim(rng, 16, 32);
    const FockSpace space(dim, dim);
    StateSpec spec;
    switch (i % 5) {
      case 0: {
        const std::size_t p = uniform_index(rng, 0, dim - 1);
        std::size_t q = uniform_index(rng, 0, dim - 2);
        if (q >= p) ++q;
        const std::size_t r = uniform_index(rng, 0, dim - 1);
        std::size_t s = uniform_index(rng, 0, dim - 2);
        if (s >= r) ++s;
        spec = GenericPair{{p, q}, {r, s}};
        break;
      }
      case 1: spec = Noon{static_cast<int>(uniform_index(rng, 1, dim - 1))}; break;
      case 2: spec = CoherentSuperposition{std::polar(uniform(rng, 0.0, 2.0), uniform(rng, -kPi, kPi))}; break;
      case 3: spec = TwoModeSqueezed{uniform(rng, 0.01, 0.9)}; break;
      default: spec = Werner{uniform(rng, 0.01, 1.0)}; break;
    }
    const AngleSet angles{pairbell::testing::random_angle(rng), pairbell::testing::random_angle(rng),
                          pairbell::testing::random_angle(rng), pairbell::testing::random_angle(rng)};
    const auto mx = chsh(spec, space, angles, Method::Matrix);
    const auto cf = chsh(spec, space, angles, Method::ClosedForm);
    const double tol = 2.0 * tail_bound(spec, space).tail_probability + 1e-9;
    for (int k = 0; k < 4; ++k) {
      worst_excess = std::max(worst_excess, std::abs(mx.correlators[k] - cf.correlators[k]) - tol);
    }
    ++samples;
  }
  return {worst_excess <= 0.0, fmt::format("{} samples x 4 correlators, worst err - tol={:.2e}", samples, worst_excess)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"generic-pair maximal violation", generic_pair},
      {"noon maximal violation", noon},
      {"coherent damping law", coherent},
      {"squeezed closed form", squeezed_closed_form},
      {"squeezed violation window", squeezed_window},
      {"squeezed maximum", squeezed_maximum},
      {"werner line", werner_line},
      {"pseudospin algebra", algebra},
      {"dichotomy suite", dichotomy_suite},
      {"oracle equivalence", oracle_equivalence},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < 60.0;
  if (!in_time) ++failures;
  std::printf("%s    suite runtime: %.2f s (limit 60 s)\n", in_time ? "PASS" : "FAIL", seconds);
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
