#include "pairbell/states.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "pairbell/errors.hpp"

namespace pairbell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_pair_in(ModePair pair, std::size_t dim, const char* side) {
  if (pair.p == pair.q) throw IndexError(fmt::format("pair on side {} repeats mode {}", side, pair.p));
  if (pair.p >= dim || pair.q >= dim) {
    throw IndexError(fmt::format("pair ({}, {}) on side {} outside dimension {}", pair.p, pair.q, side, dim));
  }
}

// e^{-|z|^2/2} z^n / sqrt(n!)
cplx coherent_coefficient(cplx z, std::size_t n) {
  const double r = std::abs(z);
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const double log_mag = -0.5 * r * r + static_cast<double>(n) * std::log(r) - 0.5 * std::lgamma(n + 1.0);
  return std::polar(std::exp(log_mag), static_cast<double>(n) * std::arg(z));
}

// |<1|z>|^2 = |z|^2 e^{-|z|^2}
double one_photon_weight(cplx z) {
  const double x = std::norm(z);
  return x * std::exp(-x);
}

}  // namespace

Family family_of(const StateSpec& spec) { return static_cast<Family>(spec.index()); }

std::string family_name(Family family) {
  switch (family) {
    case Family::GenericPair: return "generic_pair";
    case Family::Noon: return "noon";
    case Family::CoherentSuperposition: return "coherent_superposition";
    case Family::TwoModeSqueezed: return "two_mode_squeezed";
    case Family::Werner: return "werner";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (auto f : {Family::GenericPair, Family::Noon, Family::CoherentSuperposition, Family::TwoModeSqueezed,
                 Family::Werner}) {
    if (family_name(f) == name) return f;
  }
  throw ParseError(fmt::format("unknown state family '{}'", name));
}

void validate(const StateSpec& spec) {
  std::visit(overloaded{
                 [](const GenericPair& g) {
                   if (g.pair_a.p == g.pair_a.q || g.pair_b.p == g.pair_b.q) {
                     throw IndexError("generic_pair modes must be distinct on each side");
                   }
                 },
                 [](const Noon& s) {
                   if (s.n < 1) throw RangeError(fmt::format("noon requires N >= 1, got {}", s.n));
                 },
                 [](const CoherentSuperposition& s) {
                   if (!std::isfinite(s.z.real()) || !std::isfinite(s.z.imag())) {
                     throw RangeError("coherent amplitude must be finite");
                   }
                 },
                 [](const TwoModeSqueezed& s) {
                   if (!(s.eta > 0.0 && s.eta < 1.0)) {
                     throw RangeError(fmt::format("two_mode_squeezed requires 0 < eta < 1, got {}", s.eta));
                   }
                 },
                 [](const Werner& s) {
                   if (!(s.w > 0.0 && s.w <= 1.0)) {
                     throw RangeError(fmt::format("werner requires 0 < w <= 1, got {}", s.w));
                   }
                 },
             },
             spec);
}

double poisson_upper_tail(double mean, std::size_t cutoff) {
  if (cutoff == 0) return 1.0;
  if (mean <= 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double sum = 0.0;
  for (std::size_t n = cutoff;; ++n) {
    const double term = std::exp(-mean + static_cast<double>(n) * log_mean - std::lgamma(n + 1.0));
    sum += term;
    if (static_cast<double>(n) > mean && term <= sum * std::numeric_limits<double>::epsilon() * 1e-3) break;
    if (term == 0.0 && static_cast<double>(n) > mean) break;
  }
  return sum;
}

StateVector generic_pair_state(const FockSpace& space, const GenericPair& spec) {
  require_pair_in(spec.pair_a, space.dim_a(), "a");
  require_pair_in(spec.pair_b, space.dim_b(), "b");
  std::vector<cplx> amps(space.total_dim());
  const double h = 1.0 / std::sqrt(2.0);
  // eta_a = |p>, chi_a = |q>, eta_b = |r>, chi_b = |s>
  amps[space.index(spec.pair_a.p, spec.pair_b.q)] += h;
  amps[space.index(spec.pair_a.q, spec.pair_b.p)] += h;
  return {space, std::move(amps)};
}

StateVector noon_state(const FockSpace& space, int n) {
  if (n < 1) throw RangeError(fmt::format("noon requires N >= 1, got {}", n));
  const auto un = static_cast<std::size_t>(n);
  if (un >= space.dim_a() || un >= space.dim_b()) {
    throw RangeError(fmt::format("N = {} exceeds the {}x{} cutoff", n, space.dim_a(), space.dim_b()));
  }
  std::vector<cplx> amps(space.total_dim());
  const double h = 1.0 / std::sqrt(2.0);
  amps[space.index(un, 0)] = h;
  amps[space.index(0, un)] = h;
  return {space, std::move(amps)};
}

StateVector coherent_superposition_state(const FockSpace& space, std::complex<double> z) {
  validate(CoherentSuperposition{z});
  const double norm = 1.0 / (std::sqrt(2.0) * std::sqrt(1.0 + one_photon_weight(z)));
  std::vector<cplx> ca(space.dim_a());
  std::vector<cplx> cb(space.dim_b());
  for (std::size_t n = 0; n < ca.size(); ++n) ca[n] = coherent_coefficient(z, n);
  for (std::size_t n = 0; n < cb.size(); ++n) cb[n] = coherent_coefficient(z, n);

  std::vector<cplx> amps(space.total_dim());
  // |1_a>|z_b>
  for (std::size_t y = 0; y < space.dim_b(); ++y) amps[space.index(1, y)] += norm * cb[y];
  // |z_a>|1_b>
  for (std::size_t x = 0; x < space.dim_a(); ++x) amps[space.index(x, 1)] += norm * ca[x];
  return {space, std::move(amps), tail_bound(CoherentSuperposition{z}, space).tail_probability};
}

StateVector two_mode_squeezed_state(const FockSpace& space, double eta) {
  validate(TwoModeSqueezed{eta});
  if (space.dim_a() != space.dim_b()) throw DimensionError("two_mode_squeezed requires dim_a == dim_b");
  std::vector<cplx> amps(space.total_dim());
  const double scale = std::sqrt(1.0 - eta * eta);
  double power = 1.0;
  for (std::size_t n = 0; n < space.dim_a(); ++n) {
    amps[space.index(n, n)] = scale * power;
    power *= eta;
  }
  return {space, std::move(amps), tail_bound(TwoModeSqueezed{eta}, space).tail_probability};
}

DensityMatrix werner_state(double w) { return werner_state(FockSpace(2, 2), w); }

DensityMatrix werner_state(const FockSpace& space, double w) {
  validate(Werner{w});
  CMatrix rho(space.total_dim(), space.total_dim());
  const double noise = (1.0 - w) / 4.0;
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) rho(space.index(x, y), space.index(x, y)) += noise;
  }
  const std::size_t plus_minus = space.index(1, 0);
  const std::size_t minus_plus = space.index(0, 1);
  // w |s><s| with s = (|1,0> - |0,1>)/sqrt(2)
  rho(plus_minus, plus_minus) += w / 2.0;
  rho(minus_plus, minus_plus) += w / 2.0;
  rho(plus_minus, minus_plus) -= w / 2.0;
  rho(minus_plus, plus_minus) -= w / 2.0;
  return {space, std::move(rho)};
}

QuantumState build_state(const StateSpec& spec, const FockSpace& space) {
  validate(spec);
  return std::visit(overloaded{
                        [&](const GenericPair& s) -> QuantumState { return generic_pair_state(space, s); },
                        [&](const Noon& s) -> QuantumState { return noon_state(space, s.n); },
                        [&](const CoherentSuperposition& s) -> QuantumState {
                          return coherent_superposition_state(space, s.z);
                        },
                        [&](const TwoModeSqueezed& s) -> QuantumState {
                          return two_mode_squeezed_state(space, s.eta);
                        },
                        [&](const Werner& s) -> QuantumState { return werner_state(space, s.w); },
                    },
                    spec);
}

TruncationBound tail_bound(const StateSpec& spec, const FockSpace& space) {
  return std::visit(overloaded{
                        [](const GenericPair&) { return TruncationBound{0.0}; },
                        [](const Noon&) { return TruncationBound{0.0}; },
                        [](const Werner&) { return TruncationBound{0.0}; },
                        [&](const CoherentSuperposition& s) {
                          // ||psi||^2 restricted to the cutoff is
                          // N^2 (P_a + P_b + 2|c_1|^2) with P the Poisson mass
                          // kept; the full value is N^2 (2 + 2|c_1|^2).
                          const double x = std::norm(s.z);
                          const double n2 = 1.0 / (2.0 * (1.0 + one_photon_weight(s.z)));
                          return TruncationBound{
                              n2 * (poisson_upper_tail(x, space.dim_a()) + poisson_upper_tail(x, space.dim_b()))};
                        },
                        [&](const TwoModeSqueezed& s) {
                          // (1 - eta^2) sum_{n >= d} eta^{2n} = eta^{2d}
                          return TruncationBound{std::pow(s.eta, 2.0 * static_cast<double>(space.dim_a()))};
                        },
                    },
                    spec);
}

}  // namespace pairbell
