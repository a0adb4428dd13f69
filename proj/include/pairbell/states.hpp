#pragma once

// State families on truncated bipartite Fock spaces.
//
// Truncated pure states are not renormalized: the probability mass beyond the
// cutoff is recorded as StateVector::norm_deficit and equals tail_bound().
//
// The coherent amplitude is called z throughout (the angle names alpha/beta are
// reserved for the Bell operators).

#include <complex>
#include <string>
#include <variant>

#include "pairbell/fock.hpp"
#include "pairbell/pseudospin.hpp"

namespace pairbell {

// (|p, s> + |q, r>)/sqrt(2) for pair_a = (p, q), pair_b = (r, s).
struct GenericPair {
  ModePair pair_a{0, 1};
  ModePair pair_b{0, 1};
  bool operator==(const GenericPair&) const = default;
};

// (|N, 0> + |0, N>)/sqrt(2)
struct Noon {
  int n = 1;
  bool operator==(const Noon&) const = default;
};

// (|1>|z> + |z>|1>) / (sqrt(2) sqrt(1 + |z|^2 e^{-|z|^2}))
struct CoherentSuperposition {
  std::complex<double> z{};
  bool operator==(const CoherentSuperposition&) const = default;
};

// sqrt(1 - eta^2) sum_n eta^n |n, n>
struct TwoModeSqueezed {
  double eta = 0.5;
  bool operator==(const TwoModeSqueezed&) const = default;
};

// (1 - w)/4 I + w |singlet><singlet| on one qubit-like pair per side.
struct Werner {
  double w = 0.5;
  bool operator==(const Werner&) const = default;
};

using StateSpec = std::variant<GenericPair, Noon, CoherentSuperposition, TwoModeSqueezed, Werner>;

enum class Family { GenericPair, Noon, CoherentSuperposition, TwoModeSqueezed, Werner };

Family family_of(const StateSpec& spec);
// "generic_pair", "noon", "coherent_superposition", "two_mode_squeezed", "werner"
std::string family_name(Family family);
Family family_from_name(const std::string& name);

// Domain checks (eta in (0,1), w in (0,1], N >= 1, distinct pair modes).
// Throws RangeError / IndexError.
void validate(const StateSpec& spec);

struct TruncationBound {
  double tail_probability = 0.0;
};

StateVector generic_pair_state(const FockSpace& space, const GenericPair& spec);
StateVector noon_state(const FockSpace& space, int n);
StateVector coherent_superposition_state(const FockSpace& space, std::complex<double> z);
StateVector two_mode_squeezed_state(const FockSpace& space, double eta);
// 4x4 density matrix on the 2x2 space; the singlet is (|1,0> - |0,1>)/sqrt(2),
// i.e. |+> is mode 1 and |-> is mode 0.
DensityMatrix werner_state(double w);
// The same operator embedded in a larger space (zero outside the 2x2 block).
DensityMatrix werner_state(const FockSpace& space, double w);

QuantumState build_state(const StateSpec& spec, const FockSpace& space);

TruncationBound tail_bound(const StateSpec& spec, const FockSpace& space);

// sum_{n >= cutoff} e^{-mean} mean^n / n!, summed upward from the cutoff.
double poisson_upper_tail(double mean, std::size_t cutoff);

}  // namespace pairbell
