#pragma once

// Pseudospin operators built by pairing Fock modes (|2n>, |2n+1>):
//
//   s_x^(n) = |2n+1><2n| + |2n><2n+1|
//   s_y^(n) = i (|2n+1><2n| - |2n><2n+1|)
//   s_z^(n) = |2n><2n| - |2n+1><2n+1|
//
// The sign of s_z is the one for which each block obeys the Pauli algebra
// [s_x, s_y] = 2i s_z (and cyclic) with s_x, s_y as above; the opposite sign
// gives [s_x, s_y] = -2i s_z. The truncated totals sum over complete pairs only.

#include <cstddef>

#include "pairbell/fock.hpp"

namespace pairbell {

enum class Axis { X, Y, Z };

struct PairIndex {
  std::size_t n = 0;
};

// Two distinct modes of one side. The canonical pseudospin pair n is
// {2n, 2n + 1}; the Bell construction also accepts arbitrary pairs.
struct ModePair {
  std::size_t p = 0;
  std::size_t q = 1;

  bool operator==(const ModePair&) const = default;
};

class UnitVector {
 public:
  // Throws ContractError unless ux^2 + uy^2 + uz^2 = 1 within 1e-12.
  UnitVector(double ux, double uy, double uz);

  static UnitVector in_plane(double angle);

  double ux() const { return ux_; }
  double uy() const { return uy_; }
  double uz() const { return uz_; }

 private:
  double ux_, uy_, uz_;
};

LinOp pair_spin(std::size_t dim, PairIndex n, Axis axis, Side side = Side::A);
LinOp total_spin(std::size_t dim, Axis axis, Side side = Side::A);
// u · s^(n)
LinOp spin_dot(std::size_t dim, PairIndex n, const UnitVector& u, Side side = Side::A);
// Identity on every mode except pair.p and pair.q.
LinOp rest_identity(std::size_t dim, ModePair pair, Side side = Side::A);

}  // namespace pairbell
