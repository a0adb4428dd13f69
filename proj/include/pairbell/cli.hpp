#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairbell/chsh.hpp"

namespace pairbell::cli {

struct ConvergenceRow {
  std::size_t dim = 0;
  double chsh_matrix = 0.0;
  double closed_form = 0.0;
  double difference = 0.0;
  double tail_bound = 0.0;  // tail probability at this cutoff
};

// Matrix vs closed-form CHSH on square cutoffs dim x dim. Only families with a
// truncation tail (coherent_superposition, two_mode_squeezed) are accepted.
std::vector<ConvergenceRow> convergence(const StateSpec& spec, const std::vector<std::size_t>& dims,
                                        const AngleSet& angles);

// Commutator residuals of the pseudospin algebra and dichotomy residuals of a
// fixed sample of Bell operators on the given space.
nlohmann::json algebra_check(const FockSpace& space);

// Entry point behind the executable. args excludes the program name.
// Returns 0 on success, 2 on invalid input, 1 on internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairbell::cli
