#pragma once

// JSON and CSV forms of specs and reports.
//
// StateSpec JSON (unknown fields are rejected):
//   {"type":"generic_pair","pair_a":[0,1],"pair_b":[0,1]}
//   {"type":"noon","n":3}
//   {"type":"coherent_superposition","z":{"re":1.0,"im":0.0}}
//   {"type":"two_mode_squeezed","eta":0.7}
//   {"type":"werner","w":0.8}
//
// CSV rows: method,family,param,alpha1,alpha2,beta1,beta2,E11,E21,E12,E22,
// chsh,violation,trunc_bound. Numbers use 17 significant digits.

#include <string>
#include <string_view>

#include <json.hpp>

#include "pairbell/chsh.hpp"
#include "pairbell/optimizer.hpp"

namespace pairbell::io {

// Structure only: field names and types. Domain limits (eta in (0,1), ...)
// are checked by validate(), so a sweep template may carry a placeholder.
StateSpec parse_state_spec(const nlohmann::json& j);
StateSpec parse_state_spec_text(std::string_view text);
nlohmann::json to_json(const StateSpec& spec);

nlohmann::json to_json(const AngleSet& angles);
nlohmann::json to_json(const ChshReport& report);
nlohmann::json to_json(const OptimizationResult& result);

std::string format_number(double value);

std::string csv_header();
std::string csv_row(const ChshReport& report, const StateSpec& spec, double param);

}  // namespace pairbell::io
