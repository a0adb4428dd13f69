#include "pairbell/io.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include <fmt/format.h>

#include "pairbell/errors.hpp"

namespace pairbell::io {

using nlohmann::json;

namespace {

void require_fields(const json& j, std::initializer_list<const char*> allowed) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!names.contains(key)) throw ParseError(fmt::format("unexpected field '{}' in state spec", key));
  }
  for (const auto& name : names) {
    if (!j.contains(name)) throw ParseError(fmt::format("state spec is missing field '{}'", name));
  }
}

double number_field(const json& j, const char* name) {
  const json& v = j.at(name);
  if (!v.is_number()) throw ParseError(fmt::format("field '{}' must be a number", name));
  return v.get<double>();
}

int integer_field(const json& j, const char* name) {
  const json& v = j.at(name);
  if (!v.is_number_integer()) throw ParseError(fmt::format("field '{}' must be an integer", name));
  return v.get<int>();
}

ModePair pair_field(const json& j, const char* name) {
  const json& v = j.at(name);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_unsigned() || !v[1].is_number_unsigned()) {
    throw ParseError(fmt::format("field '{}' must be a pair of nonnegative integers", name));
  }
  return {v[0].get<std::size_t>(), v[1].get<std::size_t>()};
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

StateSpec parse_state_spec(const json& j) {
  if (!j.is_object()) throw ParseError("state spec must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw ParseError("state spec needs a string field 'type'");
  const Family family = family_from_name(j["type"].get<std::string>());
  switch (family) {
    case Family::GenericPair:
      require_fields(j, {"type", "pair_a", "pair_b"});
      return GenericPair{pair_field(j, "pair_a"), pair_field(j, "pair_b")};
    case Family::Noon:
      require_fields(j, {"type", "n"});
      return Noon{integer_field(j, "n")};
    case Family::CoherentSuperposition: {
      require_fields(j, {"type", "z"});
      const json& z = j["z"];
      if (!z.is_object()) throw ParseError("field 'z' must be an object {\"re\":..,\"im\":..}");
      for (const auto& [key, _] : z.items()) {
        if (key != "re" && key != "im") throw ParseError(fmt::format("unexpected field '{}' in z", key));
      }
      if (!z.contains("re") || !z.contains("im")) throw ParseError("field 'z' needs both 're' and 'im'");
      return CoherentSuperposition{{number_field(z, "re"), number_field(z, "im")}};
    }
    case Family::TwoModeSqueezed:
      require_fields(j, {"type", "eta"});
      return TwoModeSqueezed{number_field(j, "eta")};
    case Family::Werner:
      require_fields(j, {"type", "w"});
      return Werner{number_field(j, "w")};
  }
  throw ParseError("unhandled state family");
}

StateSpec parse_state_spec_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("malformed state spec JSON: {}", e.what()));
  }
  return parse_state_spec(j);
}

json to_json(const StateSpec& spec) {
  json j;
  j["type"] = family_name(family_of(spec));
  std::visit(overloaded{
                 [&](const GenericPair& s) {
                   j["pair_a"] = {s.pair_a.p, s.pair_a.q};
                   j["pair_b"] = {s.pair_b.p, s.pair_b.q};
                 },
                 [&](const Noon& s) { j["n"] = s.n; },
                 [&](const CoherentSuperposition& s) { j["z"] = {{"re", s.z.real()}, {"im", s.z.imag()}}; },
                 [&](const TwoModeSqueezed& s) { j["eta"] = s.eta; },
                 [&](const Werner& s) { j["w"] = s.w; },
             },
             spec);
  return j;
}

json to_json(const AngleSet& a) {
  return {{"alpha1", a.alpha1}, {"alpha2", a.alpha2}, {"beta1", a.beta1}, {"beta2", a.beta2}};
}

json to_json(const ChshReport& r) {
  return {
      {"method", method_name(r.method)},
      {"correlators", {{"E11", r.correlators[0]}, {"E21", r.correlators[1]}, {"E12", r.correlators[2]},
                       {"E22", r.correlators[3]}}},
      {"chsh_value", r.chsh_value},
      {"angles", to_json(r.angles)},
      {"violation", r.violation},
      {"tsirelson_gap", r.tsirelson_gap},
      {"truncation_error_bound", r.truncation_error_bound},
  };
}

json to_json(const OptimizationResult& r) {
  return {
      {"best_angles", to_json(r.best_angles)},
      {"best_abs_chsh", r.best_abs_chsh},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"report", to_json(r.report)},
  };
}

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  return fmt::format("{:.17g}", value);
}

std::string csv_header() {
  return "method,family,param,alpha1,alpha2,beta1,beta2,E11,E21,E12,E22,chsh,violation,trunc_bound";
}

std::string csv_row(const ChshReport& r, const StateSpec& spec, double param) {
  const auto& a = r.angles;
  const auto& e = r.correlators;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}", method_name(r.method),
                     family_name(family_of(spec)), format_number(param), format_number(a.alpha1),
                     format_number(a.alpha2), format_number(a.beta1), format_number(a.beta2), format_number(e[0]),
                     format_number(e[1]), format_number(e[2]), format_number(e[3]), format_number(r.chsh_value),
                     r.violation ? "true" : "false", format_number(r.truncation_error_bound));
}

}  // namespace pairbell::io
