#include "pairbell/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pairbell/errors.hpp"
#include "pairbell/io.hpp"
#include "pairbell/optimizer.hpp"
#include "pairbell/pseudospin.hpp"

namespace pairbell::cli {

using nlohmann::json;

namespace {

constexpr double kAlgebraTol = 1e-13;
constexpr double kTailWarning = 1e-3;

double relation_residual(const LinOp& p, const LinOp& q, const LinOp& r) {
  return max_abs_diff(commutator(p, q).matrix(), cplx{0.0, 2.0} * r.matrix());
}

double su2_residual(const LinOp& x, const LinOp& y, const LinOp& z) {
  return std::max({relation_residual(x, y, z), relation_residual(y, z, x), relation_residual(z, x, y)});
}

json side_algebra(std::size_t dim) {
  const std::size_t pairs = dim / 2;
  double pair_res = 0.0;
  double cross_res = 0.0;
  std::vector<std::array<LinOp, 3>> spins;
  for (std::size_t n = 0; n < pairs; ++n) {
    spins.push_back({pair_spin(dim, {n}, Axis::X), pair_spin(dim, {n}, Axis::Y), pair_spin(dim, {n}, Axis::Z)});
    pair_res = std::max(pair_res, su2_residual(spins[n][0], spins[n][1], spins[n][2]));
  }
  for (std::size_t m = 0; m < pairs; ++m)
    for (std::size_t n = 0; n < pairs; ++n) {
      if (m == n) continue;
      for (const auto& a : spins[m])
        for (const auto& b : spins[n]) cross_res = std::max(cross_res, max_abs(commutator(a, b).matrix()));
    }
  const double total_res =
      su2_residual(total_spin(dim, Axis::X), total_spin(dim, Axis::Y), total_spin(dim, Axis::Z));

  double dichotomy_res = 0.0;
  for (ModePair pair : {ModePair{0, 1}, ModePair{0, dim - 1}, ModePair{dim - 1, dim / 2}}) {
    if (pair.p == pair.q) continue;
    for (double angle : {0.0, 0.3, std::numbers::pi / 2, 2.1, -1.0}) {
      dichotomy_res = std::max(dichotomy_res, dichotomy_check(bell_side_operator(dim, {Side::A, pair, angle})).max_residual);
    }
  }
  return {{"dim", dim},
          {"pairs", pairs},
          {"pair_commutator_residual", pair_res},
          {"total_commutator_residual", total_res},
          {"cross_pair_residual", cross_res},
          {"bell_dichotomy_residual", dichotomy_res}};
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what, bool allow_zero = false) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("{}: '{}' is not an integer", what, item));
    }
    if (used != item.size() || v < (allow_zero ? 0 : 1)) {
      throw ParseError(fmt::format("{}: '{}' is not a {} integer", what, item, allow_zero ? "nonnegative" : "positive"));
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ParseError(fmt::format("{}: empty list", what));
  return out;
}

FockSpace parse_dims(const std::string& text) {
  const auto dims = parse_size_list(text, "--dims");
  if (dims.size() != 2) throw ParseError("--dims expects two comma-separated values, e.g. 16,16");
  return {dims[0], dims[1]};
}

ModePair parse_pair(const std::string& text, const char* what) {
  const auto v = parse_size_list(text, what, true);
  if (v.size() != 2) throw ParseError(fmt::format("{} expects two comma-separated modes", what));
  return {v[0], v[1]};
}

AngleSet parse_angles(const std::string& text) {
  if (text == "preset:paper-choice") return presets::paper_choice();
  if (text == "preset:paper-choice-sq") return presets::paper_choice_sq();
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("--angles: '{}' is not a number", item));
    }
    if (used != item.size() || !std::isfinite(d)) throw ParseError(fmt::format("--angles: '{}' is not a number", item));
    v.push_back(d);
  }
  if (v.size() != 4) {
    throw ParseError("--angles expects preset:paper-choice, preset:paper-choice-sq or alpha1,alpha2,beta1,beta2");
  }
  return {v[0], v[1], v[2], v[3]};
}

StateSpec load_spec(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return io::parse_state_spec_text(text);
  std::ifstream in(text);
  if (!in) throw ParseError(fmt::format("--spec: '{}' is neither inline JSON nor a readable file", text));
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_state_spec_text(buf.str());
}

std::vector<Method> parse_methods(const std::string& text) {
  if (text == "both") return {Method::Matrix, Method::ClosedForm};
  return {method_from_name(text)};
}

enum class Format { Csv, Json };

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ParseError(fmt::format("--output must be csv or json, got '{}'", text));
}

void warn_tail(std::ostream& err, const ChshReport& r) {
  if (r.method == Method::Matrix && r.truncation_error_bound > kTailWarning) {
    err << fmt::format("warning: truncation error bound {:.3e} exceeds {:.0e}; increase --dims\n",
                       r.truncation_error_bound, kTailWarning);
  }
}

struct Options {
  std::string spec;
  std::string dims = "16,16";
  std::string angles;
  std::string method;
  std::string output;
  std::string out_path;
  std::string pair_a;
  std::string pair_b;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
  bool optimize = false;
  int grid = 8;
  double tol = 1e-10;
  std::string dims_list = "4,8,16,32";
};

std::string cmd_evaluate(const Options& o, std::ostream& err) {
  const StateSpec spec = load_spec(o.spec);
  validate(spec);
  const FockSpace space = parse_dims(o.dims);
  const AngleSet angles = parse_angles(o.angles);
  const Format format = parse_format(o.output.empty() ? "json" : o.output);
  std::optional<BellSetup> setup;
  if (!o.pair_a.empty() || !o.pair_b.empty()) {
    BellSetup s = canonical_setup(spec);
    if (!o.pair_a.empty()) s.pair_a = parse_pair(o.pair_a, "--pair-a");
    if (!o.pair_b.empty()) s.pair_b = parse_pair(o.pair_b, "--pair-b");
    setup = s;
  }
  std::vector<ChshReport> reports;
  for (Method m : parse_methods(o.method.empty() ? "both" : o.method)) {
    reports.push_back(chsh(spec, space, angles, m, setup));
    warn_tail(err, reports.back());
  }
  if (format == Format::Csv) {
    std::string text = io::csv_header() + "\n";
    for (const auto& r : reports) text += io::csv_row(r, spec, natural_parameter(spec)) + "\n";
    return text;
  }
  json j{{"spec", io::to_json(spec)}, {"dims", {space.dim_a(), space.dim_b()}}, {"reports", json::array()}};
  for (const auto& r : reports) j["reports"].push_back(io::to_json(r));
  return j.dump(2) + "\n";
}

std::string cmd_optimize(const Options& o, std::ostream& err) {
  const StateSpec spec = load_spec(o.spec);
  validate(spec);
  const FockSpace space = parse_dims(o.dims);
  const Format format = parse_format(o.output.empty() ? "json" : o.output);
  OptimizerOptions opts;
  opts.grid_resolution = o.grid;
  std::vector<OptimizationResult> results;
  for (Method m : parse_methods(o.method.empty() ? "matrix" : o.method)) {
    results.push_back(optimize_angles(spec, space, m, opts));
    warn_tail(err, results.back().report);
  }
  if (format == Format::Csv) {
    std::string text = io::csv_header() + "\n";
    for (const auto& r : results) text += io::csv_row(r.report, spec, natural_parameter(spec)) + "\n";
    return text;
  }
  json j{{"spec", io::to_json(spec)}, {"dims", {space.dim_a(), space.dim_b()}}, {"results", json::array()}};
  for (const auto& r : results) j["results"].push_back(io::to_json(r));
  return j.dump(2) + "\n";
}

std::string cmd_sweep(const Options& o, std::ostream& err) {
  const StateSpec templ = load_spec(o.spec);
  const Format format = parse_format(o.output.empty() ? "csv" : o.output);
  SweepOptions opts;
  opts.parameter = parameter_from_name(o.param);
  opts.from = o.from;
  opts.to = o.to;
  opts.steps = o.steps;
  opts.optimize = o.optimize;
  opts.method = method_from_name(o.method.empty() ? "closed_form" : o.method);
  opts.space = parse_dims(o.dims);
  if (!o.angles.empty()) opts.angles = parse_angles(o.angles);
  opts.optimizer.grid_resolution = o.grid;
  const auto rows = parameter_sweep(templ, opts);
  for (const auto& row : rows) warn_tail(err, row.report);
  if (format == Format::Csv) {
    std::string text = io::csv_header() + "\n";
    for (const auto& row : rows) {
      text += io::csv_row(row.report, with_parameter(templ, opts.parameter, row.parameter), row.parameter) + "\n";
    }
    return text;
  }
  json j{{"family", family_name(family_of(templ))}, {"param", parameter_name(opts.parameter)}, {"rows", json::array()}};
  for (const auto& row : rows) {
    j["rows"].push_back({{"parameter", row.parameter},
                         {"best_abs_chsh", row.best_abs_chsh},
                         {"violation", row.violation},
                         {"best_angles", io::to_json(row.best_angles)},
                         {"report", io::to_json(row.report)}});
  }
  return j.dump(2) + "\n";
}

std::string cmd_threshold(const Options& o) {
  const StateSpec templ = load_spec(o.spec);
  if (!o.output.empty() && o.output != "json") throw ParseError("threshold only supports --output json");
  const SweepParameter param = parameter_from_name(o.param);
  const double t = find_threshold(templ, param, o.from, o.to, o.tol);
  const json j{{"family", family_name(family_of(templ))}, {"param", parameter_name(param)}, {"lo", o.from},
               {"hi", o.to},   {"tolerance", o.tol},  {"threshold", t}};
  return j.dump(2) + "\n";
}

std::string cmd_convergence(const Options& o) {
  const StateSpec spec = load_spec(o.spec);
  validate(spec);
  const Format format = parse_format(o.output.empty() ? "csv" : o.output);
  const AngleSet angles = o.angles.empty() ? canonical_angles(spec) : parse_angles(o.angles);
  const auto rows = convergence(spec, parse_size_list(o.dims_list, "--dims-list"), angles);
  if (format == Format::Csv) {
    std::string text = "dim,chsh_matrix,closed_form,abs_difference,tail_bound\n";
    for (const auto& r : rows) {
      text += fmt::format("{},{},{},{},{}\n", r.dim, io::format_number(r.chsh_matrix), io::format_number(r.closed_form),
                          io::format_number(r.difference), io::format_number(r.tail_bound));
    }
    return text;
  }
  json j{{"spec", io::to_json(spec)}, {"angles", io::to_json(angles)}, {"rows", json::array()}};
  for (const auto& r : rows) {
    j["rows"].push_back({{"dim", r.dim},
                         {"chsh_matrix", r.chsh_matrix},
                         {"closed_form", r.closed_form},
                         {"abs_difference", r.difference},
                         {"tail_bound", r.tail_bound}});
  }
  return j.dump(2) + "\n";
}

std::string cmd_algebra(const Options& o) {
  if (!o.output.empty() && o.output != "json") throw ParseError("algebra-check only supports --output json");
  return algebra_check(parse_dims(o.dims)).dump(2) + "\n";
}

}  // namespace

std::vector<ConvergenceRow> convergence(const StateSpec& spec, const std::vector<std::size_t>& dims,
                                        const AngleSet& angles) {
  validate(spec);
  const Family f = family_of(spec);
  if (f != Family::CoherentSuperposition && f != Family::TwoModeSqueezed) {
    throw ValidationError(fmt::format("convergence needs a family with a truncation tail, got {}", family_name(f)));
  }
  const double closed = chsh_closed_form(spec, angles).chsh_value;
  std::vector<ConvergenceRow> rows;
  for (std::size_t d : dims) {
    const FockSpace space(d, d);
    const double matrix = chsh(spec, space, angles, Method::Matrix).chsh_value;
    rows.push_back({d, matrix, closed, std::abs(matrix - closed), tail_bound(spec, space).tail_probability});
  }
  return rows;
}

json algebra_check(const FockSpace& space) {
  json sides = json::array();
  double worst_commutator = 0.0;
  double worst_dichotomy = 0.0;
  for (std::size_t dim : std::set<std::size_t>{space.dim_a(), space.dim_b()}) {
    json s = side_algebra(dim);
    worst_commutator = std::max({worst_commutator, s["pair_commutator_residual"].get<double>(),
                                 s["total_commutator_residual"].get<double>(), s["cross_pair_residual"].get<double>()});
    worst_dichotomy = std::max(worst_dichotomy, s["bell_dichotomy_residual"].get<double>());
    sides.push_back(std::move(s));
  }
  const LinOp a = bell_operator(space, {Side::A, {0, 1}, 0.3});
  const LinOp b = bell_operator(space, {Side::B, {0, space.dim_b() - 1}, 1.1});
  const double sides_res = commuting_sides_check(a, b);
  worst_commutator = std::max(worst_commutator, sides_res);
  return {{"dims", {space.dim_a(), space.dim_b()}},
          {"commutator_tolerance", kAlgebraTol},
          {"dichotomy_tolerance", kDichotomyTol},
          {"sides", sides},
          {"sides_commutator_residual", sides_res},
          {"max_commutator_residual", worst_commutator},
          {"max_dichotomy_residual", worst_dichotomy},
          {"pass", worst_commutator < kAlgebraTol && worst_dichotomy <= kDichotomyTol}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell-CHSH tests with pair-flip operators on truncated Fock spaces", "pairbell"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dims", o.dims, "Side dimensions dim_a,dim_b (even)")->capture_default_str();
    sub->add_option("--output", o.output, "Output format: csv or json");
    sub->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
  };

  auto* algebra = app.add_subcommand("algebra-check", "Pseudospin algebra and Bell operator self-checks");
  add_common(algebra);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "CHSH value at given angles");
  add_common(evaluate_cmd);
  evaluate_cmd->add_option("--spec", o.spec, "State spec (inline JSON or file path)")->required();
  evaluate_cmd->add_option("--angles", o.angles, "preset:paper-choice, preset:paper-choice-sq or a1,a2,b1,b2")
      ->required();
  evaluate_cmd->add_option("--method", o.method, "matrix, closed_form or both (default both)");
  evaluate_cmd->add_option("--pair-a", o.pair_a, "Mode pair p,q for the A operators");
  evaluate_cmd->add_option("--pair-b", o.pair_b, "Mode pair r,s for the B operators");

  auto* optimize_cmd = app.add_subcommand("optimize", "Maximize |CHSH| over the four angles");
  add_common(optimize_cmd);
  optimize_cmd->add_option("--spec", o.spec, "State spec (inline JSON or file path)")->required();
  optimize_cmd->add_option("--method", o.method, "matrix, closed_form or both (default matrix)");
  optimize_cmd->add_option("--grid", o.grid, "Seed grid points per angle (>= 4)")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "CHSH over a range of the family parameter");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--spec", o.spec, "State spec template")->required();
  sweep_cmd->add_option("--param", o.param, "eta, w, z (|z|) or z2 (|z|^2)")->required();
  sweep_cmd->add_option("--from", o.from, "First parameter value")->required();
  sweep_cmd->add_option("--to", o.to, "Last parameter value")->required();
  sweep_cmd->add_option("--steps", o.steps, "Number of points (>= 2)")->required();
  sweep_cmd->add_option("--angles", o.angles, "Fixed angles (default: family's canonical preset)");
  sweep_cmd->add_flag("--optimize", o.optimize, "Optimize the angles at every point");
  sweep_cmd->add_option("--method", o.method, "matrix or closed_form (default closed_form)");
  sweep_cmd->add_option("--grid", o.grid, "Seed grid points per angle when optimizing")->capture_default_str();

  auto* threshold_cmd = app.add_subcommand("threshold", "Parameter where the optimal |CHSH| crosses 2");
  add_common(threshold_cmd);
  threshold_cmd->add_option("--spec", o.spec, "State spec template")->required();
  threshold_cmd->add_option("--param", o.param, "eta, w, z or z2")->required();
  threshold_cmd->add_option("--from", o.from, "Bracket lower end")->required();
  threshold_cmd->add_option("--to", o.to, "Bracket upper end")->required();
  threshold_cmd->add_option("--tol", o.tol, "Parameter tolerance")->capture_default_str();

  auto* conv_cmd = app.add_subcommand("convergence", "Matrix vs closed form as the cutoff grows");
  add_common(conv_cmd);
  conv_cmd->add_option("--spec", o.spec, "State spec (coherent_superposition or two_mode_squeezed)")->required();
  conv_cmd->add_option("--dims-list", o.dims_list, "Comma-separated square cutoffs")->capture_default_str();
  conv_cmd->add_option("--angles", o.angles, "Angles (default: family's canonical preset)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string text;
    if (algebra->parsed()) text = cmd_algebra(o);
    else if (evaluate_cmd->parsed()) text = cmd_evaluate(o, err);
    else if (optimize_cmd->parsed()) text = cmd_optimize(o, err);
    else if (sweep_cmd->parsed()) text = cmd_sweep(o, err);
    else if (threshold_cmd->parsed()) text = cmd_threshold(o);
    else if (conv_cmd->parsed()) text = cmd_convergence(o);

    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw ValidationError(fmt::format("cannot open '{}' for writing", o.out_path));
      file << text;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pairbell::cli
