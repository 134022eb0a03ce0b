#pragma once

// Command-line front end. Exit codes: 0 success, 1 input error, 2 a proved
// identity failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "jacsyz/report.hpp"

namespace jacsyz {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitIdentity = 2;

namespace detail {

inline void write_json(const Json& j, const std::string& target, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw input_error("cannot write '" + target + "'");
  file << text;
}

inline int cmd_analyze(const std::string& path, const std::optional<std::string>& range,
                       std::optional<std::size_t> chart, std::uint64_t seed,
                       const std::optional<std::string>& json, std::ostream& out) {
  const ProblemInput input = parse_problem_file(path);
  AnalysisOptions opt;
  if (range) opt.m_range = parse_range(*range);
  opt.chart = chart;
  opt.seed = seed;
  const Analysis a = analyze(input, opt);
  if (json) {
    write_json(a.report, *json, out);
    if (*json != "-") print_summary(a, out);
  } else {
    print_summary(a, out);
  }
  return a.identities_ok ? kExitOk : kExitIdentity;
}

inline int cmd_hilbert(const std::string& path, std::optional<unsigned> k_max, std::ostream& out) {
  const ProblemInput input = parse_problem_file(path);
  const auto& f = input.f;
  const unsigned n = static_cast<unsigned>(f.num_vars()) - 1;
  const unsigned top = k_max.value_or(static_cast<unsigned>(socle_degree(f)) + n + 1);
  const HilbertTable t = milnor_hilbert(f, top);
  for (std::size_t k = 0; k < t.values.size(); ++k) out << (k ? " " : "") << t.values[k];
  out << "\n";
  return kExitOk;
}

inline int cmd_syzygies(const std::string& path, unsigned m, std::ostream& out) {
  const ProblemInput input = parse_problem_file(path);
  const auto basis = ar_basis(input.f, m);
  out << "dim AR(f)_" << m << " = " << basis.size() << "\n";
  for (const auto& s : basis) out << tuple_string(s, input.variables) << "\n";
  return kExitOk;
}

inline int cmd_split(const std::string& path, unsigned m, std::optional<std::size_t> chart,
                     std::uint64_t seed, std::ostream& out) {
  const ProblemInput input = parse_problem_file(path);
  const auto records = analyze_points(input.f, input.singular_points);
  require_complete(completeness(stabilized_tjurina(input.f), records));
  const SplitFrame frame = choose_frame(input, records, chart, seed);
  if (frame.change) {
    out << "coordinates changed (search trial " << frame.change->trial << "): f = "
        << to_string(frame.f, input.variables) << "\n";
  }
  const SplitResult r = split_basis(frame.f, m, frame.records, frame.chart);
  out << "m=" << r.m << " chart=x_" << r.chart << " ar=" << r.dims.ar << " kr=" << r.dims.kr
      << " er=" << r.dims.er << " kernel=" << r.kernel_dim
      << " kernel_matches_kr=" << (r.kernel_matches_kr ? "yes" : "no") << "\n";
  out << "KR basis:\n";
  for (const auto& s : r.kr_basis) out << "  " << tuple_string(s, input.variables) << "\n";
  out << "ER representatives:\n";
  for (const auto& s : r.er_representatives) out << "  " << tuple_string(s, input.variables) << "\n";
  const bool all_wh = std::all_of(r.wh_verdict.begin(), r.wh_verdict.end(), [](bool b) { return b; });
  return all_wh && !r.kernel_matches_kr ? kExitIdentity : kExitOk;
}

inline int cmd_local(const std::string& path, std::size_t index, std::ostream& out) {
  const ProblemInput input = parse_problem_file(path);
  if (index == 0 || index > input.singular_points.size())
    throw input_error("--point must be between 1 and " + std::to_string(input.singular_points.size()));
  const auto r = analyze_point(input.f, input.singular_points[index - 1]);
  out << "mu=" << r.mu << " tau=" << r.tau << " WH=" << (r.is_wh ? "yes" : "no") << "\n";
  return kExitOk;
}

inline int cmd_audit(const std::string& path, std::ostream& out) {
  const ProblemInput input = parse_problem_file(path);
  const auto& f = input.f;
  const auto records = analyze_points(f, input.singular_points);
  require_complete(completeness(stabilized_tjurina(f), records));
  const AuditReport a = audit_corollary_B(f, records, 0, duality_degree(f));
  if (!a.applicable) {
    out << "not applicable: " << a.reason << "\n";
    return kExitOk;
  }
  out << "mu(V)=" << a.mu << " d=" << a.dual_degree << " T=" << a.socle_degree << "\n";
  for (const auto& r : a.rows) {
    out << "m=" << r.m << " (1) " << r.er << "+" << r.er_dual << " <= " << a.mu;
    if (r.half_bound_applies) out << ", " << r.er << " <= " << a.mu / 2;
    out << " (2) " << r.defect << "+" << r.defect_dual << " <= " << a.mu;
    out << " (3) " << r.lhs3 << " <= " << a.mu << (r.ok ? " ok" : " VIOLATED") << "\n";
  }
  return a.ok ? kExitOk : kExitIdentity;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobian syzygies of projective hypersurfaces with isolated singularities"};
  app.require_subcommand(1);

  std::string file;
  std::optional<std::string> range;
  std::optional<std::string> json;
  std::optional<std::size_t> chart;
  std::optional<unsigned> k_max;
  std::uint64_t seed = 0;
  unsigned degree = 0;
  std::size_t point = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "full report");
  analyze_cmd->add_option("file", file, "input file")->required();
  analyze_cmd->add_option("--m-range", range, "degree range a..b");
  analyze_cmd->add_option("--chart", chart, "projection chart index");
  analyze_cmd->add_option("--seed", seed, "seed for the coordinate search");
  analyze_cmd->add_option("--json", json, "write the JSON report to a file ('-' for stdout)");

  auto* hilbert_cmd = app.add_subcommand("hilbert", "dim M(f)_k for k = 0..");
  hilbert_cmd->add_option("file", file, "input file")->required();
  hilbert_cmd->add_option("--max-degree", k_max, "last degree printed");

  auto* syz_cmd = app.add_subcommand("syzygies", "basis of AR(f)_m");
  syz_cmd->add_option("file", file, "input file")->required();
  syz_cmd->add_option("--degree", degree, "m")->required();

  auto* split_cmd = app.add_subcommand("split", "KR basis and ER representatives in degree m");
  split_cmd->add_option("file", file, "input file")->required();
  split_cmd->add_option("--degree", degree, "m")->required();
  split_cmd->add_option("--chart", chart, "projection chart index");
  split_cmd->add_option("--seed", seed, "seed for the coordinate search");

  auto* local_cmd = app.add_subcommand("local", "Milnor and Tjurina numbers at one point");
  local_cmd->add_option("file", file, "input file")->required();
  local_cmd->add_option("--point", point, "1-based point index")->required();

  auto* audit_cmd = app.add_subcommand("audit", "inequalities for weighted homogeneous singularities");
  audit_cmd->add_option("file", file, "input file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_cmd) return detail::cmd_analyze(file, range, chart, seed, json, out);
    if (*hilbert_cmd) return detail::cmd_hilbert(file, k_max, out);
    if (*syz_cmd) return detail::cmd_syzygies(file, degree, out);
    if (*split_cmd) return detail::cmd_split(file, degree, chart, seed, out);
    if (*local_cmd) return detail::cmd_local(file, point, out);
    if (*audit_cmd) return detail::cmd_audit(file, out);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const invariant_violation& e) {
    err << "identity failure: " << e.what() << "\n";
    return kExitIdentity;
  }
  return kExitInput;
}

}  // namespace jacsyz
