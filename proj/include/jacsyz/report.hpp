#pragma once

// End-to-end analysis of one input file and its JSON / text renderings.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "jacsyz/errors.hpp"
#include "jacsyz/localsing.hpp"
#include "jacsyz/milnor.hpp"
#include "jacsyz/parser.hpp"
#include "jacsyz/syzygy.hpp"

namespace jacsyz {

using Json = nlohmann::ordered_json;

struct DegreeRange {
  long lo = 0;
  long hi = -1;
};

struct AnalysisOptions {
  std::optional<DegreeRange> m_range;
  std::optional<std::size_t> chart;
  std::uint64_t seed = 0;
};

// nN - 2n - 1 + 2 unless SYZYGY_MAX_DEGREE is set.
inline long max_scan_degree(const HomogeneousPoly& f) {
  if (const char* env = std::getenv("SYZYGY_MAX_DEGREE"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) throw input_error("SYZYGY_MAX_DEGREE must be a non-negative integer");
    return v;
  }
  return std::max(duality_degree(f) + 2, 0L);
}

// "a..b" with non-negative integers.
inline DegreeRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument("no dots");
    std::size_t used = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    DegreeRange r{std::stol(a, &used), 0};
    if (used != a.size()) throw std::invalid_argument("tail");
    r.hi = std::stol(b, &used);
    if (used != b.size() || r.lo < 0 || r.hi < r.lo) throw std::invalid_argument("order");
    return r;
  } catch (const std::logic_error&) {
    throw input_error("degree range must look like a..b with 0 <= a <= b: '" + text + "'");
  }
}

inline Json rational_json(const Rational& q) { return fraction_string(q); }

inline Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

inline Json matrix_json(const RatMatrix& a) {
  Json out = Json::array();
  for (std::size_t r = 0; r < a.rows(); ++r)
    out.push_back(vector_json(RatVector(a.row(r).begin(), a.row(r).end())));
  return out;
}

// "(a_0, ..., a_n)"
inline std::string tuple_string(const SyzygyVector& s, const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.components[i], names);
  }
  return out + ")";
}

inline std::vector<SingularPointRecord> analyze_points(const HomogeneousPoly& f,
                                                       const std::vector<RatVector>& points) {
  std::vector<SingularPointRecord> records;
  for (const auto& q : points) records.push_back(analyze_point(f, q));
  return records;
}

// The coordinate system and chart used for splitting.
struct SplitFrame {
  HomogeneousPoly f;
  std::vector<SingularPointRecord> records;
  std::size_t chart = 0;
  std::optional<CoordinateChange> change;  // set when coordinates were changed
};

// An explicit chart must pass the transversality check. Otherwise the first
// transversal coordinate chart is used, and failing that a seeded search
// for new coordinates.
inline SplitFrame choose_frame(const ProblemInput& input,
                               const std::vector<SingularPointRecord>& records,
                               std::optional<std::size_t> chart, std::uint64_t seed) {
  const auto& f = input.f;
  if (chart) {
    const auto rep = transversality_report(f, *chart, input.singular_points);
    if (!rep.ok)
      throw input_error("transversality check failed for chart x_" + std::to_string(*chart) + ": " +
                        rep.reason + "; use find_transversal_coordinates to pick coordinates");
    return {f, records, *chart, std::nullopt};
  }
  for (std::size_t c = 0; c < f.num_vars(); ++c)
    if (transversality_check(f, c, input.singular_points)) return {f, records, c, std::nullopt};
  CoordinateChange change = find_transversal_coordinates(f, input.singular_points, seed);
  const HomogeneousPoly g = linear_change(f, change.matrix);
  std::vector<RatVector> moved;
  for (const auto& q : input.singular_points) moved.push_back(transform_point(change.inverse, q));
  return {g, analyze_points(g, moved), 0, std::move(change)};
}

struct CompletenessCertificate {
  std::size_t sum_tau = 0;
  std::size_t stabilized_tau = 0;
  bool complete = false;
};

inline CompletenessCertificate completeness(const TjurinaStabilization& st,
                                            const std::vector<SingularPointRecord>& records) {
  CompletenessCertificate c{total_tau(records), st.tau, false};
  c.complete = c.sum_tau == c.stabilized_tau;
  return c;
}

inline void require_complete(const CompletenessCertificate& c) {
  if (!c.complete)
    throw input_error("incomplete singular locus: sum of local Tjurina numbers is " +
                      std::to_string(c.sum_tau) + " but dim M(f)_k stabilizes at " +
                      std::to_string(c.stabilized_tau) + "; list every singular point");
}

struct Analysis {
  Json report;
  bool identities_ok = true;  // false: a proved identity failed (exit code 2)
  std::vector<std::string> failures;
};

inline Json split_json(const SplitResult& r, const std::vector<std::string>& names) {
  Json j;
  j["m"] = r.m;
  j["chart"] = r.chart;
  j["ar"] = r.dims.ar;
  j["kr"] = r.dims.kr;
  j["er"] = r.dims.er;
  j["kernel_dim"] = r.kernel_dim;
  j["kernel_matches_kr"] = r.kernel_matches_kr;
  j["er_indices"] = r.er_indices;
  Json reps = Json::array();
  for (const auto& s : r.er_representatives) reps.push_back(tuple_string(s, names));
  j["er_representatives"] = std::move(reps);
  return j;
}

inline Analysis analyze(const ProblemInput& input, const AnalysisOptions& opt) {
  Analysis out;
  const auto& f = input.f;
  const unsigned n = static_cast<unsigned>(f.num_vars()) - 1;
  const long d = duality_degree(f);
  const long cap = max_scan_degree(f);
  DegreeRange range = opt.m_range.value_or(DegreeRange{0, cap});
  range.hi = std::min(range.hi, cap);

  const TjurinaStabilization st = stabilized_tjurina(f);
  const std::vector<SingularPointRecord> records = analyze_points(f, input.singular_points);
  const CompletenessCertificate cert = completeness(st, records);
  require_complete(cert);

  auto fail = [&](std::string what) {
    out.identities_ok = false;
    out.failures.push_back(std::move(what));
  };

  Json& rep = out.report;
  {
    Json j;
    j["variables"] = input.variables;
    j["f"] = to_string(f, input.variables);
    j["n"] = n;
    j["degree"] = f.degree();
    Json pts = Json::array();
    for (const auto& q : input.singular_points) pts.push_back(vector_json(q));
    j["points"] = std::move(pts);
    j["seed"] = opt.seed;
    j["m_range"] = {range.lo, range.hi};
    j["duality_degree"] = d;
    j["socle_degree"] = socle_degree(f);
    rep["input"] = std::move(j);
  }
  {
    Json j;
    j["milnor"] = st.table.values;
    std::vector<std::size_t> smooth;
    for (std::size_t k = 0; k < st.table.values.size(); ++k)
      smooth.push_back(smooth_hilbert(n, f.degree(), static_cast<long>(k)));
    j["smooth"] = smooth;
    j["stable_value"] = st.tau;
    j["stable_from"] = st.stable_from;
    rep["hilbert"] = std::move(j);
  }
  {
    Json pts = Json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      Json j;
      j["index"] = i + 1;
      j["point"] = vector_json(r.point);
      j["chart"] = r.chart;
      j["mu"] = r.mu;
      j["tau"] = r.tau;
      j["weighted_homogeneous"] = r.is_wh;
      j["truncation_order"] = r.tjurina.truncation_order();
      pts.push_back(std::move(j));
    }
    rep["points"] = std::move(pts);
  }
  {
    Json rows = Json::array();
    for (long m = range.lo; m <= range.hi; ++m) {
      const SyzygyDims dims = prop1_dims(f, m);
      const RatMatrix a = syzygy_matrix(f, static_cast<unsigned>(m));
      const std::size_t ar = a.cols() - rank(a);
      const std::size_t kr = koszul_dim(f, static_cast<unsigned>(m));
      if (ar != dims.ar || kr != dims.kr)
        fail("dimension formula disagrees with linear algebra at m = " + std::to_string(m));
      Json j;
      j["m"] = m;
      j["ar"] = dims.ar;
      j["kr"] = dims.kr;
      j["er"] = dims.er;
      rows.push_back(std::move(j));
    }
    rep["degrees"] = std::move(rows);
  }
  {
    const SplitFrame frame = choose_frame(input, records, opt.chart, opt.seed);
    const bool all_wh = std::all_of(records.begin(), records.end(),
                                    [](const SingularPointRecord& r) { return r.is_wh; });
    Json j;
    j["chart"] = frame.chart;
    j["coordinates"] = frame.change ? "transformed" : "original";
    if (frame.change) {
      j["change_matrix"] = matrix_json(frame.change->matrix);
      j["search_trial"] = frame.change->trial;
      j["f"] = to_string(frame.f, input.variables);
    }
    Json rows = Json::array();
    std::vector<long> strict;
    for (long m = range.lo; m <= range.hi; ++m) {
      const SplitResult r = split_basis(frame.f, static_cast<unsigned>(m), frame.records, frame.chart);
      if (r.kernel_dim > r.dims.kr) strict.push_back(m);
      if (all_wh && !r.kernel_matches_kr)
        fail("projection kernel exceeds KR(f)_m at m = " + std::to_string(m) +
             " although every singularity is weighted homogeneous");
      rows.push_back(split_json(r, input.variables));
    }
    j["all_weighted_homogeneous"] = all_wh;
    j["strict_inclusion_degrees"] = strict;
    j["degrees"] = std::move(rows);
    rep["split"] = std::move(j);
  }
  {
    const AuditReport a = audit_corollary_B(f, records, 0, d);
    Json j;
    j["applicable"] = a.applicable;
    if (!a.applicable) j["reason"] = a.reason;
    j["mu"] = a.mu;
    j["dual_degree"] = a.dual_degree;
    j["socle_degree"] = a.socle_degree;
    Json rows = Json::array();
    for (const auto& r : a.rows) {
      Json row;
      row["m"] = r.m;
      row["er"] = r.er;
      row["er_dual"] = r.er_dual;
      row["margin1"] = r.margin1;
      row["half_bound_applies"] = r.half_bound_applies;
      row["half_margin"] = r.half_margin;
      row["defect"] = r.defect;
      row["defect_dual"] = r.defect_dual;
      row["margin2"] = r.margin2;
      row["lhs3"] = r.lhs3;
      row["margin3"] = r.margin3;
      row["ok"] = r.ok;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    Json defects = Json::array();
    for (long m = range.lo; m <= range.hi; ++m) {
      const DefectRow row = defect(f, records, m);
      Json dj;
      dj["m"] = row.m;
      dj["quotient_dim"] = row.quotient_dim;
      dj["defect"] = row.defect;
      dj["dual_degree"] = row.dual_degree;
      dj["dual_er"] = row.dual_er;
      defects.push_back(std::move(dj));
    }
    j["defect"] = std::move(defects);
    j["ok"] = a.ok;
    if (a.applicable && !a.ok) fail("an audited inequality is violated");
    rep["audit"] = std::move(j);
  }
  {
    Json j;
    j["isolated"] = true;
    j["tau_total"] = total_tau(records);
    j["mu_total"] = total_mu(records);
    j["stabilized_tau"] = cert.stabilized_tau;
    j["complete"] = cert.complete;
    j["identities_ok"] = out.identities_ok;
    j["failures"] = out.failures;
    rep["certificates"] = std::move(j);
  }
  return out;
}

inline void print_summary(const Analysis& a, std::ostream& os) {
  const Json& r = a.report;
  os << "f = " << r["input"]["f"].get<std::string>() << "\n";
  os << "hilbert:";
  for (const auto& v : r["hilbert"]["milnor"]) os << " " << v.get<std::size_t>();
  os << "\n";
  for (const auto& p : r["points"])
    os << "point " << p["index"].get<std::size_t>() << ": mu=" << p["mu"].get<std::size_t>()
       << " tau=" << p["tau"].get<std::size_t>()
       << " WH=" << (p["weighted_homogeneous"].get<bool>() ? "yes" : "no") << "\n";
  const Json& c = r["certificates"];
  os << "tau(V)=" << c["tau_total"].get<std::size_t>() << " mu(V)=" << c["mu_total"].get<std::size_t>()
     << " complete=" << (c["complete"].get<bool>() ? "yes" : "no") << "\n";
  const Json& s = r["split"];
  os << "split chart x_" << s["chart"].get<std::size_t>() << " ("
     << s["coordinates"].get<std::string>() << " coordinates)\n";
  os << "m ar kr er kernel\n";
  for (const auto& row : s["degrees"])
    os << row["m"].get<long>() << " " << row["ar"].get<std::size_t>() << " "
       << row["kr"].get<std::size_t>() << " " << row["er"].get<std::size_t>() << " "
       << row["kernel_dim"].get<std::size_t>() << "\n";
  const Json& au = r["audit"];
  if (au["applicable"].get<bool>()) {
    os << "audit: " << (au["ok"].get<bool>() ? "ok" : "VIOLATED") << "\n";
  } else {
    os << "audit: not applicable (" << au["reason"].get<std::string>() << ")\n";
  }
  for (const auto& f : a.failures) os << "FAILED: " << f << "\n";
}

}  // namespace jacsyz
