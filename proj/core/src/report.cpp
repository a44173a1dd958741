#include "varexp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace varexp {

namespace {

std::string shortest(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::measured: return "measured";
    case Verdict::refused: return "refused";
  }
  return "unknown";
}

void VerificationReport::add(RatioSample s) { ratios.push_back(std::move(s)); }

void VerificationReport::finalize() {
  if (verdict == Verdict::refused) return;
  max_ratio = 0.0;
  for (const auto& s : ratios) max_ratio = std::max(max_ratio, s.ratio);
  if (hard_bound) verdict = max_ratio <= *hard_bound ? Verdict::pass : Verdict::fail;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : r.ratios) {
    nlohmann::json row = {{"sample", s.sample}, {"t", json_number(s.t)}, {"ratio", json_number(s.ratio)}};
    if (!s.branch.empty()) row["branch"] = s.branch;
    rows.push_back(std::move(row));
  }
  nlohmann::json t = nlohmann::json::array();
  for (double v : r.t_grid) t.push_back(json_number(v));
  nlohmann::json j = {
      {"schema_version", kReportSchemaVersion},
      {"inequality_id", r.inequality_id},
      {"anchor", r.anchor},
      {"exponents", r.exponents},
      {"parameters", r.parameters},
      {"t_grid", t},
      {"corpus", r.corpus},
      {"ratios", rows},
      {"max_ratio", json_number(r.max_ratio)},
      {"verdict", to_string(r.verdict)},
      {"notes", r.notes},
  };
  j["hard_bound"] = r.hard_bound ? json_number(*r.hard_bound) : nlohmann::json(nullptr);
  j["resolution_stability"] =
      r.resolution_stability ? json_number(*r.resolution_stability) : nlohmann::json(nullptr);
  return j;
}

std::string csv_header() { return "inequality_id,anchor,sample,t,ratio,branch\n"; }

std::string to_csv(const VerificationReport& r) {
  std::string out = csv_header();
  for (const auto& s : r.ratios) {
    out += csv_field(r.inequality_id) + "," + csv_field(r.anchor) + "," + std::to_string(s.sample) + "," + shortest(s.t) + "," +
           shortest(s.ratio) + "," + csv_field(s.branch) + "\n";
  }
  return out;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace varexp
