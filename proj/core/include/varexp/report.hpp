#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace varexp {

inline constexpr int kReportSchemaVersion = 1;

enum class Verdict {
  pass,      // hard bound asserted and held
  fail,      // hard bound asserted and violated
  measured,  // no constant claimed; ratios recorded
  refused    // hypotheses not met, nothing computed
};
std::string to_string(Verdict v);

struct RatioSample {
  std::size_t sample = 0;  // corpus index (or pair index)
  double t = 0.0;          // 0 when the inequality has no time parameter
  double ratio = 0.0;
  std::string branch;      // which case of a profile fired, if any
};

struct VerificationReport {
  std::string inequality_id;
  std::string anchor;  // the inequality being checked, in formula form
  nlohmann::json exponents = nlohmann::json::object();
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<double> t_grid;
  nlohmann::json corpus = nlohmann::json::object();
  std::vector<RatioSample> ratios;
  double max_ratio = 0.0;
  std::optional<double> hard_bound;
  std::optional<double> resolution_stability;  // max ratio at 2N over max ratio at N
  Verdict verdict = Verdict::measured;
  std::vector<std::string> notes;

  void add(RatioSample s);
  // Sets max_ratio and, when hard_bound is set, the pass/fail verdict.
  void finalize();
};

// Numbers with non-finite values spelled as "inf", "-inf" or "nan".
nlohmann::json json_number(double v);
nlohmann::json to_json(const VerificationReport& r);
// Header + one row per ratio sample.
std::string to_csv(const VerificationReport& r);
std::string csv_header();

// Deterministic serialisation: sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace varexp
