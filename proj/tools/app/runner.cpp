#include "app/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "varexp/errors.hpp"
#include "varexp/parallel.hpp"
#include "varexp/report.hpp"

#ifndef VAREXP_VERSION
#define VAREXP_VERSION "unknown"
#endif

namespace varexp::app {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Sink {
 public:
  Sink(fs::path dir, const OutputConfig& out) : dir_(std::move(dir)), out_(out) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& body) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir_ / name).string());
    f << body;
    artifacts_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) {
    if (out_.json) write(name, dump_json(j));
  }
  void csv_file(const std::string& name, const std::string& body) {
    if (out_.csv) write(name, body);
  }
  const std::vector<std::string>& artifacts() const { return artifacts_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  OutputConfig out_;
  std::vector<std::string> artifacts_;
};

struct Outcome {
  int code = kExitOk;
  std::string message;
};

// ---- verify / semigroup --------------------------------------------------

std::vector<VerificationReport> run_check(const Check& check, const VerificationSetup& setup) {
  return std::visit(
      overloaded{
          [&](const YoungConstantRCheck& c) { return std::vector{verify_young_constant_r(setup, c.p, c.r)}; },
          [&](const EtaHalfexpCheck& c) { return std::vector{eta_halfexp_check(setup, c.p, c.m)}; },
          [&](const IntersectionYoungCheck& c) { return std::vector{verify_intersection_young(setup, c.e)}; },
          [&](const VariableRCheck& c) { return std::vector{verify_intersection_young_variable_r(setup, c.e)}; },
          [&](const FourAssertionCheck& c) { return four_assertion_check(setup, c.in); },
          [&](const ProductCheck& c) { return std::vector{product_lemma_check(setup, c.q, c.variant, c.nu, c.m)}; },
          [&](const HolderCheck& c) { return std::vector{verify_holder(setup, c.p, c.q)}; },
          [&](const MinkowskiCheck& c) { return std::vector{verify_minkowski(setup, c.p)}; },
          [&](const EmbeddingCheck& c) { return std::vector{verify_embedding(setup, c.p, c.q)}; },
          [&](const SmoothingCheck& c) { return std::vector{smoothing_check(setup, c.in)}; },
          [&](const SlopeCheck& c) {
            VerificationReport r;
            r.inequality_id = "smoothing_slope";
            r.anchor = "||g_{alpha,t} * phi||_{L^p} ~ t^{-(n/2 alpha)(1/r - 1/p)}";
            r.parameters = {{"alpha", c.alpha}, {"r", c.r}, {"p", c.p}, {"window", c.window}};
            r.t_grid = setup.t_grid;
            const SlopeFit fit = smoothing_slope(setup.grid, c.alpha, c.r, c.p, setup.t_grid, c.window);
            r.parameters["fitted_slope"] = fit.slope;
            r.parameters["expected_slope"] = fit.expected;
            r.parameters["intercept"] = fit.intercept;
            r.parameters["points"] = fit.points;
            r.add({0, 0.0, std::abs(fit.slope - fit.expected), "slope_error"});
            r.hard_bound = 0.02;
            r.finalize();
            return std::vector{r};
          },
      },
      check);
}

bool is_smoothing(const Check& c) {
  return std::holds_alternative<SmoothingCheck>(c) || std::holds_alternative<SlopeCheck>(c);
}

std::string check_name(const Check& c) {
  return std::visit(overloaded{
                        [](const YoungConstantRCheck&) { return "young_constant_r"; },
                        [](const EtaHalfexpCheck&) { return "eta_halfexp"; },
                        [](const IntersectionYoungCheck&) { return "intersection_young"; },
                        [](const VariableRCheck&) { return "intersection_young_variable_r"; },
                        [](const FourAssertionCheck&) { return "four_assertion"; },
                        [](const ProductCheck&) { return "product"; },
                        [](const HolderCheck&) { return "holder"; },
                        [](const MinkowskiCheck&) { return "minkowski"; },
                        [](const EmbeddingCheck&) { return "embedding"; },
                        [](const SmoothingCheck&) { return "smoothing"; },
                        [](const SlopeCheck&) { return "smoothing_slope"; },
                    },
                    c);
}

Outcome run_verify(const RunConfig& cfg, Command cmd, bool strict, Sink& sink, std::ostream& log) {
  const VerificationSetup setup = cfg.setup();
  std::vector<VerificationReport> reports;
  Outcome out;
  bool hypothesis_failed = false;
  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    const Check& c = cfg.checks[i];
    if (cmd == Command::semigroup && !is_smoothing(c)) {
      out.code = kExitConfigError;
      out.message = "/checks/" + std::to_string(i) + ": the semigroup command takes smoothing checks only";
      return out;
    }
    try {
      for (auto& r : run_check(c, setup)) reports.push_back(std::move(r));
    } catch (const HypothesisViolation& e) {
      VerificationReport r;
      r.inequality_id = check_name(c);
      r.verdict = Verdict::refused;
      r.notes.push_back(std::string("hypothesis violated: ") + e.what());
      reports.push_back(std::move(r));
      hypothesis_failed = true;
    }
  }
  if (cfg.checks.empty()) {
    out.code = kExitConfigError;
    out.message = "/checks: nothing to run";
    return out;
  }

  json arr = json::array();
  bool failed = false;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    arr.push_back(to_json(r));
    char idx[32];
    std::snprintf(idx, sizeof idx, "%02zu", i);
    sink.csv_file(std::string(idx) + "_" + r.inequality_id + ".csv", to_csv(r));
    if (r.verdict == Verdict::fail) failed = true;
    if (r.verdict == Verdict::refused) hypothesis_failed = true;
    log << std::left << std::setw(34) << r.inequality_id << " " << std::setw(9) << to_string(r.verdict)
        << " max_ratio=" << std::setprecision(6) << r.max_ratio;
    if (r.hard_bound) log << " bound=" << *r.hard_bound;
    log << "\n";
  }
  sink.json_file("reports.json",
                 {{"schema_version", kReportSchemaVersion}, {"command", to_string(cmd)}, {"reports", arr}});
  if (failed) {
    out.code = kExitAssertionFailed;
    out.message = "hard assertion failed";
  } else if (hypothesis_failed && strict) {
    out.code = kExitHypothesis;
    out.message = "hypothesis violation (strict mode)";
  }
  return out;
}

// ---- norm ----------------------------------------------------------------

Outcome run_norm(const RunConfig& cfg, Sink& sink, std::ostream& log) {
  if (cfg.norm.exponents.empty() && cfg.norm.one_in.empty())
    return {kExitConfigError, "/norm: give 'exponents' or 'one_in'"};
  const Grid g = cfg.make_grid();
  const auto corpus = generate_corpus(cfg.corpus, g);
  std::vector<ExponentField> fields;
  for (const auto& name : cfg.norm.exponents) fields.push_back(build_exponent(cfg.exponents.at(name), g));

  json rows = json::array();
  std::ostringstream csv;
  csv << "function,label,space,norm\n";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    json entry = {{"function", i}, {"label", corpus[i].label}};
    json norms = json::object();
    auto emit = [&](const std::string& space, double v) {
      norms[space] = json_number(v);
      csv << i << ",\"" << corpus[i].label << "\"," << space << "," << std::setprecision(17) << v << "\n";
    };
    for (std::size_t k = 0; k < fields.size(); ++k)
      emit(cfg.norm.exponents[k], luxemburg_norm(corpus[i].f, fields[k], cfg.tol));
    if (fields.size() > 1) {
      std::string name;
      for (const auto& n : cfg.norm.exponents) name += (name.empty() ? "" : "_cap_") + n;
      emit(name, intersection_norm(corpus[i].f, fields, cfg.tol));
    }
    entry["norms"] = norms;
    rows.push_back(entry);
  }
  json ones = json::array();
  for (const auto& name : cfg.norm.one_in) {
    const OneInLsResult r = one_in_Ls(build_exponent(cfg.exponents.at(name), g));
    ones.push_back({{"exponent", name},
                    {"value", json_number(r.value)},
                    {"small_box", json_number(r.small_box)},
                    {"large_box", json_number(r.large_box)},
                    {"stabilized", r.stabilized}});
    log << "||1||_{L^" << name << "} = " << std::setprecision(10) << r.value << (r.stabilized ? "" : " (not stabilized)")
        << "\n";
  }
  json exps = json::object();
  for (const auto& [name, d] : cfg.exponents) exps[name] = to_json(d);
  sink.json_file("norms.json", {{"schema_version", kReportSchemaVersion},
                                {"grid", {{"n", g.dim()}, {"N", g.nodes()}, {"L", g.half_width()}}},
                                {"corpus", to_json(cfg.corpus)},
                                {"exponents", exps},
                                {"functions", rows},
                                {"one_in_Ls", ones}});
  if (!fields.empty()) sink.csv_file("norms.csv", csv.str());
  log << "norms computed for " << corpus.size() << " functions\n";
  return {};
}

// ---- solve ---------------------------------------------------------------

ProblemSpec problem_spec(const RunConfig& cfg) {
  const SolveConfig& s = cfg.solve;
  ProblemSpec spec;
  spec.space = Grid::box(cfg.grid.n, cfg.grid.N, cfg.grid.L, BoundaryMode::periodic);
  spec.alpha = s.alpha;
  spec.horizon = s.horizon;
  spec.time_steps = s.time_steps;
  spec.p_time = s.p_time;
  spec.q_space = s.q_space;
  spec.spatial_extra = s.spatial_extra;
  std::vector<Vortex> vort = s.vortices;
  if (s.seeded_count) {
    const auto extra = seeded_vortices(spec.space, cfg.seed, *s.seeded_count, s.seeded_width);
    vort.insert(vort.end(), extra.begin(), extra.end());
  }
  spec.u0 = vortex_field(spec.space, vort);
  for (auto& c : spec.u0) c = c.scaled(s.amplitude);
  if (!s.forcing.empty()) {
    VectorField f = vortex_field(spec.space, s.forcing);
    for (auto& c : f) c = c.scaled(s.forcing_amplitude);
    spec.forcing = steady_velocity(f, spec.time());
  }
  return spec;
}

Outcome run_solve(const RunConfig& cfg, bool strict, Sink& sink, std::ostream& log) {
  if (cfg.grid.n < 2) return {kExitConfigError, "/grid/n: the solver needs n = 2 or 3"};
  ProblemSpec spec;
  try {
    spec = problem_spec(cfg);
    validate(spec);
  } catch (const InvalidArgument& e) {
    return {kExitConfigError, std::string("/problem: ") + e.what()};
  }
  const SolveConfig& s = cfg.solve;
  json doc = {{"schema_version", kReportSchemaVersion},
              {"problem",
               {{"n", spec.space.dim()},
                {"N", spec.space.nodes()},
                {"L", spec.space.half_width()},
                {"alpha", spec.alpha},
                {"horizon", spec.horizon},
                {"time_steps", spec.time_steps},
                {"p_time", to_json(spec.p_time)},
                {"q_space", to_json(spec.q_space)},
                {"seed", cfg.seed},
                {"amplitude", s.amplitude}}}};

  std::optional<ExistenceDiagnostics> diag;
  if (s.theorem) diag = existence_hypotheses(*s.theorem, hypothesis_inputs(spec, s.hypothesis_dim));

  Outcome out;
  auto flush = [&] {
    if (diag) doc["diagnostics"] = to_json(*diag);
    sink.json_file("solve.json", doc);
  };
  try {
    const VelocityField e0 = e0_term(spec);
    const double e0n = solution_norm(e0, spec);
    const auto corpus = divergence_free_corpus(spec.space, spec.time(), cfg.seed, s.cb_corpus);
    const double cb = measure_CB(spec, corpus);
    const double margin = 4.0 * cb * e0n;
    doc["contraction"] = {{"c_b", json_number(cb)}, {"e0_norm", json_number(e0n)}, {"margin", json_number(margin)}};
    if (diag) {
      diag->c_b = cb;
      diag->e0_norm = e0n;
      diag->contraction_margin = margin;
    }
    log << "C_B=" << std::setprecision(6) << cb << " ||e0||=" << e0n << " margin=4 C_B ||e0||=" << margin << "\n";
    if (strict && s.picard.nonlinear && (margin >= 1.0 || (diag && !diag->hypotheses_hold))) {
      flush();
      return {kExitHypothesis, margin >= 1.0 ? "contraction margin >= 1 (strict mode)"
                                             : "theorem hypotheses fail (strict mode)"};
    }
    const PicardResult res = picard_solve(spec, s.picard);
    doc["picard"] = to_json(res);
    std::ostringstream csv;
    csv << "iteration,residual,contraction_ratio,iterate_norm\n" << std::setprecision(17);
    for (std::size_t k = 0; k < res.residuals.size(); ++k) {
      csv << k + 1 << "," << res.residuals[k] << ",";
      if (k > 0 && k - 1 < res.contraction_ratios.size()) csv << res.contraction_ratios[k - 1];
      csv << "," << res.iterate_norms[k + 1] << "\n";
    }
    sink.csv_file("picard.csv", csv.str());
    log << "picard: iterations=" << res.iterations << " converged=" << (res.converged ? "yes" : "no")
        << " mild_residual=" << res.mild_residual << " ||u||=" << res.u_norm << "\n";
    if (!res.converged) out = {kExitAssertionFailed, "Picard iteration did not converge"};
  } catch (const NumericalAbort& e) {
    doc["abort"] = e.what();
    flush();
    return {kExitNumericalAbort, e.what()};
  }
  flush();
  return out;
}

// ---- report --------------------------------------------------------------

Outcome run_report(const fs::path& dir, std::ostream& log) {
  bool any = false, failed = false;
  for (const char* name : {"reports.json", "solve.json", "norms.json"}) {
    std::ifstream in(dir / name);
    if (!in) continue;
    any = true;
    const json j = json::parse(in);
    log << "== " << name << "\n";
    if (j.contains("reports"))
      for (const auto& r : j["reports"]) {
        log << "  " << std::left << std::setw(34) << r["inequality_id"].get<std::string>() << " "
            << std::setw(9) << r["verdict"].get<std::string>() << " max_ratio=" << r["max_ratio"].dump() << "\n";
        if (r["verdict"] == "fail") failed = true;
      }
    if (j.contains("picard")) {
      const auto& p = j["picard"];
      log << "  iterations=" << p["iterations"].dump() << " converged=" << p["converged"].dump()
          << " mild_residual=" << p["mild_residual"].dump() << "\n";
      if (!p["converged"].get<bool>()) failed = true;
    }
    if (j.contains("diagnostics"))
      log << "  theorem=" << j["diagnostics"]["theorem"].get<std::string>()
          << " hypotheses_hold=" << j["diagnostics"]["hypotheses_hold"].dump() << "\n";
    if (j.contains("functions")) log << "  functions=" << j["functions"].size() << "\n";
  }
  if (!any) return {kExitConfigError, "no reports found in " + dir.string()};
  return failed ? Outcome{kExitAssertionFailed, "report contains failures"} : Outcome{};
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int run(const CliOptions& options, std::ostream& log) {
  std::string raw;
  RunConfig cfg;
  const bool need_config = options.command != Command::report || !options.out_dir;
  try {
    if (need_config || !options.config_path.empty())
      cfg = load_config(options.config_path, options.seed.has_value(), &raw);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (cfg.command && *cfg.command != options.command) {
    log << "config error: /command: config is for '" << to_string(*cfg.command) << "', not '"
        << to_string(options.command) << "'\n";
    return kExitConfigError;
  }
  if (options.seed) {
    cfg.seed = *options.seed;
    cfg.corpus.seed = *options.seed;
  }
  const fs::path dir = options.out_dir ? fs::path(*options.out_dir) : fs::path(cfg.output.directory);

  if (options.command == Command::report) {
    Outcome o;
    try {
      o = run_report(dir, log);
    } catch (const std::exception& e) {
      o = {kExitConfigError, e.what()};
    }
    if (!o.message.empty()) log << o.message << "\n";
    return o.code;
  }

  const std::string started = utc_now();
  Outcome o;
  std::unique_ptr<Sink> sink;
  try {
    sink = std::make_unique<Sink>(dir, cfg.output);
    switch (options.command) {
      case Command::norm: o = run_norm(cfg, *sink, log); break;
      case Command::verify:
      case Command::semigroup: o = run_verify(cfg, options.command, options.strict, *sink, log); break;
      case Command::solve: o = run_solve(cfg, options.strict, *sink, log); break;
      case Command::report: break;
    }
  } catch (const HypothesisViolation& e) {
    o = {options.strict ? kExitHypothesis : kExitAssertionFailed, std::string("hypothesis violated: ") + e.what()};
  } catch (const NumericalAbort& e) {
    o = {kExitNumericalAbort, std::string("numerical abort: ") + e.what()};
  } catch (const Error& e) {
    o = {kExitConfigError, e.what()};
  } catch (const fs::filesystem_error& e) {
    o = {kExitConfigError, e.what()};
  }
  if (!o.message.empty()) log << o.message << "\n";
  if (sink) {
    json manifest = {{"schema_version", kReportSchemaVersion},
                     {"tool", "varexp"},
                     {"version", VAREXP_VERSION},
                     {"command", to_string(options.command)},
                     {"config_path", options.config_path},
                     {"config_fnv1a64", fnv1a_hex(raw)},
                     {"seed", cfg.seed},
                     {"strict", options.strict},
                     {"threads", thread_count()},
                     {"started_utc", started},
                     {"finished_utc", utc_now()},
                     {"exit_code", o.code},
                     {"message", o.message},
                     {"artifacts", sink->artifacts()}};
    try {
      sink->write("manifest.json", dump_json(manifest));
    } catch (const Error& e) {
      log << e.what() << "\n";
    }
  }
  return o.code;
}

}  // namespace varexp::app
