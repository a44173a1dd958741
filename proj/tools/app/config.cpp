#include "app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "varexp/errors.hpp"

namespace varexp::app {

namespace {

using json = nlohmann::json;

std::size_t line_of(const std::string& text, std::size_t pos) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(std::min(pos, text.size())), '\n'));
}

// Walks object keys of a JSON pointer through the raw text to find the line of
// the offending field. Array indices are not tracked.
std::size_t locate(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& token : path) {
    if (!token.empty() && std::ranges::all_of(token, [](char c) { return c >= '0' && c <= '9'; })) continue;
    const std::size_t hit = text.find("\"" + token + "\"", pos);
    if (hit == std::string::npos) break;
    pos = hit;
  }
  return line_of(text, pos);
}

class Node {
 public:
  Node(const json& j, std::vector<std::string> path, const std::string& text)
      : j_(j), path_(std::move(path)), text_(text) {}

  [[noreturn]] void fail(const std::string& message) const {
    std::string ptr;
    for (const auto& t : path_) ptr += "/" + t;
    if (ptr.empty()) ptr = "/";
    throw ConfigError("line " + std::to_string(locate(text_, path_)) + ": " + ptr, message);
  }

  const json& raw() const { return j_; }
  bool has(const std::string& key) const { return j_.contains(key); }

  Node at(const std::string& key) const {
    if (!j_.contains(key)) fail("missing required field '" + key + "'");
    return child(key);
  }
  std::optional<Node> opt(const std::string& key) const {
    if (!j_.contains(key)) return std::nullopt;
    return child(key);
  }
  Node child(const std::string& key) const {
    auto p = path_;
    p.push_back(key);
    return Node(j_.at(key), std::move(p), text_);
  }
  std::vector<Node> items() const {
    if (!j_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) {
      auto p = path_;
      p.push_back(std::to_string(i));
      out.emplace_back(j_[i], std::move(p), text_);
    }
    return out;
  }
  std::vector<std::pair<std::string, Node>> members() const {
    object();
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_.begin(); it != j_.end(); ++it) out.emplace_back(it.key(), child(it.key()));
    return out;
  }

  void object() const {
    if (!j_.is_object()) fail("expected an object");
  }
  void allow(std::initializer_list<const char*> keys) const {
    object();
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!ok.contains(it.key())) child(it.key()).fail("unknown field '" + it.key() + "'");
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }
  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("expected a positive number");
    return v;
  }
  std::uint64_t unsigned_int() const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<long long>() >= 0))
      fail("expected a non-negative integer");
    return j_.get<std::uint64_t>();
  }
  std::size_t count(std::size_t min = 1) const {
    const auto v = unsigned_int();
    if (v < min) fail("expected an integer >= " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  // number or "inf"
  Exponent exponent_value() const {
    if (j_.is_string()) {
      if (j_.get<std::string>() == "inf") return Exponent::infinity();
      fail("expected a number >= 1 or \"inf\"");
    }
    const double v = number();
    if (v < 1.0) fail("exponents must be >= 1");
    return Exponent::finite(v);
  }

 private:
  const json& j_;
  std::vector<std::string> path_;
  const std::string& text_;
};

ExponentDescriptor parse_descriptor(const Node& n) {
  const std::string family = n.at("family").string();
  if (family == "constant") {
    n.allow({"family", "value"});
    return ConstantExponent{n.at("value").exponent_value()};
  }
  if (family == "affine_radial") {
    n.allow({"family", "base", "slope"});
    return AffineRadialExponent{n.at("base").number(), n.at("slope").number()};
  }
  if (family == "exponential_approach") {
    n.allow({"family", "limit", "depth", "rate"});
    return ExponentialApproachExponent{n.at("limit").number(), n.at("depth").number(), n.at("rate").positive()};
  }
  if (family == "sinusoidal_bounded") {
    n.allow({"family", "base", "amplitude", "frequency", "power"});
    SinusoidalExponent s{n.at("base").number(), n.at("amplitude").number(), n.at("frequency").number(), 1.0};
    if (auto p = n.opt("power")) s.power = p->positive();
    return s;
  }
  if (family == "piecewise_infinity") {
    n.allow({"family", "inner", "radius", "outer"});
    PiecewiseInfinityExponent p{n.at("inner").number(), n.at("radius").positive(), Exponent::infinity()};
    if (auto o = n.opt("outer")) p.outer = o->exponent_value();
    return p;
  }
  n.child("family").fail("unknown exponent family '" + family + "'");
}

class Parser {
 public:
  Parser(const std::string& text, bool seed_from_cli) : text_(text), seed_from_cli_(seed_from_cli) {}

  RunConfig run(const json& root) {
    Node top(root, {}, text_);
    top.allow({"command", "grid", "exponents", "corpus", "t_grid", "tol", "resolution_study", "seed", "checks",
               "norm", "problem", "output"});
    RunConfig c;
    if (auto n = top.opt("command")) {
      c.command = command_from_string(n->string());
      if (!c.command) n->fail("unknown command '" + n->string() + "'");
    }
    if (auto n = top.opt("seed")) {
      c.seed = n->unsigned_int();
      seed_given_ = true;
    }
    c.corpus.seed = c.seed;
    if (auto n = top.opt("grid")) c.grid = grid(*n);
    if (auto n = top.opt("exponents"))
      for (const auto& [name, d] : n->members()) {
        if (name == "inf") d.fail("'inf' is reserved");
        c.exponents.emplace(name, parse_descriptor(d));
      }
    table_ = &c.exponents;
    if (auto n = top.opt("corpus")) corpus(*n, c);
    require_seed(top, c);
    if (auto n = top.opt("t_grid")) {
      n->allow({"min", "max", "points"});
      const double lo = n->at("min").positive(), hi = n->at("max").positive();
      if (!(hi > lo)) n->child("max").fail("max must exceed min");
      c.t_grid = log_spaced(lo, hi, n->at("points").count(2));
    }
    if (auto n = top.opt("tol")) c.tol = n->positive();
    if (auto n = top.opt("resolution_study")) c.resolution_study = n->boolean();
    if (auto n = top.opt("checks"))
      for (const auto& item : n->items()) c.checks.push_back(check(item));
    if (auto n = top.opt("norm")) {
      n->allow({"exponents", "one_in"});
      if (auto e = n->opt("exponents"))
        for (const auto& item : e->items()) c.norm.exponents.push_back(name_ref(item));
      if (auto e = n->opt("one_in"))
        for (const auto& item : e->items()) c.norm.one_in.push_back(name_ref(item));
    }
    if (auto n = top.opt("problem")) c.solve = problem(*n);
    if (auto n = top.opt("output")) {
      n->allow({"directory", "formats"});
      if (auto d = n->opt("directory")) c.output.directory = d->string();
      if (auto f = n->opt("formats")) {
        c.output.json = c.output.csv = false;
        for (const auto& item : f->items()) {
          const std::string s = item.string();
          if (s == "json") c.output.json = true;
          else if (s == "csv") c.output.csv = true;
          else item.fail("format must be \"json\" or \"csv\"");
        }
      }
    }
    return c;
  }

 private:
  GridConfig grid(const Node& n) {
    n.allow({"n", "N", "L", "boundary_mode"});
    GridConfig g;
    if (auto v = n.opt("n")) {
      g.n = static_cast<int>(v->count(1));
      if (g.n > 3) v->fail("n must be 1, 2 or 3");
    }
    if (auto v = n.opt("N")) {
      g.N = v->count(4);
      if (g.N % 2 != 0) v->fail("N must be even");
    }
    if (auto v = n.opt("L")) g.L = v->positive();
    if (auto v = n.opt("boundary_mode")) {
      const std::string m = v->string();
      if (m == "truncated") g.mode = BoundaryMode::truncated;
      else if (m == "periodic") g.mode = BoundaryMode::periodic;
      else v->fail("boundary_mode must be \"truncated\" or \"periodic\"");
    }
    return g;
  }

  void corpus(const Node& n, RunConfig& c) {
    n.allow({"families", "seed", "count"});
    if (auto v = n.opt("count")) c.corpus.count = v->count(1);
    if (auto v = n.opt("families")) {
      c.corpus.families.clear();
      for (const auto& item : v->items()) {
        const std::string f = item.string();
        if (f != "gaussian" && f != "bump" && f != "band_limited")
          item.fail("family must be gaussian, bump or band_limited");
        c.corpus.families.push_back(f);
      }
    }
    if (auto v = n.opt("seed")) {
      c.corpus.seed = v->unsigned_int();
      seed_given_ = true;
    }
  }

  // A corpus that reaches the seeded band-limited fields needs an explicit seed.
  void require_seed(const Node& top, const RunConfig& c) {
    auto has = [&](const char* f) { return std::ranges::find(c.corpus.families, f) != c.corpus.families.end(); };
    const std::size_t fixed = (has("gaussian") ? 9 : 0) + (has("bump") ? 9 : 0);
    if (has("band_limited") && c.corpus.count > fixed && !seed_given_ && !seed_from_cli_)
      top.fail("missing 'seed' (or corpus.seed): the corpus includes seeded band_limited fields");
  }

  std::string name_ref(const Node& n) {
    const std::string s = n.string();
    if (!table_->contains(s)) n.fail("exponent '" + s + "' is not defined in /exponents");
    return s;
  }

  // Name from the exponent table, a number, or "inf".
  ExponentDescriptor ref(const Node& n) {
    if (n.raw().is_string() && n.raw().get<std::string>() != "inf") {
      const auto it = table_->find(n.raw().get<std::string>());
      if (it == table_->end()) n.fail("exponent '" + n.raw().get<std::string>() + "' is not defined in /exponents");
      return it->second;
    }
    return ConstantExponent{n.exponent_value()};
  }

  Exponent constant(const Node& n) {
    const ExponentDescriptor d = ref(n);
    if (const auto* c = std::get_if<ConstantExponent>(&d)) return c->value;
    n.fail("expected a constant exponent");
  }

  Check check(const Node& n) {
    const std::string kind = n.at("inequality").string();
    if (kind == "young_constant_r") {
      n.allow({"inequality", "p", "r"});
      return YoungConstantRCheck{ref(n.at("p")), constant(n.at("r"))};
    }
    if (kind == "eta_halfexp") {
      n.allow({"inequality", "p", "m"});
      return EtaHalfexpCheck{ref(n.at("p")), m_value(n)};
    }
    if (kind == "intersection_young") {
      n.allow({"inequality", "p", "q", "r", "A", "B"});
      return IntersectionYoungCheck{{constant(n.at("p")), constant(n.at("q")), constant(n.at("r")),
                                     ref(n.at("A")), ref(n.at("B"))}};
    }
    if (kind == "intersection_young_variable_r") {
      n.allow({"inequality", "p", "q", "r", "A", "B"});
      return VariableRCheck{{constant(n.at("p")), constant(n.at("q")), ref(n.at("r")), ref(n.at("A")),
                             ref(n.at("B"))}};
    }
    if (kind == "four_assertion") {
      n.allow({"inequality", "p", "r", "nu", "m"});
      return FourAssertionCheck{{ref(n.at("p")), ref(n.at("r")), n.at("nu").positive(), m_value(n)}};
    }
    if (kind == "product") {
      n.allow({"inequality", "q", "variant", "nu", "m"});
      const std::string v = n.at("variant").string();
      ProductVariant pv{};
      if (v == "l_nu") pv = ProductVariant::l_nu;
      else if (v == "l_two") pv = ProductVariant::l_two;
      else if (v == "plain") pv = ProductVariant::plain;
      else if (v == "plain_two") pv = ProductVariant::plain_two;
      else n.child("variant").fail("variant must be l_nu, l_two, plain or plain_two");
      const double nu = n.has("nu") ? n.at("nu").positive() : 2.0;
      return ProductCheck{ref(n.at("q")), pv, nu, m_value(n)};
    }
    if (kind == "holder") {
      n.allow({"inequality", "p", "q"});
      return HolderCheck{ref(n.at("p")), ref(n.at("q"))};
    }
    if (kind == "minkowski") {
      n.allow({"inequality", "p"});
      return MinkowskiCheck{ref(n.at("p"))};
    }
    if (kind == "embedding") {
      n.allow({"inequality", "p", "q"});
      return EmbeddingCheck{ref(n.at("p")), ref(n.at("q"))};
    }
    if (kind == "smoothing") {
      n.allow({"inequality", "r", "p", "alpha", "variant", "nu", "fit_slope", "slope_window"});
      SmoothingInputs in;
      in.r = ref(n.at("r"));
      in.p = ref(n.at("p"));
      in.alpha = n.at("alpha").positive();
      const std::string v = n.at("variant").string();
      if (v == "sigma") in.variant = SmoothingVariant::sigma;
      else if (v == "omega") in.variant = SmoothingVariant::omega;
      else if (v == "psi") in.variant = SmoothingVariant::psi;
      else n.child("variant").fail("variant must be sigma, omega or psi");
      if (auto x = n.opt("nu")) in.nu = x->positive();
      if (auto x = n.opt("fit_slope")) in.fit_slope = x->boolean();
      if (auto x = n.opt("slope_window")) in.slope_window = x->positive();
      return SmoothingCheck{in};
    }
    if (kind == "smoothing_slope") {
      n.allow({"inequality", "alpha", "r", "p", "window"});
      const double w = n.has("window") ? n.at("window").positive() : 0.6;
      return SlopeCheck{n.at("alpha").positive(), n.at("r").positive(), n.at("p").positive(), w};
    }
    n.child("inequality").fail("unknown inequality '" + kind + "'");
  }

  double m_value(const Node& n) { return n.has("m") ? n.at("m").positive() : 4.0; }

  std::vector<Vortex> vortices(const Node& n) {
    std::vector<Vortex> out;
    for (const auto& item : n.items()) {
      item.allow({"center", "strength", "width"});
      Vortex v;
      const auto c = item.at("center").items();
      if (c.size() > 3) item.child("center").fail("at most 3 coordinates");
      for (std::size_t a = 0; a < c.size(); ++a) v.center[a] = c[a].number();
      v.strength = item.at("strength").number();
      v.width = item.at("width").positive();
      out.push_back(v);
    }
    return out;
  }

  SolveConfig problem(const Node& n) {
    n.allow({"alpha", "horizon", "time_steps", "p_time", "q_space", "spatial_extra", "initial", "forcing",
             "picard", "theorem", "hypothesis_dim", "cb_corpus"});
    SolveConfig s;
    if (auto v = n.opt("alpha")) s.alpha = v->positive();
    if (auto v = n.opt("horizon")) s.horizon = v->positive();
    if (auto v = n.opt("time_steps")) s.time_steps = v->count(3);
    if (auto v = n.opt("p_time")) s.p_time = ref(*v);
    if (auto v = n.opt("q_space")) s.q_space = ref(*v);
    if (auto v = n.opt("spatial_extra"))
      for (const auto& item : v->items()) s.spatial_extra.push_back(item.exponent_value());
    const Node init = n.at("initial");
    init.allow({"vortices", "seeded", "amplitude"});
    if (auto v = init.opt("vortices")) s.vortices = vortices(*v);
    if (auto v = init.opt("seeded")) {
      v->allow({"count", "width"});
      s.seeded_count = v->at("count").count(1);
      s.seeded_width = v->at("width").positive();
    }
    if (s.vortices.empty() && !s.seeded_count) init.fail("give 'vortices' or 'seeded'");
    if (auto v = init.opt("amplitude")) s.amplitude = v->number();
    if (auto f = n.opt("forcing")) {
      f->allow({"vortices", "amplitude"});
      s.forcing = vortices(f->at("vortices"));
      s.forcing_amplitude = f->has("amplitude") ? f->at("amplitude").number() : 1.0;
    }
    if (auto p = n.opt("picard")) {
      p->allow({"max_iters", "residual_tol", "damping", "nonlinear", "divergence_window"});
      if (auto v = p->opt("max_iters")) s.picard.max_iters = v->count(1);
      if (auto v = p->opt("residual_tol")) s.picard.residual_tol = v->positive();
      if (auto v = p->opt("damping")) {
        s.picard.damping = v->positive();
        if (s.picard.damping > 1.0) v->fail("damping must lie in (0, 1]");
      }
      if (auto v = p->opt("nonlinear")) s.picard.nonlinear = v->boolean();
      if (auto v = p->opt("divergence_window")) s.picard.divergence_window = v->count(1);
    }
    if (auto v = n.opt("theorem")) {
      s.theorem = theorem_from_string(v->string());
      if (!s.theorem) v->fail("unknown theorem '" + v->string() + "'");
    }
    if (auto v = n.opt("hypothesis_dim")) s.hypothesis_dim = static_cast<int>(v->count(1));
    if (auto v = n.opt("cb_corpus")) s.cb_corpus = v->count(1);
    return s;
  }

  const std::string& text_;
  bool seed_from_cli_ = false;
  bool seed_given_ = false;
  const std::map<std::string, ExponentDescriptor>* table_ = nullptr;
};

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::norm: return "norm";
    case Command::verify: return "verify";
    case Command::semigroup: return "semigroup";
    case Command::solve: return "solve";
    case Command::report: return "report";
  }
  return "unknown";
}

std::optional<Command> command_from_string(const std::string& s) {
  for (Command c : {Command::norm, Command::verify, Command::semigroup, Command::solve, Command::report})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

Grid RunConfig::make_grid() const { return Grid::box(grid.n, grid.N, grid.L, grid.mode); }

VerificationSetup RunConfig::setup() const {
  VerificationSetup s;
  s.grid = make_grid();
  s.corpus = corpus;
  s.t_grid = t_grid;
  s.resolution_study = resolution_study;
  s.tol = tol;
  return s;
}

RunConfig parse_config(const std::string& text, bool seed_from_cli) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = e.byte == 0 ? 0 : e.byte - 1;
    const std::size_t line = line_of(text, pos);
    const std::size_t start = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    const std::size_t column = start == std::string::npos ? pos + 1 : pos - start;
    std::string msg = e.what();
    if (const auto cut = msg.find("parse error"); cut != std::string::npos) msg = msg.substr(cut);
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column), msg);
  }
  if (!root.is_object()) throw ConfigError("line 1", "the config must be a JSON object");
  try {
    return Parser(text, seed_from_cli).run(root);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("config", e.what());
  }
}

RunConfig load_config(const std::string& path, bool seed_from_cli, std::string* raw_text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot read config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (raw_text) *raw_text = text;
  return parse_config(text, seed_from_cli);
}

}  // namespace varexp::app
