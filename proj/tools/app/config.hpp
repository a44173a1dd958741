#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "varexp/exponents.hpp"
#include "varexp/inequalities.hpp"
#include "varexp/nse.hpp"
#include "varexp/semigroup.hpp"

namespace varexp::app {

// Schema violation; `where` is "line L, column C" or "line L: /json/pointer".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class Command { norm, verify, semigroup, solve, report };
std::string to_string(Command c);
std::optional<Command> command_from_string(const std::string& s);

struct GridConfig {
  int n = 1;
  std::size_t N = 256;
  double L = 8.0;
  BoundaryMode mode = BoundaryMode::truncated;
};

struct YoungConstantRCheck { ExponentDescriptor p; Exponent r; };
struct EtaHalfexpCheck { ExponentDescriptor p; double m; };
struct IntersectionYoungCheck { IntersectionExponents e; };
struct VariableRCheck { VariableRExponents e; };
struct FourAssertionCheck { FourAssertionInputs in; };
struct ProductCheck { ExponentDescriptor q; ProductVariant variant; double nu; double m; };
struct HolderCheck { ExponentDescriptor p, q; };
struct MinkowskiCheck { ExponentDescriptor p; };
struct EmbeddingCheck { ExponentDescriptor p, q; };
struct SmoothingCheck { SmoothingInputs in; };
struct SlopeCheck { double alpha, r, p, window; };

using Check = std::variant<YoungConstantRCheck, EtaHalfexpCheck, IntersectionYoungCheck, VariableRCheck,
                           FourAssertionCheck, ProductCheck, HolderCheck, MinkowskiCheck, EmbeddingCheck,
                           SmoothingCheck, SlopeCheck>;

struct NormConfig {
  std::vector<std::string> exponents;  // names into the exponent table
  std::vector<std::string> one_in;     // exponents s for ||1||_{L^s}
};

struct SolveConfig {
  double alpha = 1.0;
  double horizon = 0.5;
  std::size_t time_steps = 32;
  ExponentDescriptor p_time = ConstantExponent{Exponent::finite(6.0)};
  ExponentDescriptor q_space = ConstantExponent{Exponent::finite(12.0)};
  std::vector<Exponent> spatial_extra;
  std::vector<Vortex> vortices;  // explicit initial vortices
  std::optional<std::size_t> seeded_count;
  double seeded_width = 1.0;
  double amplitude = 1.0;
  std::vector<Vortex> forcing;  // steady forcing vortices
  double forcing_amplitude = 0.0;
  PicardOptions picard;
  std::optional<TheoremId> theorem;
  int hypothesis_dim = 3;
  std::size_t cb_corpus = 4;
};

struct OutputConfig {
  std::string directory = "varexp-out";
  bool json = true;
  bool csv = true;
};

struct RunConfig {
  std::optional<Command> command;
  GridConfig grid;
  std::map<std::string, ExponentDescriptor> exponents;
  CorpusSpec corpus;
  std::vector<double> t_grid = default_t_grid();
  double tol = kNormTolerance;
  bool resolution_study = false;
  std::uint64_t seed = 7;
  std::vector<Check> checks;
  NormConfig norm;
  SolveConfig solve;
  OutputConfig output;

  Grid make_grid() const;
  VerificationSetup setup() const;
};

// Parses and validates; throws ConfigError. `seed_from_cli` satisfies the
// seed requirement of randomized corpora.
RunConfig parse_config(const std::string& text, bool seed_from_cli = false);
RunConfig load_config(const std::string& path, bool seed_from_cli = false, std::string* raw_text = nullptr);

}  // namespace varexp::app
