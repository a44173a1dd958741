#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "varexp/exponents.hpp"
#include "varexp/grid.hpp"
#include "varexp/norms.hpp"

namespace varexp {

using VectorField = std::vector<GridFunction>;

// Velocity on the time grid (0, T] plus its trace at t = 0.
struct VelocityField {
  VectorField initial;
  SpaceTimeField field;
};

VelocityField zero_velocity(const Grid& space, const Grid& time);
VelocityField steady_velocity(const VectorField& u, const Grid& time);

// P = I - xi xi^T / |xi|^2 on the periodic box (xi = 0 passes through).
VectorField leray_project(const VectorField& u);
// max |div u| computed spectrally.
double max_divergence(const VectorField& u);
double max_divergence(const VelocityField& u);

// Sum of Gaussian vortices, u = curl psi with psi = sum_i s_i exp(-|x-c_i|^2/(2 w^2)).
// n = 2 uses the scalar stream function; n = 3 uses psi as the (1,1,1)-directed
// vector potential.
struct Vortex {
  Point center{0.0, 0.0, 0.0};
  double strength = 1.0;
  double width = 1.0;
};
VectorField vortex_field(const Grid& space, std::span<const Vortex> vortices);
std::vector<Vortex> seeded_vortices(const Grid& space, std::uint64_t seed, std::size_t count,
                                    double width);

struct ProblemSpec {
  Grid space = Grid::box(2, 64, 10.0, BoundaryMode::periodic);
  double alpha = 1.0;
  double horizon = 0.5;
  std::size_t time_steps = 32;
  VectorField u0;
  std::optional<VelocityField> forcing;
  ExponentDescriptor p_time = ConstantExponent{Exponent::finite(6.0)};
  ExponentDescriptor q_space = ConstantExponent{Exponent::finite(12.0)};
  // Further spatial spaces intersected with L^q (e.g. inf or nu).
  std::vector<Exponent> spatial_extra;
  double divergence_tol = 1e-10;

  Grid time() const { return Grid::time_axis(horizon, time_steps); }
};
void validate(const ProblemSpec& spec);

struct DuhamelOptions {
  bool self_check = true;
  // Relative size of fourth time differences of the integrand above which the
  // time grid is declared too coarse.
  double coarse_threshold = 0.25;
};

// g_t * u0 + int_0^t g_{t-s} * f(s) ds
VelocityField e0_term(const ProblemSpec& spec, const DuhamelOptions& options = {});

// B(u, v)_j(t) = - sum_{h,k} int_0^t K^{j;h,k}_{alpha,t-s} * (u_h v_k)(s) ds,
// integrated mode by mode with exponential product weights on cubic
// interpolants of the integrand.
VelocityField bilinear_B(const VelocityField& u, const VelocityField& v, double alpha,
                         const DuhamelOptions& options = {});

// Norm of the solution space L^{p(t)}(0,T; L^{q(x)} cap extras).
double solution_norm(const VelocityField& u, const ProblemSpec& spec);
double mild_residual(const VelocityField& u, const ProblemSpec& spec);

struct PicardOptions {
  std::size_t max_iters = 50;
  double residual_tol = 1e-9;
  double damping = 1.0;
  bool nonlinear = true;
  std::size_t divergence_window = 3;
};

struct PicardResult {
  VelocityField u;
  VelocityField e0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> residuals;           // ||u_{k+1} - u_k||
  std::vector<double> contraction_ratios;  // residual_k / residual_{k-1}
  std::vector<double> iterate_norms;
  double e0_norm = 0.0;
  double u_norm = 0.0;
  double mild_residual = 0.0;
};

PicardResult picard_solve(const ProblemSpec& spec, const PicardOptions& options = {});

// max ||B(u,u)|| / ||u||^2 over the corpus; throws when every field vanishes.
double measure_CB(const ProblemSpec& spec, std::span<const VelocityField> corpus);
std::vector<VelocityField> divergence_free_corpus(const Grid& space, const Grid& time,
                                                  std::uint64_t seed, std::size_t count);

// ---- existence theorems ----------------------------------------------------

enum class TheoremId {
  local_lq,                // q+ = q_inf < inf
  local_lq_infinite_limit, // q_inf = inf
  local_lq_cap_linf,       // L^q cap L^inf
  local_lq_cap_lnu,        // L^q cap L^nu
  local_lq_minus_limit,    // q- = q_inf
  local_1d_lq_cap_l2,      // one space dimension, L^q cap L^2
  global_lq_cap_linf,      // (0, inf), L^q cap L^inf, p- = p_inf = 2a/(2a-1)
  global_constant_q,       // (0, inf), constant q
  global_finite_horizon    // finite horizon, global in the data size
};
std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& s);
std::vector<TheoremId> all_theorems();

struct HypothesisInputs {
  double alpha = 1.0;
  int dim = 3;
  ExponentBounds p;  // time exponent
  ExponentBounds q;  // space exponent
  std::optional<double> nu;
  std::optional<bool> p_log_holder;
  std::optional<bool> q_log_holder;
};

struct HypothesisCheck {
  std::string condition;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool implied = false;  // consequence of other conditions, listed for diagnostics
};

struct ExistenceDiagnostics {
  TheoremId theorem = TheoremId::local_lq;
  std::vector<HypothesisCheck> checks;
  bool hypotheses_hold = false;
  std::optional<double> time_profile;  // decay exponent at t <= 1 used by the theorem
  std::optional<double> p_tilde_plus;  // p-/(p- - 2)
  std::optional<double> delta;         // power of T in the contraction constant
  std::optional<double> riesz_gamma;   // 1 - 1/(2 alpha), global theorems
  // Filled in by a solve.
  std::optional<double> c_b;
  std::optional<double> e0_norm;
  std::optional<double> contraction_margin;  // 4 C_B ||e0||
};

ExistenceDiagnostics existence_hypotheses(TheoremId theorem, const HypothesisInputs& inputs);
HypothesisInputs hypothesis_inputs(const ProblemSpec& spec, int dim);

nlohmann::json to_json(const ExistenceDiagnostics& d);
nlohmann::json to_json(const PicardResult& r);

}  // namespace varexp
