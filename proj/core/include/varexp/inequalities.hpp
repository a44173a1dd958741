#pragma once

#include <optional>
#include <vector>

#include "varexp/corpus.hpp"
#include "varexp/decay.hpp"
#include "varexp/exponents.hpp"
#include "varexp/norms.hpp"
#include "varexp/report.hpp"

namespace varexp {

std::vector<double> log_spaced(double lo, double hi, std::size_t points);
inline std::vector<double> default_t_grid() { return log_spaced(1e-2, 1e2, 16); }

// Shared inputs of the corpus-level verifiers. Exponents are passed as
// descriptors so the resolution study can rebuild them on the refined grid.
struct VerificationSetup {
  Grid grid = Grid::box(1, 256, 8.0);
  CorpusSpec corpus{};
  std::vector<double> t_grid = default_t_grid();
  bool resolution_study = false;
  double tol = kNormTolerance;
};

// ---- Young with variable p and constant r ---------------------------------

struct YoungConstantR {
  double lhs = 0.0;           // ||k * f||_r
  double norm_f = 0.0;        // ||f||_p
  double k_q_minus = 0.0;     // ||k||_{q-}
  double k_q_plus = 0.0;      // ||k||_{q+}
  double a = 0.0;             // ||k||_{q-} + ||k||_{q+}
  double nu = 0.0;
  double eta = 0.0;
  double constant = 0.0;      // A^nu (||k||_{q-}^{q-/r} + ||k||_{q+}^{q+/r})
  double ratio = 0.0;         // lhs / (constant * norm_f)
  bool constant_within_2a_eta = false;  // constant <= 2 A^eta
};
// q from 1/p + 1/q = 1 + 1/r; requires p+ and q+ finite.
YoungConstantR young_constant_r(const GridFunction& k, const GridFunction& f,
                                const ExponentField& p, Exponent r, double tol = kNormTolerance);
VerificationReport verify_young_constant_r(const VerificationSetup& setup,
                                           const ExponentDescriptor& p, Exponent r);

// ---- eta lemma: ||eta_{t,m} * f||_p <= C t^{-n d(t)} ||f||_{p/2} -----------

// Picks vartheta (p+ = p_inf < inf), vartheta_infty (p_inf = inf) or varphi
// (p- = p_inf) from the exponent's bounds.
DecayProfile eta_lemma_profile(const ExponentField& p);
VerificationReport eta_halfexp_check(const VerificationSetup& setup, const ExponentDescriptor& p,
                                     double m);

// ---- Young with intersection norms and constant 1 -------------------------

struct IntersectionExponents {
  Exponent p, q, r;
  ExponentDescriptor a, b;
};
// 1/p + 1/q + 1/r = 1, C = r(1 - A/p), D = r(1 - B/q):
//   ||k * f||_r <= ||k||_{A cap C} ||f||_{B cap D}
RatioResult intersection_young(const GridFunction& k, const GridFunction& f,
                               const ExponentField& a, const ExponentField& c,
                               const ExponentField& b, const ExponentField& d, Exponent r,
                               double tol = kNormTolerance);
VerificationReport verify_intersection_young(const VerificationSetup& setup,
                                             const IntersectionExponents& e);
// Extra pairs appended after the corpus pairs.
VerificationReport verify_intersection_young(const VerificationSetup& setup,
                                             const IntersectionExponents& e,
                                             std::span<const std::pair<GridFunction, GridFunction>> extra);

// Variable r with 1/p + 1/q = 1, C = r-(1 - A/(p (r')-)), D = r-(1 - B/(q (r')-)):
//   ||k * f||_{r(.)} <= ||k||_{A cap C cap inf} ||f||_{B cap D cap inf}
struct VariableRExponents {
  Exponent p, q;
  ExponentDescriptor r, a, b;
};
VerificationReport verify_intersection_young_variable_r(const VerificationSetup& setup,
                                                        const VariableRExponents& e);

// ---- four-assertion convolution theorem -----------------------------------

struct FourAssertionInputs {
  ExponentDescriptor p;  // data exponent
  ExponentDescriptor r;  // target exponent, p <= r
  double nu = 1.0;       // for the L^p cap L^nu assertion
  double m = 2.0;        // eta decay order
};
// Four reports, in assertion order.
std::vector<VerificationReport> four_assertion_check(const VerificationSetup& setup,
                                                     const FourAssertionInputs& in);

// ---- products: ||eta * (uv)||_X <= C b(t) ||u||_X ||v||_X ------------------

enum class ProductVariant {
  l_nu,        // X = L^q cap L^nu, b = max(t^{-n omega}, t^{-n/nu})
  l_two,       // X = L^q cap L^2,  b = max(t^{-n varsigma}, t^{-n/2})
  plain,       // X = L^q with q- = q_inf, b = t^{-n varphi}
  plain_two    // X = L^q with q- = q_inf = 2, b = t^{-n K}
};
std::string to_string(ProductVariant v);

// max(n * omega(t), n/nu) for the L^q cap L^nu product bound.
double product_effective_exponent(Exponent q_minus, Exponent q_plus, double nu, int dim, double t);

VerificationReport product_lemma_check(const VerificationSetup& setup, const ExponentDescriptor& q,
                                       ProductVariant variant, double nu, double m);

// ---- corpus-level Hoelder, Minkowski and embedding -------------------------

VerificationReport verify_holder(const VerificationSetup& setup, const ExponentDescriptor& p,
                                 const ExponentDescriptor& q);
VerificationReport verify_minkowski(const VerificationSetup& setup, const ExponentDescriptor& p);
VerificationReport verify_embedding(const VerificationSetup& setup, const ExponentDescriptor& p,
                                    const ExponentDescriptor& q);

nlohmann::json to_json(const ExponentDescriptor& d);
nlohmann::json to_json(Exponent e);

}  // namespace varexp
