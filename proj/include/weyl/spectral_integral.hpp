// spectral_integral.hpp — Riemann-Stieltjes operator integrals against atomic spectral measures
#pragma once

#include "weyl/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace weyl {

struct Atom {
  double lambda = 0.0;
  int block_dim = 1;
};

struct SpectralMeasurePP {
  std::vector<Atom> atoms;  // strictly increasing lambda
  std::optional<std::pair<double, double>> window;
  int total_dim() const;
  void validate() const;  // throws DomainError
  // atoms lo, lo+1, ..., hi with unit multiplicity (the truncated number operator)
  static SpectralMeasurePP integers(int lo, int hi);
  static SpectralMeasurePP from_points(const std::vector<double>& lambdas);
};

struct OperatorFunctionOnR {
  int dim = 1;
  std::function<CMat(double)> eval;
  double alpha = 0.0;     // ||Omega(l)|| <= C0 (1 + |l|)^alpha
  double C0 = 1.0;
  bool certified = true;  // false when alpha came from a regression
  CMat operator()(double l) const { return eval(l); }
};

// blockdiag over multiplicity slots of Omega(lambda_k): slot-major ordering
CMat integral_pp(const OperatorFunctionOnR& omega, const SpectralMeasurePP& mu);

// piecewise-constant projection-valued measure on [a, b): jump j carries projection E_j
struct PCMeasure {
  double a = 0.0, b = 1.0;
  std::vector<double> jumps;
  std::vector<CMat> projections;
  int dim = 0;
  CMat F(double lo, double hi) const;  // F([lo, hi))
  CMat F_set(const std::vector<int>& jump_indices) const;
};

// E_k = P_k (x) I_d in slot-major ordering, so that lift_function(Omega) acts blockwise
PCMeasure lift_measure(const SpectralMeasurePP& mu, int d);
OperatorFunctionOnR lift_function(const OperatorFunctionOnR& omega, int total_dim);

struct RiemannResult {
  CMat value;
  int depth = 0;
  double last_change = 0.0;
};

inline constexpr int kMaxRefineDepth = 24;

// cells [l_{m-1}, l_m) from dyadic refinement merged with the jump points; left-endpoint tags
RiemannResult integral_riemann(const OperatorFunctionOnR& omega, const PCMeasure& F,
                               double tol = 1e-10, int max_depth = kMaxRefineDepth);

// max over probe sets and sample points of ||Omega F(d) - F(d) Omega F(d)||
double admissibility_residual(const OperatorFunctionOnR& omega, const PCMeasure& F,
                              const std::vector<std::vector<int>>& probe_sets,
                              const std::vector<double>& samples = {});

// || int phi(X) dF - phi(int X dF) || for a Hermitian family X commuting with F
double functional_calculus_residual(const OperatorFunctionOnR& X, const PCMeasure& F,
                                    const std::function<double(double)>& phi);

struct MomentDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationPlan {
  std::pair<double, double> window;
  std::size_t K = 0;        // last atom index kept
  double tail_bound = 0.0;  // C0^2 sum_{k > K} (1 + |l_k|)^{2 alpha} ||E_k f||^2
  bool certified = true;
};

TruncationPlan truncation_plan(const OperatorFunctionOnR& omega, const std::function<double(std::size_t)>& lambda_k,
                               const std::function<double(std::size_t)>& f_moment, double tol);

struct GrowthFit {
  double alpha = 0.0;  // log-log slope in (1 + lambda)
  double C0 = 0.0;     // smallest constant with norm <= C0 (1 + lambda)^alpha on the samples
};
GrowthFit fit_growth(const std::function<double(double)>& norm_of, double lo, double hi, int n = 41);

}  // namespace weyl
