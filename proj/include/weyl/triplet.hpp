// triplet.hpp — boundary triplets: Weyl functions, gamma-fields, Krein corrections, normalization
#pragma once

#include "weyl/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace weyl {

using MatFn = std::function<CMat(cplx)>;

struct WeylFunction {
  int dim = 0;
  MatFn eval;
  MatFn derivative;                      // analytic M'(z) when the model knows it
  std::function<bool(double)> in_gap;    // real points of rho(S0); empty = unknown
  std::string resolvent_hint;
  CMat operator()(cplx z) const { return eval(z); }
};

// One branch of the spatial domain.  fn(x) is ncomp x d (rows: function components,
// columns: boundary coordinates).  Different pieces are orthogonal parts of the ambient space.
enum class Extent { Finite, ToPlusInf, ToMinusInf };

struct KernelPiece {
  Extent extent = Extent::Finite;
  double lo = 0.0, hi = 0.0;   // ToPlusInf uses lo, ToMinusInf uses hi
  double decay = 0.0;          // envelope rate: |fn(x)| <~ exp(-decay * distance to the endpoint)
  std::function<CMat(double)> fn;
  std::function<CMat(double)> dfn;  // optional x-derivative
  bool contains(double x) const;
};

struct AnalyticKernel {
  int dim = 0;
  std::vector<KernelPiece> pieces;
  CMat operator()(std::size_t piece, double x) const { return pieces.at(piece).fn(x); }
  // first piece whose (open) domain contains x
  std::optional<std::size_t> locate(double x) const;
};

struct GammaImage {
  std::variant<CMat, AnalyticKernel> rep;
  bool dense() const { return std::holds_alternative<CMat>(rep); }
  const CMat& matrix() const { return std::get<CMat>(rep); }
  const AnalyticKernel& kernel() const { return std::get<AnalyticKernel>(rep); }
  int dim() const;
};

GammaImage right_multiply(const GammaImage& g, const CMat& w);
// gamma(zeta)^* gamma(z); kernels go through adaptive Gauss-Kronrod with tail truncation
CMat gram(const GammaImage& left, const GammaImage& right);

struct GammaField {
  int dim = 0;
  std::function<GammaImage(cplx)> eval;
  GammaImage operator()(cplx z) const { return eval(z); }
};

struct BoundaryCondition {
  enum class Kind { Theta0, Theta1, Operator } kind = Kind::Theta0;
  CMat B;
  static BoundaryCondition theta0() { return {Kind::Theta0, CMat()}; }
  static BoundaryCondition theta1() { return {Kind::Theta1, CMat()}; }
  static BoundaryCondition op(const CMat& b);  // validates Hermiticity to 1e-14
};

struct BoundaryTriplet {
  WeylFunction weyl;
  GammaField gamma;
  std::string label;
  bool normalized = false;
  bool krein_allowed = true;  // false for the plain direct-sum diagnostic
  // dense reference resolvent (S0 - z)^{-1}, when an ambient matrix model exists
  MatFn s0_resolvent;
  // Green kernel of S0 for kernel representations: (z, piece_x, x, piece_y, y)
  std::function<cplx(cplx, std::size_t, double, std::size_t, double)> s0_green;
  int dim() const { return weyl.dim; }
};

struct KreinCorrection {
  bool zero = false;
  std::variant<std::monostate, CMat, AnalyticKernel> left;  // gamma(z)
  std::variant<std::monostate, CMat, AnalyticKernel> right; // gamma(conj z)
  CMat core;                                                // (B - M(z))^{-1}
  // dense: the n x n correction
  CMat dense() const;
  // kernel: gamma_z(x) core gamma_{conj z}(y)^*, an ncomp x ncomp block
  CMat kernel(std::size_t px, double x, std::size_t py, double y) const;
};

inline constexpr double kKreinCondMax = 1e12;

KreinCorrection krein_correction(const BoundaryTriplet& t, const BoundaryCondition& bc, cplx z);

struct NormalizationData {
  CMat R, Rinv, Q;
};
NormalizationData normalization_data(const CMat& m_at_i);

BoundaryTriplet normalize(const BoundaryTriplet& t);
BoundaryTriplet direct_sum_normalized(const std::vector<BoundaryTriplet>& ts);
// diagnostic only: the raw orthogonal sum, refuses Krein computations
BoundaryTriplet direct_sum_plain(const std::vector<BoundaryTriplet>& ts);

CMat weyl_derivative(const WeylFunction& w, double a);
BoundaryTriplet regularize_at_real_point(const std::vector<BoundaryTriplet>& ts, double a);

double herglotz_identity_residual(const BoundaryTriplet& t, cplx z, cplx zeta);
double gamma_translation_residual(const BoundaryTriplet& t, cplx z, cplx zeta,
                                  const std::vector<double>& grid = {});

struct ProbeReport {
  std::vector<std::vector<double>> friedrichs_values;  // per direction, along the downward grid
  std::vector<std::vector<double>> krein_values;       // per direction, along the grid toward the gap edge
  std::vector<bool> friedrichs;
  std::vector<bool> krein;
  bool all_friedrichs() const;
  bool any_krein() const;
};

// x_down decreasing toward -inf; x_up increasing toward the gap edge
ProbeReport friedrichs_probe(const WeylFunction& w, const std::vector<double>& x_down,
                             const std::vector<double>& x_up, const std::vector<CVec>& directions);

// monotone divergence heuristic used by the probes
bool diverges(const std::vector<double>& values, int sign);

struct LsbEntry {
  double N;
  bool found;
  double x_N;
};
std::vector<LsbEntry> lsb_uniform_probe(const WeylFunction& w, const std::vector<double>& levels,
                                        const std::vector<double>& x_down);

// n unit directions in C^d from a seeded generator (first d are the coordinate axes)
std::vector<CVec> sample_directions(int d, int n, std::uint64_t seed);
std::vector<double> log_grid(double from, double to, int n);  // same sign, geometric

}  // namespace weyl
