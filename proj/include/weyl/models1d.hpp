// models1d.hpp — Schrödinger, Dirac and point-contact boundary triplets with analytic gamma kernels
#pragma once

#include "weyl/herglotz.hpp"
#include "weyl/triplet.hpp"

namespace weyl {

struct ModelSpec {
  enum class Family { SchrodingerRight, SchrodingerLeft, SchrodingerInterval, DiracRight, DiracInterval, FullLineContact };
  Family family = Family::SchrodingerRight;
  double v = 0.0;              // potential (Schrödinger families)
  double a = 0.0, b = 0.0;     // endpoints; half-lines use b (right) or a (left)
  double c = 1.0;              // Dirac speed
  double v_l = 0.0, v_r = 0.0; // full-line contact potentials

  static ModelSpec schrodinger_right(double v, double b = 0.0);
  static ModelSpec schrodinger_left(double v, double a = 0.0);
  static ModelSpec schrodinger_interval(double v, double a, double b);
  static ModelSpec dirac_right(double c, double b = 0.0);
  static ModelSpec dirac_interval(double c, double a, double b);
  static ModelSpec full_line_contact(double v_l, double v_r);

  void validate() const;  // throws DomainError
  std::string name() const;
  int boundary_dim() const;
  int components() const;  // 1 for Schrödinger, 2 for Dirac spinors
  double midpoint() const { return 0.5 * (a + b); }
  double half_length() const { return 0.5 * (b - a); }
};

std::optional<ModelSpec::Family> parse_family(const std::string& s);

BoundaryTriplet build_triplet(const ModelSpec& spec);

// rows: grid points, columns: function components of gamma(z) xi
CMat eval_gamma_on_grid(const BoundaryTriplet& t, cplx z, const CVec& xi, const std::vector<double>& grid);

// Gamma0 gamma(z) and Gamma1 gamma(z) from closed-form endpoint values of the kernels
struct BoundaryTraces {
  CMat G0, G1;
};
BoundaryTraces boundary_traces(const ModelSpec& spec, const BoundaryTriplet& t, cplx z);

// max |(A* - z) u| over interior grid points, with centered differences of step h
double verify_defect_equation(const ModelSpec& spec, const BoundaryTriplet& t, cplx z, double h = 1e-3);

// Dirichlet / Neumann reference eigenvalues v + (pi n / (2d))^2, n = 1..count (interval models)
std::vector<double> interval_reference_eigenvalues(const ModelSpec& spec, int count);

}  // namespace weyl
