// herglotz.hpp — scalar Nevanlinna functions and the branch cuts behind the 1D model coefficients
#pragma once

#include "weyl/linalg.hpp"

#include <string>
#include <vector>

namespace weyl {

enum class BranchKind { PositiveAxisCut, DiracGapCut };

struct BranchCut {
  BranchKind kind = BranchKind::PositiveAxisCut;
  double c = 0.0;  // speed, only meaningful for DiracGapCut
};

// distance to a cut/pole below which we refuse to evaluate
inline constexpr double kPoleTol = 1e-10;

// sqrt with argument taken in [0, 2pi); Im >= 0 always, sqrt(1) = 1, sqrt(-1) = i
cplx sqrt_cut(cplx z);

// i*sqrt_cut(z - v); rejects z on [v, inf)
cplx m_schrodinger_halfline(cplx z, double v);

// branch 1: s tan(s d), branch 2: -s cot(s d), s = sqrt(z - v)
cplx m_interval(cplx z, double v, double d, int branch);

// k(z) = sqrt(z^2 - c^4/4)/c and k1 = sqrt_cut((z - c^2/2)/(z + c^2/2)), Im k >= 0.
// On the real cuts both return the boundary value from the upper half-plane.
cplx dirac_k(cplx z, double c);
cplx dirac_k1(cplx z, double c);

cplx m_dirac_halfline(cplx z, double c);                       // i c k1(z)
cplx m_dirac_interval(cplx z, double c, double d, int branch);  // c k1 tan(kd), -c k1 cot(kd)

enum class DiracGeometry { HalfLine, Interval };
cplx m_dirac(cplx z, double c, DiracGeometry geom, double d = 1.0, int branch = 1);

struct HerglotzScalar {
  std::string name;
  std::function<cplx(cplx)> eval;
  BranchCut branch;
  std::string singular_set;
  cplx operator()(cplx z) const { return eval(z); }
};

HerglotzScalar schrodinger_right_scalar(double v);
HerglotzScalar schrodinger_left_scalar(double v);
HerglotzScalar schrodinger_interval_scalar(double v, double d, int branch);
HerglotzScalar dirac_right_scalar(double c);
HerglotzScalar dirac_interval_scalar(double c, double d, int branch);

// the seven catalogued coefficients with default parameters
std::vector<HerglotzScalar> herglotz_catalogue();

// |m(conj z) - conj m(z)|
double symmetry_residual(const HerglotzScalar& m, cplx z);

}  // namespace weyl
