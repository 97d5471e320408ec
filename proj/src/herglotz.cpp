// herglotz.cpp — branch-cut arithmetic for the Schrödinger and Dirac coefficients
#include "weyl/herglotz.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace weyl {

namespace {

constexpr double kPi = std::numbers::pi;

// tan(w) via q = exp(2iw), stable for any |Im w|
cplx tan_stable(cplx w) {
  if (w.imag() < 0.0) return std::conj(tan_stable(std::conj(w)));
  cplx q = std::exp(cplx(0.0, 2.0) * w);
  return I_ * (1.0 - q) / (1.0 + q);
}

// tan(x)/x and x cot(x): both even, so the sign of sqrt never matters
cplx tanc(cplx x) {
  if (std::abs(x) < 1e-4) {
    cplx x2 = x * x;
    return 1.0 + x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return tan_stable(x) / x;
}

cplx xcotx(cplx x) {
  if (std::abs(x) < 1e-4) {
    cplx x2 = x * x;
    return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
  }
  return x / tan_stable(x);
}

// distance from w to the nearest pole of tan (pi/2 + n pi) or of cot (n pi, n != 0)
double tan_pole_distance(cplx w) {
  double n = std::round((w.real() - kPi / 2) / kPi);
  return std::abs(w - cplx(kPi / 2 + n * kPi, 0.0));
}

double cot_pole_distance(cplx w) {
  double n = std::round(w.real() / kPi);
  if (n == 0.0) n = w.real() >= 0 ? 1.0 : -1.0;  // the pole at 0 is cancelled
  return std::abs(w - cplx(n * kPi, 0.0));
}

[[noreturn]] void pole(const char* who, cplx z) {
  std::ostringstream os;
  os << who << ": pole at z = " << z;
  throw PoleError(os.str());
}

[[noreturn]] void on_cut(const char* who, cplx z) {
  std::ostringstream os;
  os << who << ": z = " << z << " lies on the cut";
  throw DomainError(os.str());
}

}  // namespace

cplx sqrt_cut(cplx z) {
  cplx r = std::sqrt(z);
  // principal root has arg in (-pi/2, pi/2]; the lower half-plane needs the other sheet
  return r.imag() < 0.0 ? -r : r;
}

cplx m_schrodinger_halfline(cplx z, double v) {
  if (z.imag() == 0.0 && z.real() >= v) on_cut("m_schrodinger_halfline", z);
  return I_ * sqrt_cut(z - v);
}

cplx m_interval(cplx z, double v, double d, int branch) {
  if (!(d > 0.0)) throw DomainError("m_interval: d must be positive");
  cplx s = sqrt_cut(z - v);
  cplx w = s * d;
  if (branch == 1) {
    if (tan_pole_distance(w) < kPoleTol) pole("m_interval", z);
    return (z - v) * d * tanc(w);  // = s tan(sd)
  }
  if (branch == 2) {
    if (cot_pole_distance(w) < kPoleTol) pole("m_interval", z);
    return -xcotx(w) / d;  // = -s cot(sd)
  }
  throw DomainError("m_interval: branch must be 1 or 2");
}

cplx dirac_k1(cplx z, double c) {
  if (!(c > 0.0)) throw DomainError("dirac_k1: c must be positive");
  const double a = 0.5 * c * c;
  if (z == cplx(-a, 0.0)) on_cut("dirac_k1", z);
  if (z.imag() == 0.0) {
    double r = (z.real() - a) / (z.real() + a);
    return r >= 0.0 ? cplx(std::sqrt(r), 0.0) : cplx(0.0, std::sqrt(-r));
  }
  // the Moebius ratio sends the two cuts onto [0, inf) and the gap onto (-inf, 0), so the
  // positive-axis cut (not the principal one) keeps k1(conj z) = -conj k1(z)
  return sqrt_cut((z - a) / (z + a));
}

cplx dirac_k(cplx z, double c) {
  const double a = 0.5 * c * c;
  if (z == cplx(-a, 0.0)) return 0.0;
  return dirac_k1(z, c) * (z + a) / c;
}

cplx m_dirac_halfline(cplx z, double c) {
  const double a = 0.5 * c * c;
  if (z.imag() == 0.0 && std::abs(z.real()) >= a) on_cut("m_dirac_halfline", z);
  return I_ * c * dirac_k1(z, c);
}

cplx m_dirac_interval(cplx z, double c, double d, int branch) {
  if (!(c > 0.0) || !(d > 0.0)) throw DomainError("m_dirac_interval: c, d must be positive");
  const double a = 0.5 * c * c;
  cplx w = dirac_k(z, c) * d;
  if (branch == 1) {
    if (tan_pole_distance(w) < kPoleTol) pole("m_dirac_interval", z);
    // c k1 tan(kd) with k1 = c k/(z+a); k^2 = (z-a)(z+a)/c^2
    return (z - a) * d * tanc(w);
  }
  if (branch == 2) {
    if (std::abs(z + a) < kPoleTol || cot_pole_distance(w) < kPoleTol) pole("m_dirac_interval", z);
    return -c * c * xcotx(w) / ((z + a) * d);
  }
  throw DomainError("m_dirac_interval: branch must be 1 or 2");
}

cplx m_dirac(cplx z, double c, DiracGeometry geom, double d, int branch) {
  return geom == DiracGeometry::HalfLine ? m_dirac_halfline(z, c) : m_dirac_interval(z, c, d, branch);
}

HerglotzScalar schrodinger_right_scalar(double v) {
  return {"m_H_r", [v](cplx z) { return m_schrodinger_halfline(z, v); },
          {BranchKind::PositiveAxisCut, 0.0}, "cut [v, inf)"};
}

HerglotzScalar schrodinger_left_scalar(double v) {
  return {"m_H_l", [v](cplx z) { return m_schrodinger_halfline(z, v); },
          {BranchKind::PositiveAxisCut, 0.0}, "cut [v, inf)"};
}

HerglotzScalar schrodinger_interval_scalar(double v, double d, int branch) {
  return {branch == 1 ? "m1_H_c" : "m2_H_c",
          [v, d, branch](cplx z) { return m_interval(z, v, d, branch); },
          {BranchKind::PositiveAxisCut, 0.0}, "poles v + (pi n/(2d))^2"};
}

HerglotzScalar dirac_right_scalar(double c) {
  return {"m_D_r", [c](cplx z) { return m_dirac_halfline(z, c); },
          {BranchKind::DiracGapCut, c}, "cuts |x| >= c^2/2"};
}

HerglotzScalar dirac_interval_scalar(double c, double d, int branch) {
  return {branch == 1 ? "m1_D_c" : "m2_D_c",
          [c, d, branch](cplx z) { return m_dirac_interval(z, c, d, branch); },
          {BranchKind::DiracGapCut, c}, "real poles"};
}

std::vector<HerglotzScalar> herglotz_catalogue() {
  return {schrodinger_right_scalar(0.0),        schrodinger_left_scalar(0.5),
          schrodinger_interval_scalar(0.0, 1.0, 1), schrodinger_interval_scalar(0.0, 1.0, 2),
          dirac_right_scalar(1.0),              dirac_interval_scalar(1.0, 1.0, 1),
          dirac_interval_scalar(1.0, 1.0, 2)};
}

double symmetry_residual(const HerglotzScalar& m, cplx z) {
  return std::abs(m(std::conj(z)) - std::conj(m(z)));
}

}  // namespace weyl
