// models1d.cpp — the 1D model catalogue: boundary maps, Weyl coefficients and gamma kernels
#include "weyl/models1d.hpp"

#include <cmath>
#include <numbers>

namespace weyl {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

using F = ModelSpec::Family;

// Ratios of trig functions written through e^{i s (d +- t)} so that nothing overflows when Im s >= 0.
// t is the offset from the midpoint, |t| <= d.
struct TrigRatios {
  cplx cc, sc, cs, ss;  // cos(st)/cos(sd), sin(st)/cos(sd), cos(st)/sin(sd), sin(st)/sin(sd)
  cplx s_cs;            // s cos(st)/sin(sd), finite at s = 0
};

TrigRatios trig_ratios(cplx s, double t, double d) {
  if (s.imag() < 0.0) s = -s;  // every ratio below is even in s, s_cs too
  TrigRatios r;
  cplx ep = std::exp(I_ * s * (t + d)), em = std::exp(I_ * s * (d - t));
  cplx E2 = std::exp(2.0 * I_ * s * d);
  if (std::abs(E2 + 1.0) < kPoleTol) throw PoleError("interval kernel: cos(sd) = 0");
  r.cc = (ep + em) / (E2 + 1.0);
  r.sc = (ep - em) / (I_ * (E2 + 1.0));
  if (std::abs(s * d) < 1e-6) {
    r.ss = t / d;
    r.s_cs = 1.0 / d;
    r.cs = std::abs(s) > 0.0 ? r.s_cs / s : cplx(std::numeric_limits<double>::infinity());
  } else {
    if (std::abs(E2 - 1.0) < kPoleTol) throw PoleError("interval kernel: sin(sd) = 0");
    r.ss = (ep - em) / (E2 - 1.0);
    r.cs = I_ * (ep + em) / (E2 - 1.0);
    r.s_cs = s * r.cs;
  }
  return r;
}

CMat m1x1(cplx v) {
  CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

// Dirichlet Green kernel of -d^2/dx^2 + v on a half-line with endpoint e; dir = +1 right, -1 left
cplx halfline_green(cplx z, double v, double e, int dir, double x, double y) {
  cplx s = sqrt_cut(z - v);
  double X = dir * (x - e), Y = dir * (y - e);
  return I_ / (2.0 * s) * (std::exp(I_ * s * std::abs(X - Y)) - std::exp(I_ * s * (X + Y)));
}

bool closed_contains(const KernelPiece& p, double x) {
  switch (p.extent) {
    case Extent::Finite: return x >= p.lo && x <= p.hi;
    case Extent::ToPlusInf: return x >= p.lo;
    case Extent::ToMinusInf: return x <= p.hi;
  }
  return false;
}

}  // namespace

ModelSpec ModelSpec::schrodinger_right(double v, double b) {
  ModelSpec s;
  s.family = F::SchrodingerRight;
  s.v = v;
  s.b = b;
  return s;
}

ModelSpec ModelSpec::schrodinger_left(double v, double a) {
  ModelSpec s;
  s.family = F::SchrodingerLeft;
  s.v = v;
  s.a = a;
  return s;
}

ModelSpec ModelSpec::schrodinger_interval(double v, double a, double b) {
  ModelSpec s;
  s.family = F::SchrodingerInterval;
  s.v = v;
  s.a = a;
  s.b = b;
  return s;
}

ModelSpec ModelSpec::dirac_right(double c, double b) {
  ModelSpec s;
  s.family = F::DiracRight;
  s.c = c;
  s.b = b;
  return s;
}

ModelSpec ModelSpec::dirac_interval(double c, double a, double b) {
  ModelSpec s;
  s.family = F::DiracInterval;
  s.c = c;
  s.a = a;
  s.b = b;
  return s;
}

ModelSpec ModelSpec::full_line_contact(double v_l, double v_r) {
  ModelSpec s;
  s.family = F::FullLineContact;
  s.v_l = v_l;
  s.v_r = v_r;
  return s;
}

void ModelSpec::validate() const {
  if ((family == F::SchrodingerInterval || family == F::DiracInterval) && !(a < b))
    throw DomainError("ModelSpec: interval families need a < b");
  if ((family == F::DiracRight || family == F::DiracInterval) && !(c > 0.0))
    throw DomainError("ModelSpec: Dirac families need c > 0");
}

std::string ModelSpec::name() const {
  switch (family) {
    case F::SchrodingerRight: return "schrodinger-right";
    case F::SchrodingerLeft: return "schrodinger-left";
    case F::SchrodingerInterval: return "schrodinger-interval";
    case F::DiracRight: return "dirac-right";
    case F::DiracInterval: return "dirac-interval";
    case F::FullLineContact: return "full-line-contact";
  }
  return "?";
}

std::optional<ModelSpec::Family> parse_family(const std::string& s) {
  for (auto f : {F::SchrodingerRight, F::SchrodingerLeft, F::SchrodingerInterval, F::DiracRight, F::DiracInterval,
                 F::FullLineContact}) {
    ModelSpec m;
    m.family = f;
    if (m.name() == s) return f;
  }
  return std::nullopt;
}

int ModelSpec::boundary_dim() const {
  return (family == F::SchrodingerInterval || family == F::DiracInterval || family == F::FullLineContact) ? 2 : 1;
}

int ModelSpec::components() const { return (family == F::DiracRight || family == F::DiracInterval) ? 2 : 1; }

std::vector<double> interval_reference_eigenvalues(const ModelSpec& spec, int count) {
  std::vector<double> out;
  const double d = spec.half_length();
  for (int n = 1; n <= count; ++n) {
    double k = kPi * n / (2.0 * d);
    if (spec.family == F::SchrodingerInterval) out.push_back(spec.v + k * k);
    else if (spec.family == F::DiracInterval) {
      double a = 0.5 * spec.c * spec.c;
      double e = std::sqrt(spec.c * spec.c * k * k + a * a);  // c^2 k^2 = z^2 - a^2
      out.push_back(-e);
      out.push_back(e);
    }
  }
  return out;
}

BoundaryTriplet build_triplet(const ModelSpec& spec) {
  spec.validate();
  BoundaryTriplet t;
  t.label = spec.name() + " (S0 = ker Gamma0)";
  const int d = spec.boundary_dim();
  t.weyl.dim = d;
  t.gamma.dim = d;

  switch (spec.family) {
    case F::SchrodingerRight:
    case F::SchrodingerLeft: {
      const bool right = spec.family == F::SchrodingerRight;
      const double v = spec.v, e = right ? spec.b : spec.a;
      const int dir = right ? 1 : -1;
      t.weyl.eval = [v](cplx z) { return m1x1(m_schrodinger_halfline(z, v)); };
      t.weyl.derivative = [v](cplx z) {
        if (z.imag() == 0.0 && z.real() >= v) throw DomainError("m': z on the cut");
        return m1x1(I_ / (2.0 * sqrt_cut(z - v)));
      };
      t.weyl.in_gap = [v](double x) { return x < v; };
      t.weyl.resolvent_hint = "sigma(S0) = [v, inf)";
      t.gamma.eval = [v, e, dir, right](cplx z) {
        cplx s = sqrt_cut(z - v);
        KernelPiece p;
        p.extent = right ? Extent::ToPlusInf : Extent::ToMinusInf;
        p.lo = p.hi = e;
        p.decay = s.imag();
        p.fn = [s, e, dir](double x) { return m1x1(std::exp(I_ * s * (dir * (x - e)))); };
        p.dfn = [s, e, dir](double x) { return m1x1(double(dir) * I_ * s * std::exp(I_ * s * (dir * (x - e)))); };
        AnalyticKernel k;
        k.dim = 1;
        k.pieces.push_back(p);
        return GammaImage{k};
      };
      t.s0_green = [v, e, dir](cplx z, std::size_t, double x, std::size_t, double y) {
        return halfline_green(z, v, e, dir, x, y);
      };
      break;
    }
    case F::SchrodingerInterval: {
      const double v = spec.v, nu = spec.midpoint(), hd = spec.half_length(), lo = spec.a, hi = spec.b;
      t.weyl.eval = [v, hd](cplx z) {
        CMat m = CMat::Zero(2, 2);
        m(0, 0) = m_interval(z, v, hd, 1);
        m(1, 1) = m_interval(z, v, hd, 2);
        return m;
      };
      t.weyl.in_gap = [spec](double x) {
        for (double ev : interval_reference_eigenvalues(spec, 2000))
          if (std::abs(x - ev) < 1e-8) return false;
        return true;
      };
      t.weyl.resolvent_hint = "sigma(S0) = {v + (pi n/(2d))^2}";
      t.gamma.eval = [v, nu, hd, lo, hi](cplx z) {
        cplx s = sqrt_cut(z - v);
        KernelPiece p;
        p.extent = Extent::Finite;
        p.lo = lo;
        p.hi = hi;
        p.fn = [s, nu, hd](double x) {
          TrigRatios r = trig_ratios(s, x - nu, hd);
          CMat m(1, 2);
          m << r.cc / kSqrt2, -r.ss / kSqrt2;
          return m;
        };
        p.dfn = [s, nu, hd](double x) {
          TrigRatios r = trig_ratios(s, x - nu, hd);
          CMat m(1, 2);
          m << -s * r.sc / kSqrt2, -r.s_cs / kSqrt2;
          return m;
        };
        AnalyticKernel k;
        k.dim = 2;
        k.pieces.push_back(p);
        return GammaImage{k};
      };
      break;
    }
    case F::DiracRight: {
      const double c = spec.c, e = spec.b;
      t.weyl.eval = [c](cplx z) { return m1x1(m_dirac_halfline(z, c)); };
      t.weyl.in_gap = [c](double x) { return std::abs(x) < 0.5 * c * c; };
      t.weyl.resolvent_hint = "sigma(S0) = (-inf, -c^2/2] u [c^2/2, inf)";
      t.gamma.eval = [c, e](cplx z) {
        cplx k = dirac_k(z, c), k1 = dirac_k1(z, c);
        KernelPiece p;
        p.extent = Extent::ToPlusInf;
        p.lo = e;
        p.decay = k.imag();
        p.fn = [k, k1, e](double x) {
          cplx w = std::exp(I_ * k * (x - e));
          CMat m(2, 1);
          m << w, k1 * w;
          return m;
        };
        p.dfn = [k, k1, e](double x) {
          cplx w = I_ * k * std::exp(I_ * k * (x - e));
          CMat m(2, 1);
          m << w, k1 * w;
          return m;
        };
        AnalyticKernel kk;
        kk.dim = 1;
        kk.pieces.push_back(p);
        return GammaImage{kk};
      };
      break;
    }
    case F::DiracInterval: {
      const double c = spec.c, nu = spec.midpoint(), hd = spec.half_length(), lo = spec.a, hi = spec.b;
      t.weyl.eval = [c, hd](cplx z) {
        CMat m = CMat::Zero(2, 2);
        m(0, 0) = m_dirac_interval(z, c, hd, 1);
        m(1, 1) = m_dirac_interval(z, c, hd, 2);
        return m;
      };
      t.weyl.in_gap = [spec](double x) {
        for (double ev : interval_reference_eigenvalues(spec, 2000))
          if (std::abs(x - ev) < 1e-8) return false;
        return std::abs(x + 0.5 * spec.c * spec.c) > 1e-8;
      };
      t.weyl.resolvent_hint = "discrete sigma(S0)";
      t.gamma.eval = [c, nu, hd, lo, hi](cplx z) {
        const double a = 0.5 * c * c;
        cplx k = dirac_k(z, c);
        cplx k1_over_k = c / (z + a);  // k1 = c k/(z + a), keeps k1/sin(kd) finite at k = 0
        // column 2 carries -sin: the sign that makes Gamma0 gamma = I and solves the Dirac system
        auto value = [=](double x) {
          TrigRatios r = trig_ratios(k, x - nu, hd);
          cplx k1 = k1_over_k * k;
          CMat m(2, 2);
          m << r.cc, -r.ss, I_ * k1 * r.sc, I_ * k1_over_k * r.s_cs;
          return CMat(m / kSqrt2);
        };
        auto deriv = [=](double x) {
          TrigRatios r = trig_ratios(k, x - nu, hd);
          cplx k1 = k1_over_k * k;
          CMat m(2, 2);
          // d/dx of each entry: cos -> -k sin, sin -> k cos
          m << -k * r.sc, -r.s_cs, I_ * k1 * k * r.cc, -I_ * k1_over_k * k * k * r.ss;
          return CMat(m / kSqrt2);
        };
        KernelPiece p;
        p.extent = Extent::Finite;
        p.lo = lo;
        p.hi = hi;
        p.fn = value;
        p.dfn = deriv;
        AnalyticKernel kk;
        kk.dim = 2;
        kk.pieces.push_back(p);
        return GammaImage{kk};
      };
      break;
    }
    case F::FullLineContact: {
      const double vl = spec.v_l, vr = spec.v_r;
      t.weyl.eval = [vl, vr](cplx z) {
        CMat m = CMat::Zero(2, 2);
        m(0, 0) = m_schrodinger_halfline(z, vl);
        m(1, 1) = m_schrodinger_halfline(z, vr);
        return m;
      };
      t.weyl.derivative = [vl, vr](cplx z) {
        CMat m = CMat::Zero(2, 2);
        m(0, 0) = I_ / (2.0 * sqrt_cut(z - vl));
        m(1, 1) = I_ / (2.0 * sqrt_cut(z - vr));
        return m;
      };
      t.weyl.in_gap = [vl, vr](double x) { return x < std::min(vl, vr); };
      t.weyl.resolvent_hint = "sigma(S0) = [min(v_l, v_r), inf)";
      t.gamma.eval = [vl, vr](cplx z) {
        cplx sl = sqrt_cut(z - vl), sr = sqrt_cut(z - vr);
        KernelPiece L, R;
        L.extent = Extent::ToMinusInf;
        L.hi = 0.0;
        L.decay = sl.imag();
        L.fn = [sl](double x) {
          CMat m(1, 2);
          m << std::exp(-I_ * sl * x), 0.0;
          return m;
        };
        L.dfn = [sl](double x) {
          CMat m(1, 2);
          m << -I_ * sl * std::exp(-I_ * sl * x), 0.0;
          return m;
        };
        R.extent = Extent::ToPlusInf;
        R.lo = 0.0;
        R.decay = sr.imag();
        R.fn = [sr](double x) {
          CMat m(1, 2);
          m << 0.0, std::exp(I_ * sr * x);
          return m;
        };
        R.dfn = [sr](double x) {
          CMat m(1, 2);
          m << 0.0, I_ * sr * std::exp(I_ * sr * x);
          return m;
        };
        AnalyticKernel k;
        k.dim = 2;
        k.pieces = {L, R};
        return GammaImage{k};
      };
      t.s0_green = [vl, vr](cplx z, std::size_t px, double x, std::size_t py, double y) {
        if (px != py) return cplx(0.0);
        return px == 0 ? halfline_green(z, vl, 0.0, -1, x, y) : halfline_green(z, vr, 0.0, 1, x, y);
      };
      break;
    }
  }
  return t;
}

CMat eval_gamma_on_grid(const BoundaryTriplet& t, cplx z, const CVec& xi, const std::vector<double>& grid) {
  GammaImage g = t.gamma(z);
  if (g.dense()) throw UnsupportedError("eval_gamma_on_grid: dense gamma has no spatial grid");
  const auto& k = g.kernel();
  const Eigen::Index nc = k.pieces.front().fn(k.pieces.front().extent == Extent::ToMinusInf ? k.pieces.front().hi
                                                                                              : k.pieces.front().lo)
                              .rows();
  CMat out(Eigen::Index(grid.size()), nc);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    bool done = false;
    for (const auto& p : k.pieces)
      if (closed_contains(p, grid[j])) {
        out.row(Eigen::Index(j)) = (p.fn(grid[j]) * xi).transpose();
        done = true;
        break;
      }
    if (!done) throw DomainError("eval_gamma_on_grid: grid point outside the model domain");
  }
  return out;
}

BoundaryTraces boundary_traces(const ModelSpec& spec, const BoundaryTriplet& t, cplx z) {
  const auto k = t.gamma(z).kernel();
  const auto& p = k.pieces.front();
  BoundaryTraces bt;
  switch (spec.family) {
    case F::SchrodingerRight:
      bt.G0 = p.fn(spec.b);
      bt.G1 = p.dfn(spec.b);
      break;
    case F::SchrodingerLeft:
      bt.G0 = p.fn(spec.a);
      bt.G1 = -p.dfn(spec.a);
      break;
    case F::SchrodingerInterval: {
      CMat fa = p.fn(spec.a), fb = p.fn(spec.b), da = p.dfn(spec.a), db = p.dfn(spec.b);
      bt.G0.resize(2, 2);
      bt.G1.resize(2, 2);
      bt.G0 << fa + fb, fa - fb;
      bt.G1 << da - db, da + db;
      bt.G0 /= kSqrt2;
      bt.G1 /= kSqrt2;
      break;
    }
    case F::DiracRight: {
      CMat f = p.fn(spec.b);
      bt.G0 = f.row(0);
      bt.G1 = I_ * spec.c * f.row(1);
      break;
    }
    case F::DiracInterval: {
      CMat fa = p.fn(spec.a), fb = p.fn(spec.b);
      bt.G0.resize(2, 2);
      bt.G1.resize(2, 2);
      bt.G0 << fa.row(0) + fb.row(0), fa.row(0) - fb.row(0);
      bt.G1 << fa.row(1) - fb.row(1), fa.row(1) + fb.row(1);
      bt.G0 /= kSqrt2;
      bt.G1 *= I_ * spec.c / kSqrt2;
      break;
    }
    case F::FullLineContact: {
      const auto& L = k.pieces[0];
      const auto& R = k.pieces[1];
      bt.G0.resize(2, 2);
      bt.G1.resize(2, 2);
      bt.G0 << L.fn(0.0), R.fn(0.0);
      bt.G1 << -L.dfn(0.0), R.dfn(0.0);
      break;
    }
  }
  return bt;
}

double verify_defect_equation(const ModelSpec& spec, const BoundaryTriplet& t, cplx z, double h) {
  const auto k = t.gamma(z).kernel();
  const bool dirac = spec.components() == 2;
  const double a = 0.5 * spec.c * spec.c;
  double worst = 0.0;
  for (std::size_t pi = 0; pi < k.pieces.size(); ++pi) {
    const auto& p = k.pieces[pi];
    double lo, hi;
    if (p.extent == Extent::Finite) { lo = p.lo + 2 * h; hi = p.hi - 2 * h; }
    else if (p.extent == Extent::ToPlusInf) { lo = p.lo + 2 * h; hi = p.lo + 5.0; }
    else { lo = p.hi - 5.0; hi = p.hi - 2 * h; }
    double pot = spec.v;
    if (spec.family == F::FullLineContact) pot = pi == 0 ? spec.v_l : spec.v_r;
    for (int j = 0; j <= 50; ++j) {
      double x = lo + (hi - lo) * j / 50.0;
      CMat um = p.fn(x - h), u0 = p.fn(x), up = p.fn(x + h);
      CMat r;
      if (!dirac) {
        r = -(up - 2.0 * u0 + um) / (h * h) + (pot - z) * u0;
      } else {
        CMat du = (up - um) / (2.0 * h);
        r.resize(2, u0.cols());
        r.row(0) = -I_ * spec.c * du.row(1) + a * u0.row(0) - z * u0.row(0);
        r.row(1) = -I_ * spec.c * du.row(0) - a * u0.row(1) - z * u0.row(1);
      }
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace weyl
