// triplet.cpp — Weyl/gamma calculus, Krein corrections and the limit probes
#include "weyl/triplet.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace weyl {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

// log(1e12): envelope exp(-rate * X) drops below 1e-12 at X = kTail / rate
constexpr double kTail = 27.631021115928547;
constexpr double kMaxQuadLength = 1e6;

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b) {
  // boost's Gauss-Kronrod handles real integrands; split re/im
  double err = 0.0;
  double re = GK::integrate([&](double x) { return f(x).real(); }, a, b, 12, 1e-13, &err);
  double im = GK::integrate([&](double x) { return f(x).imag(); }, a, b, 12, 1e-13, &err);
  return {re, im};
}

// panels of unit-ish length keep the oscillatory exponentials well resolved
std::vector<double> panel_edges(double a, double b) {
  int n = static_cast<int>(std::ceil((b - a) / 1.0));
  n = std::clamp(n, 1, 4000);
  std::vector<double> e(n + 1);
  for (int k = 0; k <= n; ++k) e[k] = a + (b - a) * k / n;
  return e;
}

std::pair<double, double> piece_range(const KernelPiece& l, const KernelPiece& r) {
  double rate = l.decay + r.decay;
  if (l.extent == Extent::Finite) return {l.lo, l.hi};
  if (!(rate > 0.0) || kTail / rate > kMaxQuadLength)
    throw QuadratureError("gram: kernel decay too slow for tail truncation");
  double len = kTail / rate;
  if (l.extent == Extent::ToPlusInf) return {l.lo, l.lo + len};
  return {l.hi - len, l.hi};
}

CMat piece_gram(const KernelPiece& l, const KernelPiece& r, int dl, int dr) {
  auto [a, b] = piece_range(l, r);
  auto edges = panel_edges(a, b);
  CMat g = CMat::Zero(dl, dr);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) {
      auto f = [&](double x) {
        CMat lx = l.fn(x), rx = r.fn(x);
        return cplx(lx.col(i).dot(rx.col(j)));  // Eigen's dot conjugates the left factor
      };
      cplx s = 0.0;
      for (std::size_t k = 0; k + 1 < edges.size(); ++k) s += integrate_c(f, edges[k], edges[k + 1]);
      g(i, j) = s;
    }
  return g;
}

BoundaryTriplet block_sum(const std::vector<BoundaryTriplet>& ts, const std::string& label) {
  if (ts.empty()) throw DomainError("direct sum of zero triplets");
  if (ts.size() == 1) {
    BoundaryTriplet t = ts.front();
    t.label = label;
    return t;
  }
  std::vector<int> dims, offs;
  int total = 0;
  for (const auto& t : ts) { offs.push_back(total); dims.push_back(t.dim()); total += t.dim(); }

  BoundaryTriplet out;
  out.label = label;
  out.weyl.dim = total;
  out.weyl.eval = [ts](cplx z) {
    std::vector<CMat> b;
    for (const auto& t : ts) b.push_back(t.weyl(z));
    return blockdiag(b);
  };
  bool all_deriv = std::all_of(ts.begin(), ts.end(), [](const auto& t) { return bool(t.weyl.derivative); });
  if (all_deriv)
    out.weyl.derivative = [ts](cplx z) {
      std::vector<CMat> b;
      for (const auto& t : ts) b.push_back(t.weyl.derivative(z));
      return blockdiag(b);
    };
  bool all_gap = std::all_of(ts.begin(), ts.end(), [](const auto& t) { return bool(t.weyl.in_gap); });
  if (all_gap)
    out.weyl.in_gap = [ts](double x) {
      return std::all_of(ts.begin(), ts.end(), [x](const auto& t) { return t.weyl.in_gap(x); });
    };
  out.gamma.dim = total;
  out.gamma.eval = [ts, offs, total](cplx z) {
    std::vector<GammaImage> imgs;
    for (const auto& t : ts) imgs.push_back(t.gamma(z));
    bool dense = imgs.front().dense();
    for (const auto& g : imgs)
      if (g.dense() != dense) throw UnsupportedError("direct sum: mixed gamma representations");
    if (dense) {
      std::vector<CMat> b;
      for (const auto& g : imgs) b.push_back(g.matrix());
      return GammaImage{blockdiag(b)};
    }
    AnalyticKernel k;
    k.dim = total;
    for (std::size_t s = 0; s < imgs.size(); ++s)
      for (const auto& p : imgs[s].kernel().pieces) {
        KernelPiece q = p;
        int off = offs[s];
        q.fn = [f = p.fn, off, total](double x) { return embed_cols(f(x), total, off); };
        if (p.dfn) q.dfn = [f = p.dfn, off, total](double x) { return embed_cols(f(x), total, off); };
        k.pieces.push_back(std::move(q));
      }
    return GammaImage{k};
  };
  bool all_res = std::all_of(ts.begin(), ts.end(), [](const auto& t) { return bool(t.s0_resolvent); });
  if (all_res)
    out.s0_resolvent = [ts](cplx z) {
      std::vector<CMat> b;
      for (const auto& t : ts) b.push_back(t.s0_resolvent(z));
      return blockdiag(b);
    };
  return out;
}

}  // namespace

bool KernelPiece::contains(double x) const {
  switch (extent) {
    case Extent::Finite: return x > lo && x < hi;
    case Extent::ToPlusInf: return x > lo;
    case Extent::ToMinusInf: return x < hi;
  }
  return false;
}

std::optional<std::size_t> AnalyticKernel::locate(double x) const {
  for (std::size_t p = 0; p < pieces.size(); ++p)
    if (pieces[p].contains(x)) return p;
  return std::nullopt;
}

int GammaImage::dim() const { return dense() ? int(matrix().cols()) : kernel().dim; }

GammaImage right_multiply(const GammaImage& g, const CMat& w) {
  if (g.dense()) return GammaImage{CMat(g.matrix() * w)};
  AnalyticKernel k = g.kernel();
  k.dim = int(w.cols());
  for (auto& p : k.pieces) {
    p.fn = [f = p.fn, w](double x) { return CMat(f(x) * w); };
    if (p.dfn) p.dfn = [f = p.dfn, w](double x) { return CMat(f(x) * w); };
  }
  return GammaImage{k};
}

CMat gram(const GammaImage& left, const GammaImage& right) {
  if (left.dense() && right.dense()) return left.matrix().adjoint() * right.matrix();
  if (left.dense() || right.dense()) throw UnsupportedError("gram: mixed representations");
  const auto& L = left.kernel();
  const auto& R = right.kernel();
  if (L.pieces.size() != R.pieces.size()) throw UnsupportedError("gram: piece mismatch");
  CMat g = CMat::Zero(L.dim, R.dim);
  for (std::size_t p = 0; p < L.pieces.size(); ++p) g += piece_gram(L.pieces[p], R.pieces[p], L.dim, R.dim);
  return g;
}

BoundaryCondition BoundaryCondition::op(const CMat& b) {
  if (b.rows() != b.cols()) throw DomainError("boundary operator must be square");
  if (herm_residual(b) > 1e-14) throw DomainError("boundary operator must be Hermitian");
  return {Kind::Operator, b};
}

CMat KreinCorrection::dense() const {
  if (!std::holds_alternative<CMat>(left)) throw UnsupportedError("KreinCorrection: not dense");
  const CMat& l = std::get<CMat>(left);
  if (zero) return CMat::Zero(l.rows(), l.rows());
  return l * core * std::get<CMat>(right).adjoint();
}

CMat KreinCorrection::kernel(std::size_t px, double x, std::size_t py, double y) const {
  if (!std::holds_alternative<AnalyticKernel>(left)) throw UnsupportedError("KreinCorrection: not a kernel");
  const auto& l = std::get<AnalyticKernel>(left);
  const auto& r = std::get<AnalyticKernel>(right);
  CMat lx = l(px, x), ry = r(py, y);
  if (zero) return CMat::Zero(lx.rows(), ry.rows());
  return lx * core * ry.adjoint();
}

KreinCorrection krein_correction(const BoundaryTriplet& t, const BoundaryCondition& bc, cplx z) {
  if (!t.krein_allowed) throw UnsupportedError("krein_correction: plain direct sum is not a boundary triplet");
  KreinCorrection k;
  GammaImage gz = t.gamma(z);
  GammaImage gzb = t.gamma(std::conj(z));
  auto stash = [](const GammaImage& g) -> std::variant<std::monostate, CMat, AnalyticKernel> {
    if (g.dense()) return g.matrix();
    return g.kernel();
  };
  k.left = stash(gz);
  k.right = stash(gzb);
  const int d = t.dim();
  if (bc.kind == BoundaryCondition::Kind::Theta0) {
    k.zero = true;
    k.core = CMat::Zero(d, d);
    return k;
  }
  CMat B = bc.kind == BoundaryCondition::Kind::Theta1 ? CMat::Zero(d, d) : bc.B;
  if (B.rows() != d) throw DomainError("krein_correction: boundary operator dimension mismatch");
  CMat Mz = t.weyl(z);
  CMat A = B - Mz;
  double c = cond_scaled(A, std::max(opnorm(B), opnorm(Mz)));
  if (!(c <= kKreinCondMax)) {
    std::ostringstream os;
    os << "krein_correction: B - M(z) singular at z = " << z << " (cond " << c << ")";
    throw SingularError(os.str());
  }
  k.core = A.inverse();
  return k;
}

NormalizationData normalization_data(const CMat& m_at_i) {
  CMat im = imag_part(m_at_i);
  NormalizationData n;
  n.R = herm_sqrt(im);
  n.Rinv = herm_invsqrt(im);
  n.Q = herm_part(m_at_i);
  return n;
}

BoundaryTriplet normalize(const BoundaryTriplet& t) {
  NormalizationData nd = normalization_data(t.weyl(I_));
  BoundaryTriplet out = t;
  const CMat Rinv = nd.Rinv, Q = nd.Q;
  out.weyl.eval = [w = t.weyl.eval, Rinv, Q](cplx z) { return CMat(Rinv * (w(z) - Q) * Rinv); };
  if (t.weyl.derivative)
    out.weyl.derivative = [d = t.weyl.derivative, Rinv](cplx z) { return CMat(Rinv * d(z) * Rinv); };
  out.gamma.eval = [g = t.gamma.eval, Rinv](cplx z) { return right_multiply(g(z), Rinv); };
  out.normalized = true;
  double dev = (out.weyl(I_) - I_ * CMat::Identity(t.dim(), t.dim())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw std::runtime_error("normalize: M(i) != iI after normalization");
  return out;
}

BoundaryTriplet direct_sum_normalized(const std::vector<BoundaryTriplet>& ts) {
  std::vector<BoundaryTriplet> norm;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    try {
      norm.push_back(normalize(ts[k]));
    } catch (const NotPositiveError& e) {
      std::ostringstream os;
      os << "direct_sum_normalized: block " << k << ": " << e.what();
      throw NotPositiveError(os.str());
    }
  }
  BoundaryTriplet out = block_sum(norm, "normalized direct sum");
  out.normalized = true;
  return out;
}

BoundaryTriplet direct_sum_plain(const std::vector<BoundaryTriplet>& ts) {
  BoundaryTriplet out = block_sum(ts, "plain direct sum (not a boundary triplet in general)");
  out.krein_allowed = false;
  out.normalized = false;
  return out;
}

CMat weyl_derivative(const WeylFunction& w, double a) {
  if (w.derivative) return w.derivative(cplx(a, 0.0));
  double h = 1e-6 * (1.0 + std::abs(a));
  return (w(cplx(a + h, 0.0)) - w(cplx(a - h, 0.0))) / (2.0 * h);
}

BoundaryTriplet regularize_at_real_point(const std::vector<BoundaryTriplet>& ts, double a) {
  std::vector<BoundaryTriplet> blocks;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& t = ts[k];
    std::ostringstream who;
    who << "regularize_at_real_point: block " << k << ": ";
    if (t.weyl.in_gap && !t.weyl.in_gap(a)) throw DomainError(who.str() + "a is not in a resolvent gap");
    CMat Ma;
    try {
      Ma = t.weyl(cplx(a, 0.0));
    } catch (const DomainError&) {
      throw DomainError(who.str() + "a is not in a resolvent gap");
    }
    if (herm_residual(Ma) > 1e-10) throw DomainError(who.str() + "M(a) not Hermitian, a outside gap");
    Ma = herm_part(Ma);
    CMat D = herm_part(weyl_derivative(t.weyl, a));
    CMat Rinv;
    try {
      Rinv = herm_invsqrt(D);
    } catch (const NotPositiveError& e) {
      throw NotPositiveError(who.str() + "M'(a) not positive definite");
    }
    BoundaryTriplet b = t;
    b.weyl.eval = [w = t.weyl.eval, Rinv, Ma](cplx z) { return CMat(Rinv * (w(z) - Ma) * Rinv); };
    if (t.weyl.derivative)
      b.weyl.derivative = [d = t.weyl.derivative, Rinv](cplx z) { return CMat(Rinv * d(z) * Rinv); };
    b.gamma.eval = [g = t.gamma.eval, Rinv](cplx z) { return right_multiply(g(z), Rinv); };
    b.normalized = false;
    blocks.push_back(std::move(b));
  }
  std::ostringstream label;
  label << "regularized at a = " << a;
  return block_sum(blocks, label.str());
}

double herglotz_identity_residual(const BoundaryTriplet& t, cplx z, cplx zeta) {
  CMat lhs = t.weyl(z) - t.weyl(zeta).adjoint();
  cplx f = z - std::conj(zeta);
  if (f == 0.0) return opnorm(lhs);
  CMat g = gram(t.gamma(zeta), t.gamma(z));
  return opnorm(lhs - f * g);
}

double gamma_translation_residual(const BoundaryTriplet& t, cplx z, cplx zeta, const std::vector<double>& grid) {
  if (z == zeta) return 0.0;
  GammaImage gz = t.gamma(z), gw = t.gamma(zeta);
  if (gz.dense()) {
    if (!t.s0_resolvent) throw UnsupportedError("gamma_translation_residual: no resolvent oracle");
    const CMat& a = gz.matrix();
    const CMat& b = gw.matrix();
    return opnorm(a - b - (z - zeta) * t.s0_resolvent(z) * b);
  }
  if (!t.s0_green) throw UnsupportedError("gamma_translation_residual: no Green kernel for S0");
  const auto& kz = gz.kernel();
  const auto& kw = gw.kernel();
  double worst = 0.0;
  for (std::size_t px = 0; px < kz.pieces.size(); ++px) {
    std::vector<double> xs = grid;
    if (xs.empty()) {
      const auto& p = kz.pieces[px];
      double base = p.extent == Extent::ToMinusInf ? p.hi : p.lo;
      double dir = p.extent == Extent::ToMinusInf ? -1.0 : 1.0;
      for (double s : {0.25, 0.5, 1.0, 2.0}) xs.push_back(base + dir * s);
    }
    for (double x : xs) {
      if (!kz.pieces[px].contains(x)) continue;
      CMat acc = CMat::Zero(kw.pieces[px].fn(x).rows(), t.dim());
      for (std::size_t py = 0; py < kw.pieces.size(); ++py) {
        const auto& q = kw.pieces[py];
        KernelPiece flat = q;
        flat.decay = 0.0;
        auto [a, b] = piece_range(q, flat);
        std::vector<double> cuts = panel_edges(a, b);
        if (q.contains(x)) { cuts.push_back(x); std::sort(cuts.begin(), cuts.end()); }
        for (int c = 0; c < t.dim(); ++c)
          for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            auto f = [&](double y) { return t.s0_green(z, px, x, py, y) * q.fn(y)(r, c); };
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
              if (cuts[k + 1] > cuts[k]) acc(r, c) += integrate_c(f, cuts[k], cuts[k + 1]);
          }
      }
      CMat res = kz.pieces[px].fn(x) - kw.pieces[px].fn(x) - (z - zeta) * acc;
      worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

bool ProbeReport::all_friedrichs() const {
  return std::all_of(friedrichs.begin(), friedrichs.end(), [](bool b) { return b; });
}

bool ProbeReport::any_krein() const {
  return std::any_of(krein.begin(), krein.end(), [](bool b) { return b; });
}

bool diverges(const std::vector<double>& v, int sign) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (sign * (v[j + 1] - v[j]) < -1e-12 * (1.0 + std::abs(v[j]))) return false;
  double first = sign * (v[n / 2] - v[0]);
  double second = sign * (v[n - 1] - v[n / 2]);
  // increments over equal log-spans must not shrink: bounded limits fail this
  return second > 0.0 && second >= 0.5 * first;
}

ProbeReport friedrichs_probe(const WeylFunction& w, const std::vector<double>& x_down,
                             const std::vector<double>& x_up, const std::vector<CVec>& directions) {
  ProbeReport r;
  auto sample = [&](const std::vector<double>& xs) {
    std::vector<CMat> ms;
    for (double x : xs) ms.push_back(herm_part(w(cplx(x, 0.0))));
    return ms;
  };
  auto down = sample(x_down), up = sample(x_up);
  for (const auto& f : directions) {
    std::vector<double> a, b;
    for (const auto& m : down) a.push_back(f.dot(m * f).real());
    for (const auto& m : up) b.push_back(f.dot(m * f).real());
    r.friedrichs.push_back(diverges(a, -1));
    r.krein.push_back(diverges(b, +1));
    r.friedrichs_values.push_back(std::move(a));
    r.krein_values.push_back(std::move(b));
  }
  return r;
}

std::vector<LsbEntry> lsb_uniform_probe(const WeylFunction& w, const std::vector<double>& levels,
                                        const std::vector<double>& x_down) {
  std::vector<double> lmax;
  for (double x : x_down) lmax.push_back(herm_eigvals(w(cplx(x, 0.0))).maxCoeff());
  std::vector<LsbEntry> out;
  for (double N : levels) {
    LsbEntry e{N, false, 0.0};
    // walk from the most negative grid point upward while the bound holds
    for (std::size_t j = x_down.size(); j-- > 0;) {
      if (lmax[j] > -N) break;
      e.found = true;
      e.x_N = x_down[j];
    }
    out.push_back(e);
  }
  return out;
}

std::vector<CVec> sample_directions(int d, int n, std::uint64_t seed) {
  std::vector<CVec> out;
  for (int k = 0; k < std::min(d, n); ++k) out.push_back(CVec::Unit(d, k));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  while (int(out.size()) < n) {
    CVec v(d);
    for (int k = 0; k < d; ++k) v(k) = cplx(nd(rng), nd(rng));
    out.push_back(v / v.norm());
  }
  return out;
}

std::vector<double> log_grid(double from, double to, int n) {
  std::vector<double> g(n);
  double s = from < 0 ? -1.0 : 1.0;
  double la = std::log(std::abs(from)), lb = std::log(std::abs(to));
  for (int k = 0; k < n; ++k) g[k] = s * std::exp(la + (lb - la) * k / std::max(1, n - 1));
  g.front() = from;
  g.back() = to;
  return g;
}

}  // namespace weyl
