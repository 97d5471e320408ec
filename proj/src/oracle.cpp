// oracle.cpp — finite-difference and dense references used to cross-check the analytic code
#include "weyl/oracle.hpp"

#include "weyl/herglotz.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace weyl {

int FDGrid::intervals() const {
  if (!(h > 0.0) || !(L > 0.0)) throw DomainError("FDGrid: h and L must be positive");
  double m = L / h;
  long r = std::lround(m);
  if (std::abs(m - double(r)) > 1e-9 * m) throw DomainError("FDGrid: L/h must be an integer");
  if (r < 4) throw DomainError("FDGrid: grid too coarse");
  return int(r);
}

bool FDGrid::decay_adequate(cplx z) const {
  double im = sqrt_cut(z - v).imag();
  return im > 0.0 && L >= 20.0 / std::min(1.0, im);
}

cplx fd_m_function(const FDGrid& g, cplx z) {
  const int M = g.intervals();
  if (z.imag() == 0.0 && z.real() >= g.v) throw DomainError("fd_m_function: z on the cut [v, inf)");
  const cplx c = 2.0 + g.h * g.h * (g.v - z);
  std::vector<cplx> u(std::size_t(M) + 1, 0.0);
  u[std::size_t(M) - 1] = 1.0;
  for (int j = M - 1; j >= 1; --j) {
    u[std::size_t(j) - 1] = c * u[std::size_t(j)] - u[std::size_t(j) + 1];
    if (std::abs(u[std::size_t(j) - 1]) > 1e150)
      for (int i = j - 1; i <= M; ++i) u[std::size_t(i)] *= 1e-150;
  }
  const cplx u0 = u[0], u1 = u[1], u2 = u[2];
  cplx m = (-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * g.h * u0);
  if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) throw std::runtime_error("fd_m_function: non-finite result");
  return m;
}

namespace {

// Thomas solve of a complex tridiagonal system (sub, diag, sup) x = rhs
std::vector<cplx> thomas(const std::vector<cplx>& sub, const std::vector<cplx>& diag, const std::vector<cplx>& sup,
                         std::vector<cplx> rhs) {
  const std::size_t n = diag.size();
  std::vector<cplx> c(n), x(n);
  cplx den = diag[0];
  if (std::abs(den) == 0.0) throw SingularError("fd solve: zero pivot");
  c[0] = sup[0] / den;
  rhs[0] /= den;
  for (std::size_t i = 1; i < n; ++i) {
    den = diag[i] - sub[i] * c[i - 1];
    if (std::abs(den) < 1e-300) throw SingularError("fd solve: zero pivot");
    c[i] = i + 1 < n ? sup[i] / den : cplx(0.0);
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / den;
  }
  x[n - 1] = rhs[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = rhs[i] - c[i] * x[i + 1];
  return x;
}

int node_of(const FDGrid& g, double x, int M) {
  long j = std::lround(x / g.h);
  if (j < 0 || j > M || std::abs(x - j * g.h) > 1e-9) throw DomainError("fd_resolvent_difference: sample off the grid");
  return int(j);
}

}  // namespace

CMat fd_resolvent_difference(const FDGrid& g, double theta, cplx z, const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  if (z.imag() == 0.0 && z.real() >= g.v) throw DomainError("fd_resolvent_difference: z on the cut [v, inf)");
  const int M = g.intervals();
  const double h2 = g.h * g.h;
  // Robin: nodes 0..M-1, Dirichlet: nodes 1..M-1 (stored at offset 1)
  const std::size_t nr = std::size_t(M), nd = std::size_t(M - 1);
  std::vector<cplx> rs(nr, -1.0 / h2), rd(nr, 2.0 / h2 + g.v - z), ru(nr, -1.0 / h2);
  rd[0] = (2.0 + 2.0 * g.h * theta) / h2 + g.v - z;
  ru[0] = -2.0 / h2;
  std::vector<cplx> ds(nd, -1.0 / h2), dd(nd, 2.0 / h2 + g.v - z), du(nd, -1.0 / h2);

  CMat out(Eigen::Index(xs.size()), Eigen::Index(ys.size()));
  for (std::size_t b = 0; b < ys.size(); ++b) {
    const int jy = node_of(g, ys[b], M);
    std::vector<cplx> colR(nr, 0.0), colD(nd, 0.0);
    if (jy < M) {
      std::vector<cplx> e(nr, 0.0);
      e[std::size_t(jy)] = 1.0;
      colR = thomas(rs, rd, ru, e);
      const double w = jy == 0 ? 0.5 : 1.0;  // trapezoid weight of the boundary node
      for (auto& c : colR) c /= g.h * w;
    }
    if (jy >= 1 && jy < M) {
      std::vector<cplx> e(nd, 0.0);
      e[std::size_t(jy - 1)] = 1.0;
      colD = thomas(ds, dd, du, e);
      for (auto& c : colD) c /= g.h;
    }
    for (std::size_t a = 0; a < xs.size(); ++a) {
      const int jx = node_of(g, xs[a], M);
      cplx gr = jx < M ? colR[std::size_t(jx)] : cplx(0.0);
      cplx gd = (jx >= 1 && jx < M) ? colD[std::size_t(jx - 1)] : cplx(0.0);
      out(Eigen::Index(a), Eigen::Index(b)) = gr - gd;
    }
  }
  return out;
}

CMat analytic_robin_difference(double v, double theta, cplx z, const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  cplx s = sqrt_cut(z - v);
  CMat out(Eigen::Index(xs.size()), Eigen::Index(ys.size()));
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b)
      out(Eigen::Index(a), Eigen::Index(b)) = std::exp(I_ * s * (xs[a] + ys[b])) / (theta - I_ * s);
  return out;
}

CMat DenseToyTriplet::s0_resolvent(cplx z) const {
  return (A0 - z * CMat::Identity(n, n)).partialPivLu().inverse();
}

CMat DenseToyTriplet::gamma(cplx z) const { return -(A0 - z * CMat::Identity(n, n)).partialPivLu().solve(G); }

CMat DenseToyTriplet::weyl(cplx z) const {
  return E + G.adjoint() * (A0 - z * CMat::Identity(n, n)).partialPivLu().solve(G);
}

CMat DenseToyTriplet::extension_matrix(const CMat& B) const {
  CMat K = Gamma1 - B * Gamma0;  // d x (n + d)
  CMat N = null_space(K, 1e-12);
  if (N.cols() != n) throw SingularError("extension_matrix: boundary relation has the wrong kernel dimension");
  CMat Nf = N.topRows(n), Nh = N.bottomRows(d);
  if (cond2(Nf) > 1e12) throw SingularError("extension_matrix: extension is not an operator");
  return (A0 * Nf + G * Nh) * Nf.inverse();
}

CMat DenseToyTriplet::direct_resolvent_difference(const CMat& B, cplx z) const {
  CMat S = extension_matrix(B);
  return (S - z * CMat::Identity(n, n)).inverse() - s0_resolvent(z);
}

double DenseToyTriplet::green_identity_residual(std::uint64_t s, int samples) const {
  std::mt19937_64 rng(s);
  std::normal_distribution<double> nd;
  auto vec = [&](int m) {
    CVec v(m);
    for (int i = 0; i < m; ++i) v(i) = cplx(nd(rng), nd(rng));
    return v;
  };
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    CVec u = vec(n + d), w = vec(n + d);
    CVec Au = A0 * u.head(n) + G * u.tail(d), Aw = A0 * w.head(n) + G * w.tail(d);
    cplx lhs = w.head(n).dot(Au) - Aw.dot(u.head(n));
    cplx rhs = (Gamma0 * w).dot(Gamma1 * u) - (Gamma1 * w).dot(Gamma0 * u);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, u.norm() * w.norm()));
  }
  return worst;
}

double DenseToyTriplet::mlambda_residual(cplx z, cplx zeta) const {
  CMat lhs = weyl(z) - weyl(zeta).adjoint();
  CMat rhs = (z - std::conj(zeta)) * gamma(zeta).adjoint() * gamma(z);
  return opnorm(lhs - rhs);
}

BoundaryTriplet DenseToyTriplet::to_triplet() const {
  BoundaryTriplet t;
  auto self = std::make_shared<DenseToyTriplet>(*this);
  t.label = "dense toy (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ", seed=" + std::to_string(seed) + ")";
  t.weyl.dim = d;
  t.weyl.eval = [self](cplx z) { return self->weyl(z); };
  t.weyl.derivative = [self](cplx z) {
    CMat r = self->s0_resolvent(z);
    return CMat(self->G.adjoint() * r * r * self->G);
  };
  RVec ev = herm_eigvals(A0);
  t.weyl.in_gap = [ev](double x) { return (ev.array() - x).abs().minCoeff() > 1e-8; };
  t.weyl.resolvent_hint = "sigma(S0) = sigma(A0)";
  t.gamma.dim = d;
  t.gamma.eval = [self](cplx z) { return GammaImage{self->gamma(z)}; };
  t.s0_resolvent = [self](cplx z) { return self->s0_resolvent(z); };
  return t;
}

DenseToyTriplet make_dense_toy(int n, int d, std::uint64_t seed) {
  if (d < 1 || 2 * d > n) throw DomainError("make_dense_toy: need 1 <= d <= n/2");
  for (int retry = 0; retry < 64; ++retry) {
    std::mt19937_64 rng(seed + std::uint64_t(retry));
    std::normal_distribution<double> nd;
    auto draw = [&](int r, int c) {
      CMat m(r, c);
      for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = cplx(nd(rng), nd(rng));
      return m;
    };
    DenseToyTriplet t;
    t.n = n;
    t.d = d;
    t.seed = seed + std::uint64_t(retry);
    t.retries = retry;
    t.A0 = herm_part(draw(n, n));
    t.G = draw(n, d) / std::sqrt(double(n));
    t.E = herm_part(draw(d, d));
    Eigen::JacobiSVD<CMat> svd(t.G);
    if (svd.singularValues().minCoeff() < 0.1) continue;  // degenerate draw
    t.Gamma0 = CMat::Zero(d, n + d);
    t.Gamma0.rightCols(d) = CMat::Identity(d, d);
    t.Gamma1.resize(d, n + d);
    t.Gamma1 << -t.G.adjoint(), t.E;
    if (t.green_identity_residual(t.seed) > 1e-12) continue;
    if (t.mlambda_residual(cplx(0.3, 1.0), cplx(-0.7, 0.5)) > 1e-10) continue;
    return t;
  }
  std::ostringstream os;
  os << "make_dense_toy: no admissible draw from seed " << seed;
  throw std::runtime_error(os.str());
}

CMat dense_spectral_integral(const std::function<CMat(double)>& omega, const std::vector<double>& atoms,
                             const std::vector<int>& block_dims) {
  if (atoms.size() != block_dims.size()) throw DomainError("dense_spectral_integral: size mismatch");
  if (atoms.empty()) return CMat(0, 0);
  int total = 0;
  for (int b : block_dims) total += b;
  CMat out;
  int off = 0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    CMat P = CMat::Zero(total, total);
    for (int s = 0; s < block_dims[k]; ++s) P(off + s, off + s) = 1.0;
    off += block_dims[k];
    CMat term = kron(omega(atoms[k]), P);
    if (k == 0) out = term;
    else out += term;
  }
  return out;
}

}  // namespace weyl
