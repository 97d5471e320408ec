// jcdot.cpp — Jaynes-Cummings boundary operators, their regularization and Krein sampling
#include "weyl/jcdot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace weyl {

namespace {

// canonical index: dot/boundary a outer, Fock k inner
inline int cidx(int a, int k, int N) { return a * (N + 1) + k; }

CVec fix_phase(CVec v) {
  Eigen::Index j;
  v.cwiseAbs().maxCoeff(&j);
  return v * (std::abs(v(j)) / v(j));
}

CMat diag_of(const std::vector<double>& d) {
  CMat m = CMat::Zero(Eigen::Index(d.size()), Eigen::Index(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = d[i];
  return m;
}

CMat permute(const CMat& m, const std::vector<int>& p) {
  const Eigen::Index n = Eigen::Index(p.size());
  CMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(p[i], p[j]);
  return out;
}

}  // namespace

FockTruncation FockTruncation::make(int N) {
  if (N < 0) throw DomainError("FockTruncation: N must be non-negative");
  FockTruncation f;
  f.N = N;
  f.b = CMat::Zero(N + 1, N + 1);
  f.T = CMat::Zero(N + 1, N + 1);
  for (int k = 1; k <= N; ++k) f.b(k - 1, k) = std::sqrt(double(k));
  for (int k = 0; k <= N; ++k) f.T(k, k) = double(k);
  f.bdag = f.b.adjoint();
  return f;
}

TwoLevelDot TwoLevelDot::make(double alpha, double beta, cplx gamma) {
  TwoLevelDot d;
  d.alpha = alpha;
  d.beta = beta;
  d.gamma = gamma;
  d.B.resize(2, 2);
  d.B << alpha, gamma, std::conj(gamma), beta;
  Eigen::SelfAdjointEigenSolver<CMat> es(d.B);
  d.lambda0 = es.eigenvalues()(0);
  d.lambda1 = es.eigenvalues()(1);
  const double scale = std::max({1.0, std::abs(d.lambda0), std::abs(d.lambda1)});
  d.degenerate = d.lambda1 - d.lambda0 <= 1e-14 * scale;
  if (d.degenerate) {
    // every vector is an eigenvector: take e0 with the larger (unit) first component
    d.e0 = CVec::Unit(2, 0);
    d.e1 = CVec::Unit(2, 1);
    d.lambda0 = d.lambda1 = 0.5 * (alpha + beta);
  } else {
    d.e0 = fix_phase(es.eigenvectors().col(0));
    d.e1 = fix_phase(es.eigenvectors().col(1));
  }
  d.sigma_plus = d.e1 * d.e0.adjoint();
  d.sigma_minus = d.sigma_plus.adjoint();
  return d;
}

CMat TwoLevelDot::U() const {
  CMat u(2, 2);
  u << e0, e1;
  return u;
}

JCModel JCModel::make(int N, double alpha, double beta, cplx gamma, double tau, double v_l, double v_r) {
  JCModel m;
  m.v_l = v_l;
  m.v_r = v_r;
  m.dot = TwoLevelDot::make(alpha, beta, gamma);
  m.tau = tau;
  m.fock = FockTruncation::make(N);
  m.validate();
  return m;
}

void JCModel::validate() const {
  if (!(v_l >= 0.0) || !(v_r >= 0.0)) throw DomainError("JCModel: lead potentials must be non-negative");
  if (!std::isfinite(tau)) throw DomainError("JCModel: tau must be finite");
}

CMat build_CJC(const JCModel& m) {
  const auto& f = m.fock;
  const CMat I2 = CMat::Identity(2, 2), IF = CMat::Identity(f.dim(), f.dim());
  return kron(m.dot.B, IF) + kron(I2, f.T) + m.tau * (kron(m.dot.sigma_plus, f.b) + kron(m.dot.sigma_minus, f.bdag));
}

CMat build_CJC_eigen(const JCModel& m) {
  const auto& f = m.fock;
  const CMat I2 = CMat::Identity(2, 2), IF = CMat::Identity(f.dim(), f.dim());
  CMat D = CMat::Zero(2, 2), E10 = CMat::Zero(2, 2);
  D(0, 0) = m.dot.lambda0;
  D(1, 1) = m.dot.lambda1;
  E10(1, 0) = 1.0;
  return kron(D, IF) + kron(I2, f.T) + m.tau * (kron(E10, f.b) + kron(E10.transpose(), f.bdag));
}

CMat build_Z(double v, const FockTruncation& f) {
  std::vector<double> d;
  for (int k = 0; k <= f.N; ++k) {
    double w = k + v;
    d.push_back(std::sqrt(std::sqrt(1.0 + w * w) + w));
  }
  return diag_of(d);
}

RQ build_R_Q_generic(const JCModel& m) {
  const int n = m.fock.dim();
  std::vector<double> r, q;
  for (double v : {m.v_l, m.v_r})
    for (int k = 0; k < n; ++k) {
      cplx mi = m_schrodinger_halfline(I_ - double(k), v);
      r.push_back(std::sqrt(mi.imag()));
      q.push_back(mi.real());
    }
  return {diag_of(r), diag_of(q)};
}

RQ build_R_Q(const JCModel& m) {
  const int n = m.fock.dim();
  CMat Zl = build_Z(m.v_l, m.fock), Zr = build_Z(m.v_r, m.fock);
  std::vector<double> r, q;
  for (const CMat* Z : {&Zl, &Zr})
    for (int k = 0; k < n; ++k) {
      double z = (*Z)(k, k).real();
      r.push_back(std::pow(2.0, -0.25) / std::sqrt(z));
      q.push_back(-z / std::sqrt(2.0));
    }
  RQ rq{diag_of(r), diag_of(q)};
  RQ g = build_R_Q_generic(m);
  double dev = std::max((rq.R - g.R).cwiseAbs().maxCoeff(), (rq.Q - g.Q).cwiseAbs().maxCoeff());
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "build_R_Q: closed form disagrees with Im/Re m(i - T) by " << dev;
    throw std::runtime_error(os.str());
  }
  return rq;
}

namespace {
CMat regularize(const JCModel& m, const CMat& C) {
  RQ rq = build_R_Q(m);
  CMat Rinv = rq.R.diagonal().cwiseInverse().asDiagonal();
  return Rinv * (C - rq.Q) * Rinv;
}
}  // namespace

CMat build_tilde_CJC(const JCModel& m) { return regularize(m, build_CJC(m)); }

CMat build_tilde_T(const JCModel& m) {
  return regularize(m, kron(CMat::Identity(2, 2), m.fock.T));
}

BCEquivalence boundary_condition_equivalence(const JCModel& m, double tol) {
  const int n = m.dim();
  RQ rq = build_R_Q(m);
  CMat Rinv = rq.R.diagonal().cwiseInverse().asDiagonal();
  CMat C = build_CJC(m), Ct = build_tilde_CJC(m);
  const CMat I = CMat::Identity(n, n);
  CMat raw(n, 2 * n), tilde(n, 2 * n), J = CMat::Zero(2 * n, 2 * n);
  raw << -C, I;
  raw = Rinv * raw;
  tilde << -Ct, I;
  // (Gamma0, Gamma1) -> (Gamma0~, Gamma1~) = (R Gamma0, R^{-1}(Gamma1 - Q Gamma0))
  J.topLeftCorner(n, n) = rq.R;
  J.bottomLeftCorner(n, n) = -Rinv * rq.Q;
  J.bottomRightCorner(n, n) = Rinv;
  CMat tildeJ = tilde * J;

  BCEquivalence r;
  r.identity_residual = (raw - tildeJ).cwiseAbs().maxCoeff();
  CMat N1 = null_space(raw, tol), N2 = null_space(tildeJ, tol);
  r.kernel_dim_raw = N1.cols();
  r.kernel_dim_tilde = N2.cols();
  double a = N1.cols() ? opnorm(tildeJ * N1) / std::max(1.0, opnorm(tildeJ)) : 0.0;
  double b = N2.cols() ? opnorm(raw * N2) / std::max(1.0, opnorm(raw)) : 0.0;
  r.cross_residual = std::max(a, b);
  r.kernels_equal = r.kernel_dim_raw == r.kernel_dim_tilde && r.cross_residual < tol;
  return r;
}

JacobiReport jacobi_reorder(const CMat& mat, const JCModel& m, JCBasis basis) {
  const int N = m.fock.N, n = m.dim();
  if (mat.rows() != n || mat.cols() != n) throw DomainError("jacobi_reorder: matrix size does not match the model");
  JacobiReport r;

  // Fock-major band test, valid in either dot basis since the rotation is Fock-diagonal
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i % (N + 1) - j % (N + 1)) > 1) r.beyond_band_max = std::max(r.beyond_band_max, std::abs(mat(i, j)));
  r.block_tridiagonal = r.beyond_band_max < 1e-14 * std::max(1.0, opnorm(mat));

  CMat E = mat;
  if (basis == JCBasis::Boundary) {
    CMat W = kron(m.dot.U(), CMat::Identity(N + 1, N + 1));
    E = W.adjoint() * mat * W;
  }
  std::vector<int> block_of;
  r.perm.push_back(cidx(0, 0, N));
  block_of.push_back(0);
  for (int k = 0; k < N; ++k) {
    r.perm.push_back(cidx(0, k + 1, N));
    r.perm.push_back(cidx(1, k, N));
    block_of.push_back(k + 1);
    block_of.push_back(k + 1);
  }
  r.perm.push_back(cidx(1, N, N));
  block_of.push_back(N + 1);
  r.singletons = 2;
  r.chains = N;
  r.permuted = permute(E, r.perm);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (block_of[i] != block_of[j]) r.off_chain_max = std::max(r.off_chain_max, std::abs(r.permuted(i, j)));
  r.chain_structure = r.off_chain_max <= 1e-12 * std::max(1.0, opnorm(mat));
  return r;
}

CMat weyl_S(const JCModel& m, cplx z) {
  static const auto lead = [](double v, bool left) { return left ? schrodinger_left_scalar(v) : schrodinger_right_scalar(v); };
  WeylFunction w = tensor_quasi_scalar({lead(m.v_l, true), lead(m.v_r, false)}, SpectralMeasurePP::integers(0, m.fock.N));
  return w(z);
}

CMat dot_correction_core(const JCModel& m, cplx z) {
  CMat Ct = build_tilde_CJC(m), S = weyl_S(m, z);
  CMat A = Ct - S;
  double c = cond_scaled(A, std::max(opnorm(Ct), opnorm(S)));
  if (!(c <= kKreinCondMax)) {
    std::ostringstream os;
    os << "dot_resolvent_correction: C~ - M^S(z) singular at z = " << z << " (cond " << c << ")";
    throw SingularError(os.str());
  }
  return A.inverse();
}

CMat dot_resolvent_correction(const JCModel& m, cplx z, double x, double y) {
  const int n1 = m.fock.dim();
  RQ rq = build_R_Q(m);
  auto gamma_row = [&](cplx w, double x) {
    CMat g = CMat::Zero(n1, 2 * n1);
    const int j = x < 0.0 ? 0 : 1;
    const double v = j == 0 ? m.v_l : m.v_r;
    for (int k = 0; k < n1; ++k) {
      cplx s = sqrt_cut(w - double(k) - v);
      cplx e = j == 0 ? std::exp(-I_ * s * x) : std::exp(I_ * s * x);
      int col = cidx(j, k, m.fock.N);
      g(k, col) = e / rq.R(col, col).real();
    }
    return g;
  };
  return gamma_row(z, x) * dot_correction_core(m, z) * gamma_row(std::conj(z), y).adjoint();
}

std::vector<double> sorted_eigenvalues(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(herm_part(h), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<Eigencluster> cluster_eigenvalues(const std::vector<double>& ev, double tol) {
  std::vector<Eigencluster> out;
  for (double e : ev) {
    if (!out.empty() && std::abs(e - out.back().value) <= tol * std::max(1.0, std::abs(e))) {
      auto& c = out.back();
      c.value = (c.value * c.multiplicity + e) / (c.multiplicity + 1);
      ++c.multiplicity;
    } else {
      out.push_back({e, 1});
    }
  }
  return out;
}

std::vector<double> spectrum_CJC(const JCModel& m) { return sorted_eigenvalues(build_CJC(m)); }
std::vector<double> spectrum_tilde_CJC(const JCModel& m) { return sorted_eigenvalues(build_tilde_CJC(m)); }

}  // namespace weyl
