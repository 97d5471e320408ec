// linalg.cpp — Hermitian functional calculus and small dense helpers
#include "weyl/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <Eigen/SVD>
#include <sstream>

namespace weyl {

CMat herm_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

CMat imag_part(const CMat& m) { return (m - m.adjoint()) / cplx(0.0, 2.0); }

CMat herm_apply(const CMat& h, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<CMat> es(herm_part(h));
  if (es.info() != Eigen::Success) throw std::runtime_error("herm_apply: eigensolver failed");
  RVec fv = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {
void check_floor(const CMat& h, double floor, const char* who) {
  RVec ev = herm_eigvals(h);
  if (ev.size() && ev.minCoeff() < floor) {
    std::ostringstream os;
    os << who << ": matrix not positive definite (min eigenvalue " << ev.minCoeff() << ")";
    throw NotPositiveError(os.str());
  }
}
}  // namespace

CMat herm_sqrt(const CMat& h, double floor) {
  check_floor(h, floor, "herm_sqrt");
  return herm_apply(h, [](double x) { return std::sqrt(x); });
}

CMat herm_invsqrt(const CMat& h, double floor) {
  check_floor(h, floor, "herm_invsqrt");
  return herm_apply(h, [](double x) { return 1.0 / std::sqrt(x); });
}

RVec herm_eigvals(const CMat& h) {
  if (h.size() == 0) return RVec();
  Eigen::SelfAdjointEigenSolver<CMat> es(herm_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double opnorm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

double cond2(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  double lo = s(s.size() - 1);
  return lo == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / lo;
}

double cond_scaled(const CMat& m, double scale) {
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(s(0), scale) / lo;
}

double herm_residual(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat blockdiag(const std::vector<CMat>& blocks) {
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  CMat out = CMat::Zero(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMat embed_cols(const CMat& block, Eigen::Index total_cols, Eigen::Index offset) {
  CMat out = CMat::Zero(block.rows(), total_cols);
  out.middleCols(offset, block.cols()) = block;
  return out;
}

CMat null_space(const CMat& m, double tol) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigen::Index num_rank(const CMat& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(s(0), 1.0)) ++rank;
  return rank;
}

}  // namespace weyl
