// linalg.hpp — complex matrix aliases, error types and Hermitian functional calculus
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weyl {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I_{0.0, 1.0};

// error taxonomy shared by every module; the CLI maps these onto exit codes
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct PoleError : DomainError {
  using DomainError::DomainError;
};
struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPositiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::logic_error {
  using std::logic_error::logic_error;
};

// eigenvalue floor for sqrt / inverse sqrt of positive matrices
inline constexpr double kEigFloor = 1e-13;

CMat herm_part(const CMat& m);   // (M + M*)/2, the "Re" of a matrix
CMat imag_part(const CMat& m);   // (M - M*)/(2i)

// f applied through the eigendecomposition of a Hermitian matrix
CMat herm_apply(const CMat& h, const std::function<double(double)>& f);
CMat herm_sqrt(const CMat& h, double floor = kEigFloor);
CMat herm_invsqrt(const CMat& h, double floor = kEigFloor);
RVec herm_eigvals(const CMat& h);

double opnorm(const CMat& m);       // largest singular value
double cond2(const CMat& m);        // ratio of extreme singular values
// cond2, but also measured against `scale`: catches 1x1 and uniformly tiny matrices
double cond_scaled(const CMat& m, double scale);
double herm_residual(const CMat& m);  // ||M - M*||_max

CMat kron(const CMat& a, const CMat& b);
CMat blockdiag(const std::vector<CMat>& blocks);
CMat embed_cols(const CMat& block, Eigen::Index total_cols, Eigen::Index offset);

// orthonormal basis of the numerical null space (singular values below tol * sigma_max)
CMat null_space(const CMat& m, double tol);
Eigen::Index num_rank(const CMat& m, double tol);

}  // namespace weyl
