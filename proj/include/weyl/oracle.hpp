// oracle.hpp — brute-force references: finite differences, dense toy triplets, dense spectral sums
#pragma once

#include "weyl/spectral_integral.hpp"
#include "weyl/triplet.hpp"

#include <cstdint>

namespace weyl {

// half-line [0, L] with u(L) = 0
struct FDGrid {
  double h = 1e-3;
  double L = 30.0;
  double v = 0.0;
  int intervals() const;                 // L / h, throws unless h > 0 and L/h integral
  bool decay_adequate(cplx z) const;     // L >= 20 / min(1, Im sqrt(z - v))
};

// u(0) = 1, backward recursion from u(L) = 0, one-sided second-order u'(0)
cplx fd_m_function(const FDGrid& g, cplx z);

// G_theta(x, y) - G_D(x, y) on xs x ys; Robin u'(0) = theta u(0) through a ghost node
CMat fd_resolvent_difference(const FDGrid& g, double theta, cplx z, const std::vector<double>& xs,
                             const std::vector<double>& ys);
// closed form e^{i s (x + y)} / (theta - i s), s = sqrt(z - v)
CMat analytic_robin_difference(double v, double theta, cplx z, const std::vector<double>& xs,
                               const std::vector<double>& ys);

// A* acts on (f, h) in C^n x C^d by A0 f + G h; Gamma0 = [0, I], Gamma1 = [-G^*, E]
struct DenseToyTriplet {
  int n = 0, d = 0;
  std::uint64_t seed = 0;      // seed actually used
  int retries = 0;             // degenerate draws skipped
  CMat A0, G, E;
  CMat Gamma0, Gamma1;         // d x (n + d)

  CMat gamma(cplx z) const;    // -(A0 - z)^{-1} G
  CMat weyl(cplx z) const;     // E + G^*(A0 - z)^{-1} G
  CMat s0_resolvent(cplx z) const;
  // ker(Gamma1 - B Gamma0) realized as a matrix on C^n
  CMat extension_matrix(const CMat& B) const;
  CMat direct_resolvent_difference(const CMat& B, cplx z) const;
  double green_identity_residual(std::uint64_t seed, int samples = 8) const;
  double mlambda_residual(cplx z, cplx zeta) const;
  BoundaryTriplet to_triplet() const;
};

DenseToyTriplet make_dense_toy(int n, int d, std::uint64_t seed);

// sum_k Omega(lambda_k) (x) P_k, boundary outer and slot inner
CMat dense_spectral_integral(const std::function<CMat(double)>& omega, const std::vector<double>& atoms,
                             const std::vector<int>& block_dims);

}  // namespace weyl
