// jcdot.hpp — Jaynes-Cummings quantum dot coupled to two leads through a point contact
#pragma once

#include "weyl/herglotz.hpp"
#include "weyl/tensor.hpp"

namespace weyl {

struct FockTruncation {
  int N = 0;
  CMat b, bdag, T;  // lowering, raising, number operator on span{e_0..e_N}
  static FockTruncation make(int N);
  int dim() const { return N + 1; }
};

struct TwoLevelDot {
  double alpha = 0.0, beta = 0.0;
  cplx gamma = 0.0;
  CMat B;                  // [[alpha, gamma], [conj gamma, beta]] in the (l, r) basis
  double lambda0 = 0.0, lambda1 = 0.0;
  CVec e0, e1;             // eigenvectors, lambda0 <= lambda1
  CMat sigma_plus, sigma_minus;  // e1 e0^*, e0 e1^* in the (l, r) basis
  bool degenerate = false;
  static TwoLevelDot make(double alpha, double beta, cplx gamma);
  CMat U() const;  // columns e0, e1
};

struct JCModel {
  double v_l = 0.0, v_r = 0.0;
  TwoLevelDot dot;
  double tau = 0.0;
  FockTruncation fock;
  static JCModel make(int N, double alpha, double beta, cplx gamma, double tau, double v_l = 0.0, double v_r = 0.0);
  void validate() const;  // throws DomainError
  bool ordered_leads() const { return v_r <= v_l; }
  int dim() const { return 2 * fock.dim(); }
};

// B (x) I + I (x) T + tau (sigma+ (x) b + sigma- (x) b^*), boundary (l, r) outer, Fock inner
CMat build_CJC(const JCModel& m);
// the same operator written in the dot eigenbasis (e0, e1) outer, Fock inner
CMat build_CJC_eigen(const JCModel& m);

// diag_k sqrt(sqrt(1 + (k + v)^2) + k + v)
CMat build_Z(double v, const FockTruncation& f);

struct RQ {
  CMat R, Q;
};
RQ build_R_Q(const JCModel& m);          // closed forms, cross-checked against the generic path
RQ build_R_Q_generic(const JCModel& m);  // sqrt(Im m(i - T)), Re m(i - T) from the scalar coefficients

CMat build_tilde_CJC(const JCModel& m);
CMat build_tilde_T(const JCModel& m);  // R^{-1}(I (x) T - Q) R^{-1}

// Gamma1 - C Gamma0 against its regularized form, as matrices acting on (Gamma0, Gamma1) data
struct BCEquivalence {
  double identity_residual = 0.0;  // || R^{-1}[-C, I] - [-C~, I] J ||_max
  long kernel_dim_raw = 0, kernel_dim_tilde = 0;
  double cross_residual = 0.0;     // max of ||A2 N1||, ||A1 N2|| on orthonormal kernel bases
  bool kernels_equal = false;
};
BCEquivalence boundary_condition_equivalence(const JCModel& m, double tol = 1e-10);

enum class JCBasis { Boundary, DotEigen };

struct JacobiReport {
  std::vector<int> perm;  // chain order: new index -> canonical index
  CMat permuted;
  int singletons = 0, chains = 0;
  double off_chain_max = 0.0;   // entries outside the 1 + 2 + ... + 2 + 1 block pattern (eigenbasis)
  bool chain_structure = false; // off_chain_max <= 1e-12 ||M||
  double beyond_band_max = 0.0; // Fock-major, entries with |k - k'| > 1
  bool block_tridiagonal = false;
};
// chains {e0 (x) e_{k+1}, e1 (x) e_k}; a Boundary-basis matrix is rotated into the eigenbasis for the chain test
JacobiReport jacobi_reorder(const CMat& mat, const JCModel& m, JCBasis basis);

// normalized Weyl function of the two leads tensored with T, boundary outer
CMat weyl_S(const JCModel& m, cplx z);

// Fock matrix of gamma~(z)(C~ - M^S(z))^{-1} gamma~(conj z)^* at (x, y); x < 0 is the left lead
CMat dot_resolvent_correction(const JCModel& m, cplx z, double x, double y);
// the core (C~ - M^S(z))^{-1}, boundary outer
CMat dot_correction_core(const JCModel& m, cplx z);

struct Eigencluster {
  double value = 0.0;
  int multiplicity = 1;
};
std::vector<double> sorted_eigenvalues(const CMat& h);
std::vector<Eigencluster> cluster_eigenvalues(const std::vector<double>& ev, double tol = 1e-9);
std::vector<double> spectrum_CJC(const JCModel& m);
std::vector<double> spectrum_tilde_CJC(const JCModel& m);

}  // namespace weyl
