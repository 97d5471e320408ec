// tensor.hpp — boundary triplets for S = A (x) I + I (x) T with pure-point T
#pragma once

#include "weyl/herglotz.hpp"
#include "weyl/spectral_integral.hpp"
#include "weyl/triplet.hpp"

namespace weyl {

// Index contract: boundary (or ambient) index outer, atom slot inner.
inline Eigen::Index tidx(Eigen::Index outer, Eigen::Index slot, Eigen::Index nslots) { return outer * nslots + slot; }

// lambda for every multiplicity slot, in slot order
std::vector<double> slot_lambdas(const SpectralMeasurePP& mu);

// per-slot d x d blocks -> (d*S) x (d*S) matrix in the boundary-major contract
CMat assemble_slots(const std::vector<CMat>& blocks);
// permutation matrix P with P * (boundary-major) * P^T = slot-major
CMat slot_major_permutation(int d, int nslots);

enum class TensorMode { RawBounded, NormalizedAtI, RegularizedAtRealPoint };

// tilde Gamma0 = G0 Gamma0, tilde Gamma1 = G1 Gamma1 + G2 Gamma0, all acting on tensor boundary data
struct BoundaryTransform {
  CMat G0, G1, G2;
};

struct TensorTriplet {
  BoundaryTriplet base;
  SpectralMeasurePP measure;
  TensorMode mode = TensorMode::RawBounded;
  double a = 0.0;
  BoundaryTriplet assembled;
  BoundaryTransform maps;
};

// L^A(z, zeta) = Im M(zeta)^{-1/2} (M(z) - Re M(zeta)) Im M(zeta)^{-1/2}
CMat L_im(const WeylFunction& M, cplx z, cplx zeta);
// L^A(z, a) = M'(a)^{-1/2} (M(z) - M(a)) M'(a)^{-1/2}
CMat L_real(const WeylFunction& M, cplx z, double a);

struct LKernel {
  bool real_point = false;
  double a = 0.0;
  WeylFunction base;
  // L^A(z - lambda, i - lambda) or L^A(z - lambda, a - lambda)
  CMat operator()(cplx z, double lambda) const;
};

WeylFunction tensor_weyl_bounded(const WeylFunction& baseM, const SpectralMeasurePP& mu);
GammaField tensor_gamma_bounded(const GammaField& baseG, const SpectralMeasurePP& mu);

TensorTriplet tensor_raw(const BoundaryTriplet& base, const SpectralMeasurePP& mu);
TensorTriplet tensor_normalized(const BoundaryTriplet& base, const SpectralMeasurePP& mu);
TensorTriplet tensor_positive(const BoundaryTriplet& base, const SpectralMeasurePP& mu, double a);

// diag_j of (m_j(z - T) - Re m_j(i - T)) / Im m_j(i - T), boundary j outer
WeylFunction tensor_quasi_scalar(const std::vector<HerglotzScalar>& ms, const SpectralMeasurePP& mu);
// scalar-type block: (m(z - lambda) - Re m(i - lambda)) / Im m(i - lambda)
cplx scalar_type_block(const HerglotzScalar& m, cplx z, double lambda);

struct TensorProbeReport {
  ProbeReport probe;
  std::vector<LsbEntry> lsb;
  int directions = 0;
};

// Friedrichs / Krein indicators and LSB levels 1..5 for the raw tensor Weyl function
TensorProbeReport friedrichs_krein_tensor_check(const WeylFunction& baseM, const SpectralMeasurePP& mu,
                                                int n_directions = 20, std::uint64_t seed = 1);

// growth certificates
double norm_im_power(const WeylFunction& baseM, double lambda, double p);  // ||Im M(i - l)^p||
double norm_L(const WeylFunction& baseM, cplx z, double lambda);           // ||L(z - l, i - l)||

}  // namespace weyl
