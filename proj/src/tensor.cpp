// tensor.cpp — assembly of tensor-product Weyl functions and gamma-fields over atoms
#include "weyl/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace weyl {

std::vector<double> slot_lambdas(const SpectralMeasurePP& mu) {
  std::vector<double> out;
  for (const auto& a : mu.atoms)
    for (int s = 0; s < a.block_dim; ++s) out.push_back(a.lambda);
  return out;
}

CMat assemble_slots(const std::vector<CMat>& blocks) {
  const Eigen::Index S = Eigen::Index(blocks.size());
  if (S == 0) return CMat();
  const Eigen::Index d = blocks.front().rows();
  CMat out = CMat::Zero(d * S, d * S);
  for (Eigen::Index s = 0; s < S; ++s)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) out(tidx(i, s, S), tidx(j, s, S)) = blocks[s](i, j);
  return out;
}

CMat slot_major_permutation(int d, int nslots) {
  CMat P = CMat::Zero(d * nslots, d * nslots);
  for (int s = 0; s < nslots; ++s)
    for (int j = 0; j < d; ++j) P(s * d + j, tidx(j, s, nslots)) = 1.0;
  return P;
}

CMat L_im(const WeylFunction& M, cplx z, cplx zeta) {
  CMat mz = M(zeta);
  CMat w = herm_invsqrt(imag_part(mz));
  return w * (M(z) - herm_part(mz)) * w;
}

CMat L_real(const WeylFunction& M, cplx z, double a) {
  CMat w = herm_invsqrt(herm_part(weyl_derivative(M, a)));
  return w * (M(z) - M(cplx(a, 0.0))) * w;
}

CMat LKernel::operator()(cplx z, double lambda) const {
  if (real_point) {
    WeylFunction shifted = base;
    shifted.eval = [f = base.eval, lambda](cplx w) { return f(w - lambda); };
    if (base.derivative) shifted.derivative = [f = base.derivative, lambda](cplx w) { return f(w - lambda); };
    return L_real(shifted, z, a);
  }
  return L_im(base, z - lambda, I_ - lambda);
}

namespace {

struct SlotWeights {
  std::vector<CMat> W;  // right weights on gamma and both sides of M
  std::vector<CMat> Q;  // subtracted shift
};

TensorTriplet assemble(const BoundaryTriplet& base, const SpectralMeasurePP& mu, const SlotWeights& sw,
                       TensorMode mode, double a) {
  mu.validate();
  const std::vector<double> lam = slot_lambdas(mu);
  const int S = int(lam.size());
  const int d = base.dim();

  TensorTriplet t;
  t.base = base;
  t.measure = mu;
  t.mode = mode;
  t.a = a;

  BoundaryTriplet& out = t.assembled;
  out.label = "tensor(" + base.label + ")";
  out.normalized = mode == TensorMode::NormalizedAtI;
  out.weyl.dim = d * S;
  out.weyl.eval = [M = base.weyl.eval, lam, sw](cplx z) {
    std::vector<CMat> b;
    for (std::size_t s = 0; s < lam.size(); ++s) b.push_back(sw.W[s] * (M(z - lam[s]) - sw.Q[s]) * sw.W[s]);
    return assemble_slots(b);
  };
  if (base.weyl.derivative)
    out.weyl.derivative = [D = base.weyl.derivative, lam, sw](cplx z) {
      std::vector<CMat> b;
      for (std::size_t s = 0; s < lam.size(); ++s) b.push_back(sw.W[s] * D(z - lam[s]) * sw.W[s]);
      return assemble_slots(b);
    };
  if (base.weyl.in_gap)
    out.weyl.in_gap = [g = base.weyl.in_gap, lam](double x) {
      return std::all_of(lam.begin(), lam.end(), [&](double l) { return g(x - l); });
    };

  out.gamma.dim = d * S;
  out.gamma.eval = [G = base.gamma.eval, lam, sw, d, S](cplx z) {
    std::vector<GammaImage> imgs;
    for (int s = 0; s < S; ++s) imgs.push_back(right_multiply(G(z - lam[s]), sw.W[s]));
    if (imgs.empty() || imgs.front().dense()) {
      const Eigen::Index n = imgs.empty() ? 0 : imgs.front().matrix().rows();
      CMat g = CMat::Zero(n * S, d * S);
      for (int s = 0; s < S; ++s)
        for (Eigen::Index r = 0; r < n; ++r)
          for (int j = 0; j < d; ++j) g(tidx(r, s, S), tidx(j, s, S)) = imgs[s].matrix()(r, j);
      return GammaImage{g};
    }
    AnalyticKernel k;
    k.dim = d * S;
    for (int s = 0; s < S; ++s)
      for (const auto& p : imgs[s].kernel().pieces) {
        KernelPiece q = p;
        auto spread = [d, S, s](const CMat& v) {
          CMat o = CMat::Zero(v.rows(), d * S);
          for (int j = 0; j < d; ++j) o.col(tidx(j, s, S)) = v.col(j);
          return o;
        };
        q.fn = [f = p.fn, spread](double x) { return spread(f(x)); };
        if (p.dfn) q.dfn = [f = p.dfn, spread](double x) { return spread(f(x)); };
        k.pieces.push_back(std::move(q));
      }
    return GammaImage{k};
  };

  if (base.s0_resolvent)
    out.s0_resolvent = [R = base.s0_resolvent, lam, S](cplx z) {
      std::vector<CMat> b;
      for (int s = 0; s < S; ++s) b.push_back(R(z - lam[s]));
      const Eigen::Index n = b.empty() ? 0 : b.front().rows();
      CMat o = CMat::Zero(n * S, n * S);
      for (int s = 0; s < S; ++s)
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) o(tidx(i, s, S), tidx(j, s, S)) = b[s](i, j);
      return o;
    };
  if (base.s0_green) {
    GammaImage probe = base.gamma(I_);
    const std::size_t P = probe.dense() ? 0 : probe.kernel().pieces.size();
    if (P > 0)
      out.s0_green = [Gr = base.s0_green, lam, P](cplx z, std::size_t px, double x, std::size_t py, double y) {
        std::size_t sx = px / P, sy = py / P;
        if (sx != sy) return cplx(0.0);
        return Gr(z - lam[sx], px % P, x, py % P, y);
      };
  }

  std::vector<CMat> g0, g1, g2;
  for (int s = 0; s < S; ++s) {
    g0.push_back(sw.W[s].inverse());
    g1.push_back(sw.W[s]);
    g2.push_back(-sw.W[s] * sw.Q[s]);
  }
  t.maps = {assemble_slots(g0), assemble_slots(g1), assemble_slots(g2)};
  return t;
}

}  // namespace

WeylFunction tensor_weyl_bounded(const WeylFunction& baseM, const SpectralMeasurePP& mu) {
  BoundaryTriplet b;
  b.weyl = baseM;
  b.gamma.dim = baseM.dim;
  b.gamma.eval = [d = baseM.dim](cplx) { return GammaImage{CMat(CMat::Zero(0, d))}; };
  return tensor_raw(b, mu).assembled.weyl;
}

GammaField tensor_gamma_bounded(const GammaField& baseG, const SpectralMeasurePP& mu) {
  BoundaryTriplet b;
  b.weyl.dim = baseG.dim;
  b.weyl.eval = [d = baseG.dim](cplx) { return CMat(CMat::Zero(d, d)); };
  b.gamma = baseG;
  return tensor_raw(b, mu).assembled.gamma;
}

TensorTriplet tensor_raw(const BoundaryTriplet& base, const SpectralMeasurePP& mu) {
  const int d = base.dim();
  SlotWeights sw;
  for (std::size_t s = 0; s < slot_lambdas(mu).size(); ++s) {
    sw.W.push_back(CMat::Identity(d, d));
    sw.Q.push_back(CMat::Zero(d, d));
  }
  return assemble(base, mu, sw, TensorMode::RawBounded, 0.0);
}

TensorTriplet tensor_normalized(const BoundaryTriplet& base, const SpectralMeasurePP& mu) {
  SlotWeights sw;
  const auto lam = slot_lambdas(mu);
  for (std::size_t s = 0; s < lam.size(); ++s) {
    CMat m = base.weyl(I_ - lam[s]);
    try {
      sw.W.push_back(herm_invsqrt(imag_part(m)));
    } catch (const NotPositiveError&) {
      std::ostringstream os;
      os << "tensor_normalized: Im M(i - lambda) not positive definite at lambda = " << lam[s];
      throw NotPositiveError(os.str());
    }
    sw.Q.push_back(herm_part(m));
  }
  return assemble(base, mu, sw, TensorMode::NormalizedAtI, 0.0);
}

TensorTriplet tensor_positive(const BoundaryTriplet& base, const SpectralMeasurePP& mu, double a) {
  if (!(a < 0.0)) throw DomainError("tensor_positive: need a < 0");
  for (const auto& at : mu.atoms)
    if (at.lambda < 0.0) throw DomainError("tensor_positive: atoms must be non-negative");
  SlotWeights sw;
  for (double l : slot_lambdas(mu)) {
    CMat D = herm_part(weyl_derivative(base.weyl, a - l));
    try {
      sw.W.push_back(herm_invsqrt(D));
    } catch (const NotPositiveError&) {
      std::ostringstream os;
      os << "tensor_positive: M'(a - lambda) not positive definite at lambda = " << l;
      throw NotPositiveError(os.str());
    }
    sw.Q.push_back(herm_part(base.weyl(cplx(a - l, 0.0))));
  }
  TensorTriplet t = assemble(base, mu, sw, TensorMode::RegularizedAtRealPoint, a);
  t.assembled.label = "tensor-positive(" + base.label + ")";
  return t;
}

cplx scalar_type_block(const HerglotzScalar& m, cplx z, double lambda) {
  cplx mi = m(I_ - lambda);
  return (m(z - lambda) - mi.real()) / mi.imag();
}

WeylFunction tensor_quasi_scalar(const std::vector<HerglotzScalar>& ms, const SpectralMeasurePP& mu) {
  mu.validate();
  const auto lam = slot_lambdas(mu);
  const int S = int(lam.size()), d = int(ms.size());
  WeylFunction w;
  w.dim = d * S;
  w.eval = [ms, lam, S, d](cplx z) {
    CMat out = CMat::Zero(d * S, d * S);
    for (int j = 0; j < d; ++j)
      for (int s = 0; s < S; ++s) out(tidx(j, s, S), tidx(j, s, S)) = scalar_type_block(ms[j], z, lam[s]);
    return out;
  };
  return w;
}

TensorProbeReport friedrichs_krein_tensor_check(const WeylFunction& baseM, const SpectralMeasurePP& mu,
                                                int n_directions, std::uint64_t seed) {
  WeylFunction MS = tensor_weyl_bounded(baseM, mu);
  const double lmin = mu.atoms.front().lambda;
  std::vector<double> down;
  for (double e : log_grid(1.0, 1e6, 61)) down.push_back(lmin - e);
  for (int N = 1; N <= 5; ++N) down.push_back(lmin - double(N * N));
  std::sort(down.begin(), down.end(), std::greater<>());
  down.erase(std::unique(down.begin(), down.end()), down.end());
  std::vector<double> up;
  for (double e : log_grid(1.0, 1e-8, 33)) up.push_back(lmin - e);
  TensorProbeReport r;
  r.directions = n_directions;
  r.probe = friedrichs_probe(MS, down, up, sample_directions(MS.dim, n_directions, seed));
  r.lsb = lsb_uniform_probe(MS, {1, 2, 3, 4, 5}, down);
  return r;
}

double norm_im_power(const WeylFunction& baseM, double lambda, double p) {
  CMat im = imag_part(baseM(I_ - lambda));
  return opnorm(herm_apply(im, [p](double x) { return std::pow(x, p); }));
}

double norm_L(const WeylFunction& baseM, cplx z, double lambda) { return opnorm(L_im(baseM, z - lambda, I_ - lambda)); }

}  // namespace weyl
