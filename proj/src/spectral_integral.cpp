// spectral_integral.cpp — atomic and piecewise-constant spectral integration
#include "weyl/spectral_integral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weyl {

int SpectralMeasurePP::total_dim() const {
  int n = 0;
  for (const auto& a : atoms) n += a.block_dim;
  return n;
}

void SpectralMeasurePP::validate() const {
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (atoms[k].block_dim < 1) throw DomainError("SpectralMeasurePP: block_dim must be positive");
    if (k && !(atoms[k].lambda > atoms[k - 1].lambda)) throw DomainError("SpectralMeasurePP: atoms not increasing");
    if (window && (atoms[k].lambda < window->first || atoms[k].lambda > window->second))
      throw DomainError("SpectralMeasurePP: atom outside window");
  }
}

SpectralMeasurePP SpectralMeasurePP::integers(int lo, int hi) {
  SpectralMeasurePP m;
  for (int k = lo; k <= hi; ++k) m.atoms.push_back({double(k), 1});
  m.window = {double(lo), double(hi)};
  return m;
}

SpectralMeasurePP SpectralMeasurePP::from_points(const std::vector<double>& lambdas) {
  SpectralMeasurePP m;
  for (double l : lambdas) m.atoms.push_back({l, 1});
  m.validate();
  return m;
}

CMat integral_pp(const OperatorFunctionOnR& omega, const SpectralMeasurePP& mu) {
  mu.validate();
  const int d = omega.dim;
  CMat out = CMat::Zero(d * mu.total_dim(), d * mu.total_dim());
  Eigen::Index off = 0;
  for (const auto& a : mu.atoms) {
    CMat w = omega(a.lambda);
    for (int s = 0; s < a.block_dim; ++s, off += d) out.block(off, off, d, d) = w;
  }
  return out;
}

CMat PCMeasure::F(double lo, double hi) const {
  CMat out = CMat::Zero(dim, dim);
  for (std::size_t j = 0; j < jumps.size(); ++j)
    if (jumps[j] >= lo && jumps[j] < hi) out += projections[j];
  return out;
}

CMat PCMeasure::F_set(const std::vector<int>& idx) const {
  CMat out = CMat::Zero(dim, dim);
  for (int j : idx) out += projections.at(j);
  return out;
}

PCMeasure lift_measure(const SpectralMeasurePP& mu, int d) {
  mu.validate();
  PCMeasure F;
  const int total = mu.total_dim();
  F.dim = d * total;
  int slot = 0;
  for (const auto& a : mu.atoms) {
    CMat P = CMat::Zero(total, total);
    for (int s = 0; s < a.block_dim; ++s, ++slot) P(slot, slot) = 1.0;
    F.jumps.push_back(a.lambda);
    F.projections.push_back(kron(P, CMat::Identity(d, d)));
  }
  double lo = mu.atoms.empty() ? 0.0 : mu.atoms.front().lambda;
  double hi = mu.atoms.empty() ? 1.0 : mu.atoms.back().lambda;
  if (mu.window) { lo = mu.window->first; hi = mu.window->second; }
  F.a = lo;
  F.b = std::nextafter(hi, hi + 1.0) + 1e-12 * (1.0 + std::abs(hi));  // [a, b) must contain the top atom
  return F;
}

OperatorFunctionOnR lift_function(const OperatorFunctionOnR& omega, int total_dim) {
  OperatorFunctionOnR out = omega;
  out.dim = omega.dim * total_dim;
  out.eval = [f = omega.eval, total_dim](double l) { return kron(CMat::Identity(total_dim, total_dim), f(l)); };
  return out;
}

RiemannResult integral_riemann(const OperatorFunctionOnR& omega, const PCMeasure& F, double tol, int max_depth) {
  if (!(F.b > F.a)) throw DomainError("integral_riemann: empty interval");
  for (double j : F.jumps)
    if (j < F.a || j >= F.b) throw DomainError("integral_riemann: jump outside [a, b)");
  auto sum_at = [&](int depth) {
    const long cells = 1L << depth;
    std::vector<double> pts;
    for (long m = 0; m <= cells; ++m) pts.push_back(F.a + (F.b - F.a) * double(m) / double(cells));
    pts.insert(pts.end(), F.jumps.begin(), F.jumps.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    CMat s = CMat::Zero(F.dim, F.dim);
    for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
      CMat f = F.F(pts[m], pts[m + 1]);
      if (f.cwiseAbs().maxCoeff() == 0.0) continue;  // Omega is only sampled where F has mass
      s += omega(pts[m]) * f;
    }
    return s;
  };
  RiemannResult r;
  CMat prev = sum_at(0);
  for (int depth = 1; depth <= max_depth; ++depth) {
    CMat cur = sum_at(depth);
    double change = (cur - prev).cwiseAbs().maxCoeff();
    if (change < tol) {
      r.value = cur;
      r.depth = depth;
      r.last_change = change;
      return r;
    }
    prev = std::move(cur);
  }
  throw std::runtime_error("integral_riemann: no convergence at max refinement depth");
}

double admissibility_residual(const OperatorFunctionOnR& omega, const PCMeasure& F,
                              const std::vector<std::vector<int>>& probe_sets, const std::vector<double>& samples) {
  std::vector<double> pts = samples;
  if (pts.empty()) {
    pts = F.jumps;
    for (std::size_t j = 0; j + 1 < F.jumps.size(); ++j) pts.push_back(0.5 * (F.jumps[j] + F.jumps[j + 1]));
  }
  double worst = 0.0;
  for (const auto& set : probe_sets) {
    CMat Fd = F.F_set(set);
    for (double l : pts) {
      CMat w = omega(l);
      worst = std::max(worst, opnorm(w * Fd - Fd * w * Fd));
    }
  }
  return worst;
}

double functional_calculus_residual(const OperatorFunctionOnR& X, const PCMeasure& F,
                                    const std::function<double(double)>& phi) {
  OperatorFunctionOnR phiX = X;
  phiX.eval = [x = X.eval, phi](double l) { return herm_apply(x(l), phi); };
  CMat lhs = integral_riemann(phiX, F).value;
  CMat rhs = herm_apply(integral_riemann(X, F).value, phi);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

TruncationPlan truncation_plan(const OperatorFunctionOnR& omega, const std::function<double(std::size_t)>& lambda_k,
                               const std::function<double(std::size_t)>& f_moment, double tol) {
  const double w = omega.C0 * omega.C0;
  auto term = [&](std::size_t k) { return w * std::pow(1.0 + std::abs(lambda_k(k)), 2.0 * omega.alpha) * f_moment(k); };
  constexpr int kMinPow = 4, kMaxPow = 22;
  std::vector<double> terms;
  std::vector<double> incr;  // sums over the doubling windows [n/2, n)
  double tail_beyond = std::numeric_limits<double>::infinity();
  const double target = tol * tol;
  for (int p = kMinPow; p <= kMaxPow; ++p) {
    std::size_t n = std::size_t(1) << p;
    for (std::size_t k = terms.size(); k < n; ++k) terms.push_back(term(k));
    if (p > kMinPow) {
      double w = 0.0;
      for (std::size_t k = n; k-- > n / 2;) w += terms[k];
      incr.push_back(w);
    }
    if (incr.size() >= 4) {
      std::size_t s = incr.size();
      bool stalled = true;
      for (std::size_t j = s - 3; j < s; ++j)
        if (!(incr[j - 1] > 0.0) || incr[j] / incr[j - 1] < 0.95) stalled = false;
      if (stalled) {
        std::ostringstream os;
        os << "truncation_plan: moment sum fails the Cauchy test (window " << n << ")";
        throw MomentDivergence(os.str());
      }
    }
    if (incr.size() >= 2) {
      double last = incr.back(), before = incr[incr.size() - 2];
      if (last == 0.0) {
        tail_beyond = 0.0;
      } else if (before > 0.0 && last / before < 1.0) {
        double r = last / before;
        tail_beyond = last * r / (1.0 - r);
      }
      if (tail_beyond < 1e-3 * target && (last == 0.0 || last / before < 0.5)) break;
    }
  }
  if (!std::isfinite(tail_beyond)) throw MomentDivergence("truncation_plan: tail not certifiable");
  // tails summed from the far end so that small tails are not lost to cancellation
  const std::size_t n = terms.size();
  std::vector<double> tail_after(n, 0.0);  // sum_{K < k < n}
  for (std::size_t K = n - 1; K-- > 0;) tail_after[K] = tail_after[K + 1] + terms[K + 1];
  TruncationPlan plan;
  plan.certified = omega.certified;
  for (std::size_t K = 0; K < n; ++K) {
    double tail = tail_after[K] + tail_beyond;
    if (tail < target) {
      plan.K = K;
      plan.tail_bound = tail;
      bool nonneg = lambda_k(0) >= 0.0;
      double l = lambda_k(K);
      plan.window = nonneg ? std::make_pair(0.0, l) : std::make_pair(-std::abs(l), std::abs(l));
      return plan;
    }
  }
  throw MomentDivergence("truncation_plan: tolerance not reached inside the stream prefix");
}

GrowthFit fit_growth(const std::function<double(double)>& norm_of, double lo, double hi, int n) {
  std::vector<double> xs, ys, ls, ns;
  for (int k = 0; k < n; ++k) {
    double l = lo * std::pow(hi / lo, double(k) / double(n - 1));
    double v = norm_of(l);
    ls.push_back(l);
    ns.push_back(v);
    xs.push_back(std::log1p(l));
    ys.push_back(std::log(v));
  }
  double mx = 0, my = 0;
  for (int k = 0; k < n; ++k) { mx += xs[k]; my += ys[k]; }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (int k = 0; k < n; ++k) { sxy += (xs[k] - mx) * (ys[k] - my); sxx += (xs[k] - mx) * (xs[k] - mx); }
  GrowthFit g;
  g.alpha = sxy / sxx;
  for (int k = 0; k < n; ++k) g.C0 = std::max(g.C0, ns[k] / std::pow(1.0 + ls[k], g.alpha));
  return g;
}

}  // namespace weyl
