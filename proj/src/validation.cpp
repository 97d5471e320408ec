// validation.cpp — invariant checks over every module, cheap enough for a CLI run
#include "weyl/validation.hpp"

#include "weyl/herglotz.hpp"
#include "weyl/jcdot.hpp"
#include "weyl/models1d.hpp"
#include "weyl/oracle.hpp"
#include "weyl/spectral_integral.hpp"
#include "weyl/tensor.hpp"
#include "weyl/triplet.hpp"

#include <cmath>
#include <random>

namespace weyl {

namespace {

struct Suite {
  std::vector<CheckResult> out;
  void le(const std::string& name, double value, double thr, const std::string& detail = "") {
    out.push_back({name, value, thr, value <= thr, detail});
  }
  void ge(const std::string& name, double value, double thr, const std::string& detail = "") {
    out.push_back({name, value, thr, value >= thr, detail});
  }
  // runs f; a thrown exception is a failed check carrying the message
  template <class F>
  void guard(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      out.push_back({name, std::nan(""), 0.0, false, std::string("exception: ") + e.what()});
    }
  }
};

std::vector<ModelSpec> model_catalogue() {
  return {ModelSpec::schrodinger_right(0.0),        ModelSpec::schrodinger_left(0.5),
          ModelSpec::schrodinger_interval(0.0, -1.0, 1.0), ModelSpec::dirac_right(1.0),
          ModelSpec::dirac_interval(1.0, -1.0, 1.0),   ModelSpec::full_line_contact(0.0, 1.0)};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
  Suite s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  // herglotz
  s.guard("herglotz.symmetry", [&] {
    double worst = 0.0, min_im = 1e300;
    for (const auto& m : herglotz_catalogue())
      for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b) {
          cplx z(-5.0 + 10.0 * a / 19.0, 0.1 + 4.9 * b / 19.0);
          worst = std::max(worst, symmetry_residual(m, z));
          min_im = std::min(min_im, m(z).imag());
        }
    s.le("herglotz.symmetry", worst, 1e-12, "7 functions, 20x20 grid");
    s.ge("herglotz.im_positive", min_im, 1e-300, "min Im m(z) on the grid");
  });
  s.guard("herglotz.sqrt_cut", [&] {
    s.le("herglotz.sqrt_cut", std::max(std::abs(sqrt_cut(1.0) - 1.0), std::abs(sqrt_cut(-1.0) - I_)), 1e-15);
  });
  s.guard("herglotz.m_at_i", [&] {
    cplx ref = cplx(-1.0, 1.0) / std::sqrt(2.0);
    s.le("herglotz.m_at_i", std::abs(m_schrodinger_halfline(I_, 0.0) - ref), 1e-14);
  });
  s.guard("herglotz.dirac_k1", [&] {
    s.le("herglotz.dirac_k1", std::abs(dirac_k1(1.0, 1.0) - 1.0 / std::sqrt(3.0)), 1e-14);
  });

  // triplet core over the model catalogue
  s.guard("triplet.normalize", [&] {
    double dev = 0.0, idem = 0.0;
    for (const auto& spec : model_catalogue()) {
      BoundaryTriplet n = normalize(build_triplet(spec));
      const int d = n.dim();
      dev = std::max(dev, (n.weyl(I_) - I_ * CMat::Identity(d, d)).cwiseAbs().maxCoeff());
      BoundaryTriplet nn = normalize(n);
      cplx z(0.4, 0.9);
      idem = std::max(idem, (nn.weyl(z) - n.weyl(z)).cwiseAbs().maxCoeff());
    }
    s.le("triplet.normalize", dev, 1e-10, "M~(i) = iI for every model");
    s.le("triplet.normalize_idempotent", idem, 1e-10);
  });
  s.guard("triplet.boundary_traces", [&] {
    double g0 = 0.0, g1 = 0.0, defect = 0.0;
    for (const auto& spec : model_catalogue()) {
      BoundaryTriplet t = build_triplet(spec);
      cplx z(0.3, 1.2);
      BoundaryTraces bt = boundary_traces(spec, t, z);
      const int d = t.dim();
      g0 = std::max(g0, (bt.G0 - CMat::Identity(d, d)).cwiseAbs().maxCoeff());
      g1 = std::max(g1, (bt.G1 - t.weyl(z)).cwiseAbs().maxCoeff());
      defect = std::max(defect, verify_defect_equation(spec, t, z));
    }
    s.le("models.gamma0_gamma_identity", g0, 1e-12);
    s.le("models.gamma1_gamma_weyl", g1, 1e-12);
    s.le("models.defect_equation_fd", defect, 1e-5, "centered differences, h = 1e-3");
  });
  s.guard("triplet.mlambda_kernels", [&] {
    double worst = 0.0;
    for (const auto& spec : model_catalogue()) {
      BoundaryTriplet t = build_triplet(spec);
      for (int k = 0; k < 3; ++k) {
        cplx z(2.0 * U(rng), 0.3 + std::abs(U(rng))), w(2.0 * U(rng), -0.3 - std::abs(U(rng)));
        worst = std::max(worst, herglotz_identity_residual(t, z, w));
      }
    }
    s.le("triplet.mlambda_kernels", worst, 1e-8, "quadrature");
  });
  s.guard("triplet.gamma_translation", [&] {
    BoundaryTriplet t = build_triplet(ModelSpec::schrodinger_right(0.0));
    s.le("triplet.gamma_translation", gamma_translation_residual(t, -1.0, -2.0), 1e-8);
  });
  s.guard("oracle.dense_krein", [&] {
    double worst = 0.0, ml = 0.0, green = 0.0;
    for (int k = 0; k < 5; ++k) {
      DenseToyTriplet toy = make_dense_toy(4 + k % 5, 1 + k % 2, seed + 100 + std::uint64_t(k));
      BoundaryTriplet t = toy.to_triplet();
      CMat B = CMat::Zero(toy.d, toy.d);
      for (int i = 0; i < toy.d; ++i)
        for (int j = 0; j <= i; ++j) {
          B(i, j) = i == j ? cplx(U(rng)) : cplx(U(rng), U(rng));
          B(j, i) = std::conj(B(i, j));
        }
      cplx z(U(rng), 0.5 + std::abs(U(rng)));
      worst = std::max(worst, (krein_correction(t, BoundaryCondition::op(B), z).dense() -
                               toy.direct_resolvent_difference(B, z)).cwiseAbs().maxCoeff());
      ml = std::max(ml, toy.mlambda_residual(z, cplx(U(rng), -0.5)));
      green = std::max(green, toy.green_identity_residual(seed));
    }
    s.le("oracle.dense_krein", worst, 1e-10, "5 seeded toys");
    s.le("oracle.dense_mlambda", ml, 1e-12);
    s.le("oracle.green_identity", green, 1e-12);
  });
  s.guard("oracle.fd_m", [&] {
    FDGrid g;
    g.h = 1e-3;
    g.L = 30.0;
    cplx m1 = fd_m_function(g, -1.0);
    g.h = 5e-4;
    cplx m2 = fd_m_function(g, -1.0);
    s.le("oracle.fd_m_function", std::abs(m1 + 1.0), 1e-4);
    double ratio = std::abs(m1 + 1.0) / std::abs(m2 + 1.0);
    s.le("oracle.fd_second_order", std::abs(ratio - 4.0), 0.5, "error ratio under h-halving");
  });
  s.guard("oracle.robin_vs_fd", [&] {
    FDGrid g;
    g.h = 1e-3;
    g.L = 50.0;
    std::vector<double> xs;
    for (int i = 0; i <= 8; ++i) xs.push_back(0.5 * i);
    BoundaryTriplet t = build_triplet(ModelSpec::schrodinger_right(0.0));
    double worst = 0.0;
    for (cplx z : {cplx(-1.0), I_, cplx(2.0, 1.0)}) {
      CMat fd = fd_resolvent_difference(g, 1.0, z, xs, xs);
      KreinCorrection k = krein_correction(t, BoundaryCondition::op(CMat::Constant(1, 1, 1.0)), z);
      CMat an(fd.rows(), fd.cols());
      for (Eigen::Index a = 0; a < an.rows(); ++a)
        for (Eigen::Index b = 0; b < an.cols(); ++b) an(a, b) = k.kernel(0, xs[a], 0, xs[b])(0, 0);
      worst = std::max(worst, (fd - an).norm() / an.norm());
    }
    s.le("oracle.robin_krein_vs_fd", worst, 1e-2, "relative Frobenius");
  });

  // spectral integrals
  s.guard("spectral.integral_pp", [&] {
    OperatorFunctionOnR om;
    om.dim = 1;
    om.eval = [](double l) { return CMat::Constant(1, 1, I_ * sqrt_cut(I_ - l)); };
    SpectralMeasurePP mu = SpectralMeasurePP::integers(0, 2);
    CMat a = integral_pp(om, mu);
    CMat b = dense_spectral_integral(om.eval, {0.0, 1.0, 2.0}, {1, 1, 1});
    CMat P = slot_major_permutation(1, 3);
    s.le("spectral.integral_pp_vs_dense", (a - P * b * P.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  });
  s.guard("spectral.functional_calculus", [&] {
    SpectralMeasurePP mu = SpectralMeasurePP::integers(1, 4);
    OperatorFunctionOnR X;
    X.dim = 2;
    X.eval = [](double l) {
      CMat m(2, 2);
      m << 1.0 + l, 0.3, 0.3, 2.0 + 0.5 * l;
      return m;
    };
    PCMeasure F = lift_measure(mu, 2);
    OperatorFunctionOnR LX = lift_function(X, mu.total_dim());
    double worst = 0.0;
    for (auto phi : std::vector<std::function<double(double)>>{[](double x) { return x * x; },
                                                               [](double x) { return std::sqrt(x); },
                                                               [](double x) { return 1.0 / std::sqrt(x); }})
      worst = std::max(worst, functional_calculus_residual(LX, F, phi));
    s.le("spectral.functional_calculus", worst, 1e-10);
  });
  s.guard("spectral.truncation_plan", [&] {
    OperatorFunctionOnR om;
    om.alpha = 1.0;
    om.C0 = 1.0;
    auto lam = [](std::size_t k) { return double(k); };
    auto mom = [](std::size_t k) { return std::exp(-double(k)); };
    TruncationPlan p = truncation_plan(om, lam, mom, 1e-8);
    double tail = 0.0;
    for (std::size_t k = p.K + 1; k < 2000; ++k) tail += std::pow(1.0 + double(k), 2.0) * mom(k);
    s.le("spectral.truncation_tail", tail, 1e-16, "direct tail sum beyond K");
    s.ge("spectral.truncation_bound_certified", p.tail_bound - tail, -1e-20, "bound >= direct tail");
  });

  // tensor
  s.guard("tensor.normalized", [&] {
    BoundaryTriplet base = build_triplet(ModelSpec::schrodinger_right(0.0));
    TensorTriplet t = tensor_normalized(base, SpectralMeasurePP::integers(0, 10));
    const int d = t.assembled.dim();
    s.le("tensor.normalized_at_i", (t.assembled.weyl(I_) - I_ * CMat::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
  });
  s.guard("tensor.probes", [&] {
    BoundaryTriplet base = build_triplet(ModelSpec::schrodinger_right(0.0));
    TensorProbeReport r = friedrichs_krein_tensor_check(base.weyl, SpectralMeasurePP::integers(0, 2), 20, seed);
    s.ge("tensor.friedrichs_all_directions", r.probe.all_friedrichs() ? 1.0 : 0.0, 1.0);
    s.le("tensor.krein_indicator_false", r.probe.any_krein() ? 1.0 : 0.0, 0.0);
    double worst = -1e300;
    for (const auto& e : r.lsb) worst = std::max(worst, e.found ? e.x_N + e.N * e.N : 1e300);
    s.le("tensor.lsb_levels", worst, 0.0, "max of x_N + N^2");
  });

  // Jaynes-Cummings
  s.guard("jc.R_Q", [&] {
    double worst = 0.0;
    for (auto [vl, vr] : {std::pair{0.0, 0.0}, std::pair{0.0, 2.0}, std::pair{1.0, 3.0}}) {
      JCModel m = JCModel::make(20, 0.2, -0.4, cplx(0.3, -0.1), 0.8, vl, vr);
      RQ a = build_R_Q(m), b = build_R_Q_generic(m);
      worst = std::max({worst, (a.R - b.R).cwiseAbs().maxCoeff(), (a.Q - b.Q).cwiseAbs().maxCoeff()});
    }
    s.le("jc.R_Q_closed_vs_generic", worst, 1e-12);
  });
  s.guard("jc.tilde", [&] {
    JCModel m = JCModel::make(20, 0.2, -0.4, cplx(0.3, -0.1), 0.8, 1.0, 3.0);
    s.le("jc.tilde_CJC_hermitian", herm_residual(build_tilde_CJC(m)), 1e-12);
    s.ge("jc.tilde_T_floor", herm_eigvals(build_tilde_T(m)).minCoeff(), 1.0 - 1e-12);
    BCEquivalence bc = boundary_condition_equivalence(m);
    s.le("jc.bc_identity", bc.identity_residual, 1e-12);
    s.ge("jc.bc_kernels_equal", bc.kernels_equal ? 1.0 : 0.0, 1.0, "rank test at 1e-10");
    JacobiReport jr = jacobi_reorder(build_CJC_eigen(m), m, JCBasis::DotEigen);
    s.le("jc.jacobi_off_chain", jr.off_chain_max, 0.0, "exact zeros in the eigenbasis");
    JacobiReport jt = jacobi_reorder(build_tilde_CJC(m), m, JCBasis::Boundary);
    s.le("jc.tilde_beyond_band", jt.beyond_band_max, 1e-14);
  });
  s.guard("jc.resonant_spectrum", [&] {
    JCModel m = JCModel::make(1, 0.0, 1.0, 0.0, 1.0);
    std::vector<double> ev = spectrum_CJC(m), ref{0.0, 0.0, 2.0, 2.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev[k] - ref[k]));
    s.le("jc.resonant_spectrum", worst, 1e-12);
  });
  s.guard("jc.weyl_S", [&] {
    JCModel m = JCModel::make(1, 0.0, 1.0, 0.0, 1.0);
    s.le("jc.weyl_S_at_minus_one", std::abs(weyl_S(m, -1.0)(0, 0) - (1.0 - std::sqrt(2.0))), 1e-12);
    s.le("jc.weyl_S_at_i", (weyl_S(m, I_) - I_ * CMat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  });
  s.guard("jc.Z", [&] {
    CMat Z = build_Z(1.0, FockTruncation::make(3));
    s.le("jc.Z_closed_form", std::abs(Z(3, 3) - std::sqrt(std::sqrt(17.0) + 4.0)), 1e-14);
  });
  return s.out;
}

}  // namespace weyl
