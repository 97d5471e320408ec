// test_spectral_integral.cpp — atomic integrals, Riemann sums, admissibility and truncation
#include <doctest.h>

#include "weyl/herglotz.hpp"
#include "weyl/oracle.hpp"
#include "weyl/spectral_integral.hpp"
#include "weyl/tensor.hpp"

#include <cmath>

using namespace weyl;

namespace {

OperatorFunctionOnR fn(int d, std::function<CMat(double)> f, double alpha = 0.0, double C0 = 1.0) {
  OperatorFunctionOnR o;
  o.dim = d;
  o.eval = std::move(f);
  o.alpha = alpha;
  o.C0 = C0;
  return o;
}

CMat sym2(double a, double b, double c) {
  CMat m(2, 2);
  m << a, b, b, c;
  return m;
}

}  // namespace

TEST_SUITE("spectral_integral") {
  TEST_CASE("constant Omega repeats the block") {
    CMat C = sym2(1.0, 0.5, -2.0);
    SpectralMeasurePP mu;
    mu.atoms = {{0.0, 2}, {3.0, 1}};
    CMat r = integral_pp(fn(2, [C](double) { return C; }), mu);
    CHECK((r - kron(CMat::Identity(3, 3), C)).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("Omega(l) = l over 0..N is the number operator") {
    auto mu = SpectralMeasurePP::integers(0, 6);
    CMat r = integral_pp(fn(1, [](double l) { return CMat::Constant(1, 1, l); }), mu);
    CMat N = CMat::Zero(7, 7);
    for (int k = 0; k <= 6; ++k) N(k, k) = k;
    CHECK((r - N).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("half-line values over atoms 0, 1, 2 match the dense sum") {
    auto f = [](double l) { return CMat::Constant(1, 1, m_schrodinger_halfline(I_ - l, 0.0)); };
    CMat r = integral_pp(fn(1, f), SpectralMeasurePP::integers(0, 2));
    CMat d = dense_spectral_integral(f, {0.0, 1.0, 2.0}, {1, 1, 1});
    CHECK((r - d).cwiseAbs().maxCoeff() < 1e-15);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(r(k, k) - m_schrodinger_halfline(I_ - double(k), 0.0)) == 0.0);
  }

  TEST_CASE("invalid measures are rejected") {
    SpectralMeasurePP mu;
    mu.atoms = {{1.0, 1}, {0.5, 1}};
    CHECK_THROWS_AS(mu.validate(), DomainError);
    mu.atoms = {{0.0, 0}};
    CHECK_THROWS_AS(mu.validate(), DomainError);
  }

  TEST_CASE("Riemann sums over piecewise-constant measures") {
    auto om = fn(2, [](double l) { return sym2(std::sin(l), 0.25 * l, std::cos(l)); });
    SpectralMeasurePP one;
    one.atoms = {{0.7, 1}};
    one.window = {0.0, 2.0};
    PCMeasure F1 = lift_measure(one, 2);
    CHECK((integral_riemann(om, F1).value - om(0.7) * F1.F_set({0})).cwiseAbs().maxCoeff() < 1e-14);

    auto mu = SpectralMeasurePP::from_points({0.1, 0.35, 1.9});
    PCMeasure F = lift_measure(mu, 2);
    CMat riem = integral_riemann(lift_function(om, mu.total_dim()), F).value;
    CHECK((riem - integral_pp(om, mu)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("functional calculus for a commuting family") {
    auto mu = SpectralMeasurePP::integers(1, 4);
    PCMeasure F = lift_measure(mu, 2);
    CMat X0 = sym2(2.0, 0.3, 1.0);
    auto constant = lift_function(fn(2, [X0](double) { return X0; }), mu.total_dim());
    CHECK(functional_calculus_residual(constant, F, [](double x) { return x * x; }) < 1e-12);
    auto varying = lift_function(fn(2, [](double l) { return sym2(1.0 + l, 0.3, 2.0 + 0.5 * l); }), mu.total_dim());
    for (auto phi : std::vector<std::function<double(double)>>{[](double x) { return x * x; },
                                                               [](double x) { return std::sqrt(x); },
                                                               [](double x) { return 1.0 / std::sqrt(x); }})
      CHECK(functional_calculus_residual(varying, F, phi) < 1e-10);
  }

  TEST_CASE("admissibility residual") {
    auto mu = SpectralMeasurePP::integers(0, 1);
    PCMeasure F = lift_measure(mu, 1);  // projections diag(1,0), diag(0,1)
    auto diag = fn(2, [](double l) {
      CMat m = CMat::Zero(2, 2);
      m(0, 0) = l;
      m(1, 1) = 2.0 + l;
      return m;
    });
    CHECK(admissibility_residual(diag, F, {{0}, {1}}) == 0.0);
    auto mixing = fn(2, [](double) { return sym2(0.0, 1.0, 0.0); });
    CHECK(admissibility_residual(mixing, F, {{0}, {1}}) > 0.5);
    // M(z - l) (x) I against the lifted measure of a 2-dimensional base
    auto mu3 = SpectralMeasurePP::integers(0, 2);
    PCMeasure F3 = lift_measure(mu3, 1);
    auto tensor_shaped = lift_function(fn(1, [](double l) {
      return CMat::Constant(1, 1, m_schrodinger_halfline(cplx(0.3, 1.0) - l, 0.0));
    }), 3);
    CHECK(admissibility_residual(tensor_shaped, F3, {{0}, {1, 2}}, {0.0, 1.0, 2.0}) < 1e-15);
  }

  TEST_CASE("multiplicativity for admissible families") {
    auto mu = SpectralMeasurePP::integers(0, 3);
    PCMeasure F = lift_measure(mu, 2);
    auto A = lift_function(fn(2, [](double l) { return sym2(1.0 + l, 0.2, -l); }), mu.total_dim());
    auto B = lift_function(fn(2, [](double l) { return sym2(std::exp(-l), 1.0, 0.5); }), mu.total_dim());
    auto AB = A;
    AB.eval = [a = A.eval, b = B.eval](double l) { return CMat(a(l) * b(l)); };
    CMat lhs = integral_riemann(AB, F).value;
    CMat rhs = integral_riemann(A, F).value * integral_riemann(B, F).value;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("truncation plan") {
    auto lam = [](std::size_t k) { return double(k); };
    OperatorFunctionOnR o0 = fn(1, nullptr, 0.0, 1.0);
    auto finite = [](std::size_t k) { return k <= 5 ? 1.0 : 0.0; };
    TruncationPlan p0 = truncation_plan(o0, lam, finite, 1e-8);
    CHECK(p0.K == 5);
    CHECK(p0.window.first == 0.0);
    CHECK(p0.window.second == 5.0);

    OperatorFunctionOnR o1 = fn(1, nullptr, 1.0, 1.0);
    auto expo = [](std::size_t k) { return std::exp(-double(k)); };
    TruncationPlan p1 = truncation_plan(o1, lam, expo, 1e-8);
    double tail = 0.0;
    for (std::size_t k = 5000; k-- > p1.K + 1;) tail += std::pow(1.0 + double(k), 2.0) * expo(k);
    CHECK(tail < 1e-16);
    CHECK(p1.tail_bound >= tail * (1.0 - 1e-12));
    double tail_before = tail + std::pow(1.0 + double(p1.K), 2.0) * expo(p1.K);
    CHECK(tail_before >= 1e-16);  // K is the smallest admissible index

    auto harmonic = [](std::size_t k) { return 1.0 / std::pow(double(std::max<std::size_t>(k, 1)), 2.0); };
    CHECK_THROWS_AS(truncation_plan(o1, lam, harmonic, 1e-8), MomentDivergence);
  }

  TEST_CASE("growth fit recovers a power law") {
    GrowthFit g = fit_growth([](double l) { return 3.0 * std::pow(1.0 + l, 1.5); }, 1.0, 1e4);
    CHECK(std::abs(g.alpha - 1.5) < 1e-10);
    CHECK(std::abs(g.C0 - 3.0) < 1e-8);
  }
}
