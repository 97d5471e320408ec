// test_oracle.cpp — finite differences and dense toy triplets
#include <doctest.h>

#include "weyl/herglotz.hpp"
#include "weyl/oracle.hpp"

#include <cmath>

using namespace weyl;

TEST_SUITE("oracle") {
  TEST_CASE("grid validation") {
    FDGrid g{1e-3, 30.0, 0.0};
    CHECK(g.intervals() == 30000);
    FDGrid bad{0.0, 30.0, 0.0};
    CHECK_THROWS(bad.intervals());
    CHECK(g.decay_adequate(-1.0));
  }

  TEST_CASE("FD m-function converges at second order") {
    double e1 = std::abs(fd_m_function({2e-3, 30.0, 0.0}, -1.0) - cplx(-1.0));
    double e2 = std::abs(fd_m_function({1e-3, 30.0, 0.0}, -1.0) - cplx(-1.0));
    CHECK(e2 < 1e-6);
    CHECK(std::abs(e1 / e2 - 4.0) < 0.2);
  }

  TEST_CASE("FD Robin difference matches the analytic kernel") {
    FDGrid g{1e-3, 30.0, 0.0};
    std::vector<double> xs{0.0, 0.5, 1.0}, ys{0.25, 1.5};
    for (double theta : {0.0, 1.0})
      for (cplx z : {cplx(-1.0), cplx(0.0, 1.0)}) {
        CMat fd = fd_resolvent_difference(g, theta, z, xs, ys);
        CMat an = analytic_robin_difference(0.0, theta, z, xs, ys);
        CHECK((fd - an).cwiseAbs().maxCoeff() / an.cwiseAbs().maxCoeff() < 1e-5);
      }
    CHECK_THROWS_AS(fd_resolvent_difference(g, 0.0, 2.0, xs, ys), DomainError);
  }

  TEST_CASE("dense toy structure") {
    auto t = make_dense_toy(6, 2, 4);
    CHECK(t.Gamma0.rows() == 2);
    CHECK(t.Gamma0.cols() == 8);
    cplx z(0.5, 1.0), zeta(-1.0, 0.2);
    CHECK(t.mlambda_residual(z, zeta) < 1e-12);
    CHECK(t.green_identity_residual(3) < 1e-12);
    // M(conj z) = M(z)^*
    CHECK((t.weyl(std::conj(z)) - t.weyl(z).adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    auto u = make_dense_toy(6, 2, 4);
    CHECK((u.A0 - t.A0).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("extension matrix resolvent") {
    auto t = make_dense_toy(5, 1, 8);
    CMat B = CMat::Constant(1, 1, 0.7);
    CMat D = t.direct_resolvent_difference(B, cplx(0.0, 1.0));
    CHECK(D.rows() == 5);
    CHECK(D.allFinite());
  }

  TEST_CASE("dense spectral integral ordering") {
    auto f = [](double l) {
      CMat m(2, 2);
      m << l, 1.0, 1.0, -l;
      return m;
    };
    CMat r = dense_spectral_integral(f, {1.0, 2.0}, {1, 1});
    REQUIRE(r.rows() == 4);
    // boundary-major: index j * 2 + s
    CHECK(r(0, 0) == cplx(1.0));
    CHECK(r(1, 1) == cplx(2.0));
    CHECK(r(2, 2) == cplx(-1.0));
    CHECK(r(0, 2) == cplx(1.0));
    CHECK(r(0, 1) == cplx(0.0));
    CHECK(dense_spectral_integral(f, {}, {}).size() == 0);
  }
}
