// test_models1d.cpp — 1D Schrödinger, Dirac and contact models
#include <doctest.h>

#include "weyl/models1d.hpp"

#include <cmath>

using namespace weyl;

TEST_SUITE("models1d") {
  TEST_CASE("family names round-trip") {
    for (const char* s : {"schrodinger-right", "schrodinger-left", "schrodinger-interval", "dirac-right",
                          "dirac-interval", "full-line-contact"}) {
      auto f = parse_family(s);
      REQUIRE(f.has_value());
    }
    CHECK_FALSE(parse_family("harmonic").has_value());
  }

  TEST_CASE("validation rejects bad geometry") {
    CHECK_THROWS_AS(ModelSpec::schrodinger_interval(0.0, 1.0, 1.0).validate(), DomainError);
    CHECK_THROWS_AS(ModelSpec::dirac_right(0.0).validate(), DomainError);
    CHECK_NOTHROW(ModelSpec::schrodinger_interval(0.0, -1.0, 1.0).validate());
  }

  TEST_CASE("boundary dimensions") {
    CHECK(ModelSpec::schrodinger_right(0.0).boundary_dim() == 1);
    CHECK(ModelSpec::schrodinger_interval(0.0, -1.0, 1.0).boundary_dim() == 2);
    CHECK(ModelSpec::full_line_contact(0.0, 1.0).boundary_dim() == 2);
    CHECK(ModelSpec::dirac_interval(1.0, -1.0, 1.0).components() == 2);
  }

  TEST_CASE("half-line gamma and traces") {
    auto spec = ModelSpec::schrodinger_right(0.0);
    auto t = build_triplet(spec);
    CVec xi = CVec::Ones(1);
    CMat g = eval_gamma_on_grid(t, -1.0, xi, {0.0, 1.0, 2.0});
    for (int k = 0; k < 3; ++k) CHECK(std::abs(g(k, 0) - std::exp(-double(k))) < 1e-14);
    for (cplx z : {cplx(-1.0, 0.0), cplx(0.5, 1.0), cplx(-3.0, -2.0)}) {
      auto tr = boundary_traces(spec, t, z);
      CHECK((tr.G0 - CMat::Identity(1, 1)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((tr.G1 - t.weyl(z)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("interval traces reproduce the Weyl matrix") {
    for (auto spec : {ModelSpec::schrodinger_interval(0.3, -1.0, 1.0), ModelSpec::dirac_interval(1.0, -1.0, 1.0),
                      ModelSpec::dirac_right(1.5), ModelSpec::full_line_contact(0.0, 2.0),
                      ModelSpec::schrodinger_left(0.5)}) {
      auto t = build_triplet(spec);
      cplx z(0.4, 0.9);
      auto tr = boundary_traces(spec, t, z);
      int d = spec.boundary_dim();
      CHECK((tr.G0 - CMat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((tr.G1 - t.weyl(z)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("defect equation residual is small") {
    for (auto spec : {ModelSpec::schrodinger_right(0.0), ModelSpec::schrodinger_interval(0.0, -1.0, 1.0),
                      ModelSpec::dirac_right(1.0), ModelSpec::dirac_interval(1.0, -1.0, 1.0)}) {
      auto t = build_triplet(spec);
      CHECK(verify_defect_equation(spec, t, cplx(0.2, 1.1)) < 1e-4);
    }
  }

  TEST_CASE("interval reference eigenvalues") {
    auto e = interval_reference_eigenvalues(ModelSpec::schrodinger_interval(1.0, -1.0, 1.0), 3);
    REQUIRE(e.size() == 3);
    const double pi = std::acos(-1.0);
    CHECK(std::abs(e[0] - (1.0 + pi * pi / 4.0)) < 1e-12);
    CHECK(std::abs(e[1] - (1.0 + pi * pi)) < 1e-12);
  }

  TEST_CASE("full-line contact Weyl matrix is diagonal") {
    auto t = build_triplet(ModelSpec::full_line_contact(1.0, 0.0));
    CMat m = t.weyl(cplx(-0.5, 0.2));
    CHECK(m(0, 1) == cplx(0.0));
    CHECK(std::abs(m(0, 0) - m_schrodinger_halfline(cplx(-0.5, 0.2), 1.0)) < 1e-14);
    CHECK(std::abs(m(1, 1) - m_schrodinger_halfline(cplx(-0.5, 0.2), 0.0)) < 1e-14);
  }
}
