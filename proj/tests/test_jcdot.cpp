// test_jcdot.cpp — dot model: structure, spectra and the Weyl function
#include <doctest.h>

#include "weyl/jcdot.hpp"

#include <cmath>

using namespace weyl;

TEST_SUITE("jcdot") {
  TEST_CASE("Fock truncation") {
    auto f = FockTruncation::make(3);
    CHECK(f.dim() == 4);
    CHECK(std::abs(f.bdag(2, 1) - std::sqrt(2.0)) < 1e-15);
    CHECK(((f.bdag * f.b) - f.T).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("two-level dot diagonalization") {
    auto d = TwoLevelDot::make(0.5, -0.5, cplx(0.0, 0.3));
    CHECK(d.lambda0 <= d.lambda1);
    CMat U = d.U();
    CHECK((U.adjoint() * U - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((d.B * d.e0 - d.lambda0 * d.e0).norm() < 1e-14);
    auto deg = TwoLevelDot::make(1.0, 1.0, 0.0);
    CHECK(deg.degenerate);
    CHECK((deg.U() - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(JCModel::make(3, 0.0, 0.0, 0.0, 1.0, -1.0, 0.0), DomainError);
    CHECK_FALSE(JCModel::make(3, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0).ordered_leads());
  }

  TEST_CASE("resonant spectrum is {0, 0, 2, 2}") {
    auto m = JCModel::make(1, 0.0, 1.0, 0.0, 1.0);
    auto c = cluster_eigenvalues(spectrum_CJC(m));
    REQUIRE(c.size() == 2);
    CHECK(std::abs(c[0].value) < 1e-12);
    CHECK(c[0].multiplicity == 2);
    CHECK(std::abs(c[1].value - 2.0) < 1e-12);
    CHECK(c[1].multiplicity == 2);
  }

  TEST_CASE("both bases have the same spectrum") {
    auto m = JCModel::make(6, 0.3, -0.2, cplx(0.4, 0.1), 0.7, 1.0, 0.0);
    auto a = sorted_eigenvalues(build_CJC(m)), b = sorted_eigenvalues(build_CJC_eigen(m));
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
  }

  TEST_CASE("R and Q closed forms") {
    auto m = JCModel::make(5, 0.3, -0.2, cplx(0.4, 0.1), 0.7, 1.0, 0.5);
    RQ a = build_R_Q(m), b = build_R_Q_generic(m);
    CHECK((a.R - b.R).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.Q - b.Q).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("boundary-condition equivalence") {
    auto m = JCModel::make(8, 0.3, -0.2, cplx(0.4, 0.1), 0.7, 1.0, 0.0);
    auto r = boundary_condition_equivalence(m);
    CHECK(r.identity_residual < 1e-12);
    CHECK(r.kernels_equal);
    CHECK(r.kernel_dim_raw == r.kernel_dim_tilde);
  }

  TEST_CASE("chain structure in the eigenbasis") {
    auto m = JCModel::make(6, 0.3, -0.2, cplx(0.4, 0.1), 0.7, 1.0, 0.0);
    auto r = jacobi_reorder(build_CJC_eigen(m), m, JCBasis::DotEigen);
    CHECK(r.chain_structure);
    CHECK(r.singletons == 2);
    CHECK(r.chains == 6);
    auto t = jacobi_reorder(build_tilde_CJC(m), m, JCBasis::Boundary);
    CHECK(t.block_tridiagonal);
  }

  TEST_CASE("Weyl function of the leads") {
    auto m = JCModel::make(4, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    CMat S = weyl_S(m, -1.0);
    CHECK(std::abs(S(0, 0) - (1.0 - std::sqrt(2.0))) < 1e-12);
    CHECK(S.rows() == 10);
  }

  TEST_CASE("dot resolvent correction is a Fock matrix") {
    auto m = JCModel::make(5, 0.3, -0.2, cplx(0.4, 0.1), 0.7, 1.0, 0.0);
    CMat K = dot_resolvent_correction(m, cplx(0.5, 1.0), 0.3, 0.7);
    CHECK(K.rows() == 6);
    CHECK(K.cols() == 6);
    CHECK(K.allFinite());
  }

  TEST_CASE("eigenvalue clustering") {
    auto c = cluster_eigenvalues({0.0, 1e-12, 1.0, 1.0 + 5e-10, 3.0});
    REQUIRE(c.size() == 3);
    CHECK(c[0].multiplicity == 2);
    CHECK(c[1].multiplicity == 2);
    CHECK(c[2].multiplicity == 1);
  }
}
