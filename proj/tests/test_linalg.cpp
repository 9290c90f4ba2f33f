#include "catch_amalgamated.hpp"

#include "support.hpp"

#include <numbers>

using namespace fep;
using namespace fep::linalg;
using Catch::Matchers::WithinAbs;

TEST_CASE("pauli_decompose basis cases", "[linalg]") {
  const auto id = pauli_decompose(identity2());
  CHECK(id.scalar == cplx(1.0));
  CHECK(id.vector[0] == cplx(0.0));
  CHECK(id.vector[1] == cplx(0.0));
  CHECK(id.vector[2] == cplx(0.0));

  const auto sx = pauli_decompose(sigma_x());
  CHECK(sx.scalar == cplx(0.0));
  CHECK(sx.vector[0] == cplx(1.0));

  const auto sy = pauli_decompose(sigma_y());
  CHECK(std::abs(sy.vector[1] - 1.0) < 1e-15);

  // exp(0.5 sz), evaluated from exp(+-0.5) directly.
  Mat2 boost = Mat2::Zero();
  boost(0, 0) = std::exp(0.5);
  boost(1, 1) = std::exp(-0.5);
  const auto d = pauli_decompose(boost);
  CHECK_THAT(d.scalar.real(), WithinAbs(std::cosh(0.5), 1e-15));
  CHECK_THAT(d.vector[2].real(), WithinAbs(std::sinh(0.5), 1e-15));
  CHECK(std::abs(d.vector[0]) == 0.0);
}

TEST_CASE("pauli_decompose round trip on random matrices", "[linalg][property]") {
  for (int i = 0; i < 1000; ++i) {
    const Mat2 m = test::random_matrix<2>(3.0);
    CHECK(max_abs(pauli_decompose(m).matrix() - m) < 1e-13);
  }
}

TEST_CASE("pauli_decompose rejects 4x4 input", "[linalg]") {
  CHECK_THROWS_AS(pauli_decompose(ComplexMatrix(Mat4(Mat4::Identity()))),
                  std::invalid_argument);
}

TEST_CASE("ComplexMatrix dimension and predicates", "[linalg]") {
  CHECK_THROWS_AS(ComplexMatrix(Eigen::MatrixXcd::Zero(3, 3).eval()),
                  std::invalid_argument);
  CHECK(ComplexMatrix::identity(4).dim() == 4);
  CHECK(ComplexMatrix(sigma_y()).is_hermitian(1e-15));
  CHECK(ComplexMatrix(Mat2(kI * sigma_x())).is_anti_hermitian(1e-15));
  CHECK(ComplexMatrix(sigma_x()).is_unitary(1e-15));
  CHECK_FALSE(ComplexMatrix(Mat2(2.0 * sigma_x())).is_unitary(1e-3));
}

TEST_CASE("expm trivial cases", "[linalg]") {
  CHECK(max_abs(expm(Mat2(Mat2::Zero())) - Mat2::Identity()) == 0.0);
  CHECK(max_abs(expm(Mat4(Mat4::Zero())) - Mat4::Identity()) < 1e-15);
  const Mat2 r = expm(Mat2(-kI * (std::numbers::pi / 2) * sigma_x()));
  CHECK(max_abs(r - Mat2(-kI * sigma_x())) < 1e-15);
}

TEST_CASE("expm agrees with a Taylor oracle", "[linalg][oracle]") {
  for (int i = 0; i < 200; ++i) {
    const Mat2 m2 = test::random_matrix<2>(2.5);
    const Mat2 ref2 = test::taylor_expm<2>(m2);
    CHECK(max_abs(expm(m2) - ref2) <= 1e-12 * std::max(1.0, max_abs(ref2)));

    const Mat4 m4 = test::random_matrix<4>(2.5);
    const Mat4 ref4 = test::taylor_expm<4>(m4);
    CHECK(max_abs(expm(m4) - ref4) <= 1e-12 * std::max(1.0, max_abs(ref4)));
  }
}

TEST_CASE("expm of nearly nilpotent 2x2 uses the series branch", "[linalg]") {
  // b.b = 1e-12, far inside the series window.
  Mat2 m;
  m << 0.0, 1.0, 1e-12, 0.0;
  const Mat2 ref = test::taylor_expm<2>(m);
  CHECK(max_abs(expm(m) - ref) < 1e-15);
  CHECK(std::abs(sinhc(cplx(1e-6)) - 1.0) < 1e-12);
  CHECK(std::abs(sinhc(cplx(0.0)) - 1.0) == 0.0);
}

TEST_CASE("expm algebraic invariants", "[linalg][property]") {
  for (int i = 0; i < 300; ++i) {
    const double scale = test::uniform(0.1, 5.0) / 4.0;
    const Mat4 m = test::random_matrix<4>(scale);
    CHECK(max_abs(expm(m) * expm(Mat4(-m)) - Mat4::Identity()) < 1e-10);

    const cplx det = expm(m).determinant();
    const cplx expected = std::exp(m.trace());
    CHECK(std::abs(det - expected) <= 1e-10 * std::abs(expected));

    const Mat4 h = 0.5 * (m + m.adjoint());
    const Mat4 anti = kI * h;
    CHECK(ComplexMatrix(expm(anti)).is_unitary(1e-12));

    const Mat4 eh = expm(h);
    CHECK(ComplexMatrix(eh).is_hermitian(1e-12 * max_abs(eh)));
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (eh + eh.adjoint()));
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    const Mat2 m2 = test::random_matrix<2>(scale);
    CHECK(max_abs(expm(m2) * expm(Mat2(-m2)) - Mat2::Identity()) < 1e-10);
  }
}

TEST_CASE("expm rejects non-finite input", "[linalg]") {
  Mat2 m = Mat2::Zero();
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(expm(m), std::invalid_argument);
  Mat4 m4 = Mat4::Zero();
  m4(2, 2) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(expm(m4), std::invalid_argument);
}

TEST_CASE("logm_2x2 examples", "[linalg]") {
  const auto zero = logm_2x2(Mat2::Identity(), 1.0);
  CHECK(std::abs(zero.scalar) == 0.0);
  for (const auto& v : zero.vector) CHECK(std::abs(v) == 0.0);

  const auto h = logm_2x2(expm(Mat2(-kI * 0.3 * sigma_x())), 1.0);
  CHECK_THAT(h.vector[0].real(), WithinAbs(0.3, 1e-14));
  CHECK(std::abs(h.vector[0].imag()) < 1e-14);
  CHECK(std::abs(h.vector[1]) < 1e-14);
  CHECK(std::abs(h.vector[2]) < 1e-14);
  CHECK(std::abs(h.scalar) < 1e-14);
}

TEST_CASE("logm_2x2 reconstructs random non-defective matrices",
          "[linalg][property]") {
  int checked = 0;
  while (checked < 500) {
    const Mat2 m = test::random_matrix<2>(1.5);
    if (eigenvector_condition(m) > 1e4 || std::abs(m.determinant()) < 1e-3) {
      continue;
    }
    const double period = test::uniform(0.2, 5.0);
    const auto h = logm_2x2(m, period);
    const Mat2 back = expm(Mat2(-kI * period * h.matrix()));
    CHECK(max_abs(back - m) <= 1e-10 * std::max(1.0, max_abs(m)));
    // Quasienergy real parts lie in the first zone.
    const double omega = 2.0 * std::numbers::pi / period;
    const cplx root = h.norm();
    for (cplx e : {h.scalar + root, h.scalar - root}) {
      CHECK(e.real() > -omega / 2 - 1e-12);
      CHECK(e.real() <= omega / 2 + 1e-12);
    }
    ++checked;
  }
}

TEST_CASE("logm_2x2 refuses near-defective input", "[linalg]") {
  Mat2 jordan;
  jordan << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(logm_2x2(jordan, 1.0), NearDefective);
  Mat2 almost = jordan;
  almost(1, 0) = 1e-20;
  try {
    logm_2x2(almost, 1.0);
    FAIL("expected NearDefective");
  } catch (const NearDefective& e) {
    CHECK(e.condition_number() > kNearDefectiveCondition);
  }
  CHECK_THROWS_AS(logm_2x2(Mat2(Mat2::Zero()), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(logm_2x2(Mat2(Mat2::Identity()), 0.0), std::invalid_argument);
}

TEST_CASE("fold_into_zone maps onto (-omega/2, omega/2]", "[linalg]") {
  CHECK(fold_into_zone(cplx(0.5, 0.1), 1.0) == cplx(0.5, 0.1));
  CHECK(std::abs(fold_into_zone(cplx(-0.5, 0.0), 1.0) - 0.5) < 1e-15);
  CHECK(std::abs(fold_into_zone(cplx(2.3, -1.0), 1.0) - cplx(0.3, -1.0)) < 1e-14);
}

TEST_CASE("eig 2x2 closed form", "[linalg]") {
  const auto z = eig(sigma_z());
  CHECK(z[0].value == cplx(1.0));
  CHECK(z[1].value == cplx(-1.0));
  CHECK(std::abs(std::abs(z[0].vector(0)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(z[1].vector(1)) - 1.0) < 1e-15);

  for (int i = 0; i < 500; ++i) {
    const Mat2 m = test::random_matrix<2>(2.0);
    const double norm = max_abs(m);
    const auto pairs = eig(m);
    for (const auto& p : pairs) {
      CHECK(std::abs(p.vector.norm() - 1.0) < 1e-14);
      CHECK(max_abs(m * p.vector - p.value * p.vector) <= 1e-10 * norm);
    }
    const auto ref = test::dense_eigenvalues(m);
    CHECK(test::pair_distance(pairs[0].value, pairs[1].value, ref(0), ref(1)) <
          1e-12 * std::max(1.0, norm));
  }
}

TEST_CASE("eig 4x4 residuals and ordering", "[linalg]") {
  for (int i = 0; i < 200; ++i) {
    const Mat4 m = test::random_matrix<4>(2.0);
    const auto pairs = eig(m);
    const double norm = max_abs(m);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(pairs[k].vector.norm() - 1.0) < 1e-13);
      CHECK(max_abs(m * pairs[k].vector - pairs[k].value * pairs[k].vector) <=
            1e-10 * std::max(1.0, norm));
      if (k > 0) CHECK(pairs[k - 1].value.real() >= pairs[k].value.real());
    }
  }
  const auto dyn = eig(ComplexMatrix(sigma_x()));
  REQUIRE(dyn.size() == 2);
  CHECK(dyn[0].value == cplx(1.0));
}

TEST_CASE("kron conventions", "[linalg]") {
  CHECK(max_abs(kron(identity2(), identity2()) - Mat4::Identity()) == 0.0);
  const Mat4 zi = kron(sigma_z(), identity2());
  Eigen::Vector4cd diag(1, 1, -1, -1);
  CHECK(max_abs(zi - Mat4(diag.asDiagonal())) == 0.0);
  const Mat4 xx = kron(sigma_x(), sigma_x());
  Mat4 anti = Mat4::Zero();
  for (int i = 0; i < 4; ++i) anti(i, 3 - i) = 1.0;
  CHECK(max_abs(xx - anti) == 0.0);
  const Mat2 a = test::random_matrix<2>();
  const Mat2 b = test::random_matrix<2>();
  const Mat4 k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          CHECK(k(2 * i + r, 2 * j + c) == a(i, j) * b(r, c));
  CHECK_THROWS_AS(kron(ComplexMatrix(Mat4(Mat4::Identity())),
                       ComplexMatrix(sigma_x())),
                  std::invalid_argument);
}
