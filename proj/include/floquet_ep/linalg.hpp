#pragma once

// Small-dimension complex linear algebra: Pauli algebra, matrix exponential
// and logarithm, eigenpairs and Kronecker products for 2x2 and 4x4 operators.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fep {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr cplx kI{0.0, 1.0};

/// Raised when a numerical routine cannot deliver a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The eigenvector basis of a 2x2 matrix is (nearly) singular, so its matrix
/// logarithm is ill-defined. On an exceptional-point contour use
/// floquet::floquet_hamiltonian_on_contour instead.
class NearDefective : public NumericError {
 public:
  explicit NearDefective(double condition_number);
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

namespace linalg {

/// Threshold on the eigenvector condition number above which logm_2x2
/// refuses to work.
inline constexpr double kNearDefectiveCondition = 1e8;

/// Dense complex matrix of dimension 2 or 4.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd entries);
  ComplexMatrix(const Mat2& m);  // NOLINT(google-explicit-constructor)
  ComplexMatrix(const Mat4& m);  // NOLINT(google-explicit-constructor)

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  cplx operator()(int row, int col) const { return entries_(row, col); }

  Mat2 as_mat2() const;
  Mat4 as_mat4() const;

  // Residual-based structure predicates (max-abs element).
  double unitarity_residual() const;
  double hermiticity_residual() const;
  double anti_hermiticity_residual() const;
  bool is_unitary(double tol) const { return unitarity_residual() <= tol; }
  bool is_hermitian(double tol) const { return hermiticity_residual() <= tol; }
  bool is_anti_hermitian(double tol) const {
    return anti_hermiticity_residual() <= tol;
  }

 private:
  Eigen::MatrixXcd entries_;
};

/// m = scalar * 1 + vector . sigma
struct PauliDecomposition {
  cplx scalar{0.0, 0.0};
  std::array<cplx, 3> vector{};

  /// v_x^2 + v_y^2 + v_z^2 (no complex conjugation).
  cplx norm_sq() const;
  /// Principal square root of norm_sq().
  cplx norm() const;
  Mat2 matrix() const;
};

const Mat2& identity2();
const Mat2& sigma_x();
const Mat2& sigma_y();
const Mat2& sigma_z();
const Mat2& pauli(int k);  // k in {0: identity, 1: x, 2: y, 3: z}

PauliDecomposition pauli_decompose(const Mat2& m);
/// Throws std::invalid_argument unless m.dim() == 2.
PauliDecomposition pauli_decompose(const ComplexMatrix& m);

// Matrix exponential. 2x2 uses the closed form in the Pauli basis; 4x4 uses
// scaling and squaring with a degree-13 Padé approximant. Non-finite input
// throws std::invalid_argument.
Mat2 expm(const Mat2& m);
Mat4 expm(const Mat4& m);
ComplexMatrix expm(const ComplexMatrix& m);

/// sinh(x)/x, accurate through x -> 0.
cplx sinhc(cplx x);

/// Folds the real part of a quasienergy into (-omega/2, omega/2].
cplx fold_into_zone(cplx quasienergy, double omega);

/// Pauli decomposition of H = +i log(m) / period on the principal branch,
/// with quasienergy real parts folded into the first zone, so that
/// expm(-i * period * H) == m. Throws NearDefective when the eigenvector
/// condition number exceeds kNearDefectiveCondition, and
/// std::invalid_argument for singular m or non-positive period.
PauliDecomposition logm_2x2(const Mat2& m, double period);

template <int N>
struct EigenPair {
  cplx value;
  Eigen::Matrix<cplx, N, 1> vector;  // unit Dirac norm
};

/// Closed-form eigenpairs from the Pauli decomposition: first pair is
/// scalar + |vector|, second is scalar - |vector|. At an exact coalescence
/// both pairs carry the same eigenvector.
std::array<EigenPair<2>, 2> eig(const Mat2& m);
/// Dense eigensolver, pairs sorted by descending real part then imaginary
/// part. Throws NumericError if the solver fails or a residual exceeds
/// 1e-10 * ||m||.
std::array<EigenPair<4>, 4> eig(const Mat4& m);
std::vector<EigenPair<Eigen::Dynamic>> eig(const ComplexMatrix& m);

/// Condition number of the unit-normalized eigenvector basis of a 2x2
/// matrix; +inf when the eigenvectors coincide.
double eigenvector_condition(const Mat2& m);

/// (a (x) b)[2i+k][2j+l] = a[i][j] b[k][l]
Mat4 kron(const Mat2& a, const Mat2& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace linalg
}  // namespace fep
