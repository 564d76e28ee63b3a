// Eigenpairs of Hermitian tridiagonal matrices.
//
// The real symmetric case is handled by the implicit QL algorithm with
// Wilkinson-type shifts. Complex Hermitian tridiagonal input is first
// gauged to a real symmetric matrix by a diagonal unitary.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace amconv {

/// Hermitian tridiagonal matrix stored by diagonals.
/// lower[k] is the (k+1, k) element; the (k, k+1) element is its conjugate.
struct HermitianTridiagonal {
  std::vector<double> diagonal;
  std::vector<std::complex<double>> lower;

  int dimension() const { return static_cast<int>(diagonal.size()); }
  Eigen::MatrixXcd dense() const;
};

struct Spectrum {
  std::vector<double> values;  // ascending
  Eigen::MatrixXcd vectors;    // columns, empty unless requested

  bool has_vectors() const { return vectors.size() > 0; }
};

struct RealTridiagonalEigen {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // columns, empty unless requested
};

/// Implicit QL on a real symmetric tridiagonal matrix.
/// off_diagonal[k] couples rows k and k+1 and must have size n-1.
/// Throws std::runtime_error if the iteration fails to converge.
RealTridiagonalEigen symmetric_tridiagonal_eigen(
    std::span<const double> diagonal, std::span<const double> off_diagonal,
    bool want_vectors);

/// All eigenpairs of a Hermitian tridiagonal matrix, eigenvalues ascending.
Spectrum hermitian_tridiagonal_eigen(const HermitianTridiagonal& matrix,
                                     bool want_vectors);

}  // namespace amconv
