#ifndef SPECTRA_EIGEN_HPP
#define SPECTRA_EIGEN_HPP

#include <complex>
#include <vector>

namespace spectra::eigen {

using cplx = std::complex<double>;

/// Eigenvalues of an n x n complex Hermitian matrix (row-major, full
/// storage), ascending. Householder reduction to a real symmetric
/// tridiagonal followed by implicit-shift QL; eigenvalues only.
/// Throws std::runtime_error if a QL eigenvalue fails to converge.
std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int n);

/// Real symmetric convenience wrapper.
std::vector<double> symmetric_eigenvalues(const std::vector<double>& a, int n);

} // namespace spectra::eigen

#endif
