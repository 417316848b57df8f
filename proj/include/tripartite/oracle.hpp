#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Brute-force reference solvers. Nothing here calls the closed-form modules.
namespace tripartite::oracle {

/// n coupled damped modes, one of which is driven through a port.
///
/// The frequency-domain equations are
///   (decay_j/2 - i(omega - omega_j)) a_j + i sum_k G_jk a_k = sqrt(decay_p) in  [j == p]
/// and the port output is out = sqrt(decay_p) a_p - in.
struct LinearNetwork
{
    std::vector<double> frequencies;               // rad/ns
    std::vector<double> decay_rates;               // rad/ns, >= 0
    std::vector<std::complex<double>> couplings;   // n*n row-major, Hermitian, zero diagonal
    std::size_t port = 0;

    std::size_t size() const { return frequencies.size(); }
    std::complex<double> coupling(std::size_t row, std::size_t col) const { return couplings[row * size() + col]; }

    /// Throws DomainError on shape mismatch, negative decay, non-Hermitian
    /// couplings or an out-of-range port.
    void validate() const;
};

/// (M^{-1})_{pp}: port-mode amplitude per unit port drive (before the sqrt(decay) factors).
std::complex<double> port_resolvent(const LinearNetwork &net, double omega);

/// r = decay_p * (M^{-1})_{pp} - 1. Throws SingularityError on a singular system.
std::complex<double> scattering_response(const LinearNetwork &net, double omega);

/// Solves the dense complex system A x = b by Gaussian elimination with partial
/// pivoting. `a` is row-major n*n and is consumed. Throws SingularityError
/// (with a pivot-ratio condition estimate in the message) when a pivot vanishes.
std::vector<std::complex<double>> solve_dense(std::vector<std::complex<double>> a,
                                              std::vector<std::complex<double>> b);

/// Roots of (kappa/2 - i(w - wc))(gamma/2 - i(w - wm)) + g^2 = 0, sorted by real
/// part. Real parts are pole frequencies, -imag parts half-linewidths.
std::array<std::complex<double>, 2> d_poles(double omega_c, double omega_m, double coupling,
                                            double kappa, double gamma);

/// Eigenvalues of a real symmetric n x n matrix (row-major, n <= 8) by cyclic
/// Jacobi rotations, ascending. Throws DomainError if asymmetric beyond 1e-12.
std::vector<double> dense_symmetric_eigenvalues(std::span<const double> matrix, std::size_t n);

/// Eigen-decomposition from the same Jacobi sweep: eigenvalues ascending and
/// the matching orthonormal eigenvectors as columns (row-major n*n).
struct SymmetricEigensystem
{
    std::vector<double> values;
    std::vector<double> vectors;
};
SymmetricEigensystem dense_symmetric_eigensystem(std::span<const double> matrix, std::size_t n);

} // namespace tripartite::oracle
