#pragma once

#include <cstdint>
#include <vector>

#include "gtoda/rng.hpp"

namespace gtoda {

/// Eigenvalues of the symmetric tridiagonal matrix (diag, offdiag), sorted descending,
/// by Sturm-sequence bisection.
std::vector<double> eig_sym_tridiag(const std::vector<double>& diag, const std::vector<double>& offdiag);

/// GUE spectrum with E|M_ii|^2 = 1 and E|M_ij|^2 = 1 (Hermitian Brownian motion at time 1),
/// sampled through the beta = 2 tridiagonal model. Sorted descending.
std::vector<double> sample_gue_spectrum(std::size_t n, RngStream& rng);

/// Same law by dense Hermitian diagonalization, n <= 3; used as an oracle.
std::vector<double> sample_gue_spectrum_dense(std::size_t n, RngStream& rng);

/// lambda_max for `reps` replicas; replica r uses stream r of `seed`.
std::vector<double> largest_eigenvalue_samples(std::size_t n, std::size_t reps, std::uint64_t seed);

}  // namespace gtoda
