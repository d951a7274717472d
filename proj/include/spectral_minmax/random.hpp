#pragma once

#include <cstdint>
#include <random>

#include "spectral_minmax/matrix_spectra.hpp"

namespace spectral_minmax {

using Rng = std::mt19937_64;

// Independent stream for trial `index` of a run seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

// rows x cols matrix of standard complex Gaussians (E|z|^2 = 1).
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Orthonormal basis of a uniformly random cols-dimensional subspace of C^rows.
ComplexMatrix random_orthonormal(std::size_t rows, std::size_t cols, Rng& rng);

// Gaussian Hermitian ensemble with E|h_ij|^2 = 1/n; its spectrum approaches
// the semicircle on [-2, 2].
Hermitian random_hermitian(std::size_t n, Rng& rng);
Hermitian random_hermitian(std::size_t n, std::uint64_t seed);

}  // namespace spectral_minmax
