#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hazbands/errors.hpp"

namespace hazbands {

/// Haar transform between histogram step heights on 2^(L+1) dyadic bins and
/// wavelet coefficients. Coefficient layout: flat index 0 is the scaling
/// coefficient (the basis function constant on (0,1], conventionally indexed
/// (-1,.) and renumbered here to 0), and level-l details occupy indices
/// [2^l, 2^(l+1)) in k order. The matrix maps heights to coefficients and
/// 2^((L+1)/2) * W is orthogonal.
struct HaarTransform {
  int level = 0;                // L; the histogram has 2^(L+1) bins
  std::vector<double> matrix;   // row-major dim x dim; empty above the dense cap

  std::size_t dim() const { return std::size_t{1} << (level + 1); }
  double entry(std::size_t row, std::size_t col) const { return matrix[row * dim() + col]; }
};

/// Largest transform length accepted by default.
inline constexpr std::size_t kMaxHaarDim = std::size_t{1} << 20;

/// Dense matrices are only materialized up to this dimension; larger
/// transforms run through the fast pyramid exclusively.
inline constexpr std::size_t kDenseHaarDim = std::size_t{1} << 12;

/// Build the transform for level L from the entrywise indicator formula.
/// Throws TooLarge when 2^(L+1) exceeds max_dim.
HaarTransform build_haar_matrix(int L, std::size_t max_dim = kMaxHaarDim);

/// Heights -> coefficients. Length must be a power of two (BadShape
/// otherwise); lengths above 2^10 use the fast O(n log n) pyramid, smaller
/// ones the dense matrix. Both paths agree to 1e-12.
std::vector<double> to_wavelet(std::span<const double> heights);

/// Coefficients -> heights (exact inverse; W^-1 = 2^(L+1) W^T).
std::vector<double> to_heights(std::span<const double> coeffs);

/// Matrix-path transforms, used as the self-oracle for the fast pyramid.
std::vector<double> to_wavelet_dense(const HaarTransform& w, std::span<const double> heights);
std::vector<double> to_heights_dense(const HaarTransform& w, std::span<const double> coeffs);

/// Multiscale distance: |f0 - g0| + sum over levels l of
/// 2^(l/2) * max_k |f_lk - g_lk|, with the scaling coefficient entering at
/// weight 1.
double ell_infty_distance(std::span<const double> coeffs_f, std::span<const double> coeffs_g);

}  // namespace hazbands
