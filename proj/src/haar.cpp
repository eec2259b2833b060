#include "hazbands/haar.hpp"

#include <algorithm>
#include <cmath>

namespace hazbands {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int level_of_length(std::size_t n) {
  if (!is_power_of_two(n) || n < 2) throw BadShape("transform length must be a power of two >= 2");
  int l = -1;
  while (n > 1) {
    n >>= 1;
    ++l;
  }
  return l;  // histogram level L with n = 2^(L+1)
}

// Fast pyramid: block sums narrow from 2^(L+1) bins down to the total, and
// each halving emits one detail level.
std::vector<double> fast_to_wavelet(std::span<const double> h) {
  const std::size_t n = h.size();
  const int L = level_of_length(n);
  std::vector<double> out(n, 0.0);
  std::vector<double> sums(h.begin(), h.end());
  for (int l = L; l >= 0; --l) {
    const std::size_t m = std::size_t{1} << l;  // details at this level
    const double scale = std::pow(2.0, -static_cast<double>(L + 1) + 0.5 * l);
    for (std::size_t k = 0; k < m; ++k) {
      out[m + k] = scale * (sums[2 * k] - sums[2 * k + 1]);
      sums[k] = sums[2 * k] + sums[2 * k + 1];
    }
  }
  out[0] = std::pow(2.0, -static_cast<double>(L + 1)) * sums[0];
  return out;
}

std::vector<double> fast_to_heights(std::span<const double> c) {
  const std::size_t n = c.size();
  const int L = level_of_length(n);
  std::vector<double> sums(n, 0.0);
  sums[0] = c[0] * std::pow(2.0, static_cast<double>(L + 1));
  for (int l = 0; l <= L; ++l) {
    const std::size_t m = std::size_t{1} << l;
    const double unscale = std::pow(2.0, static_cast<double>(L + 1) - 0.5 * l);
    for (std::size_t k = m; k-- > 0;) {
      const double diff = c[m + k] * unscale;  // S_{2k} - S_{2k+1}
      const double total = sums[k];
      sums[2 * k] = 0.5 * (total + diff);
      sums[2 * k + 1] = 0.5 * (total - diff);
    }
  }
  return sums;
}

}  // namespace

HaarTransform build_haar_matrix(int L, std::size_t max_dim) {
  if (L < 0) throw InvalidParameter("level must be nonnegative");
  if (L >= 62 || (std::size_t{1} << (L + 1)) > max_dim)
    throw TooLarge("transform length 2^(L+1) exceeds the configured maximum");
  HaarTransform w;
  w.level = L;
  const std::size_t n = w.dim();
  if (n > kDenseHaarDim) return w;  // fast path only; no dense matrix
  w.matrix.assign(n * n, 0.0);
  const double scaling = std::pow(2.0, -static_cast<double>(L + 1));
  for (std::size_t j = 0; j < n; ++j) w.matrix[j] = scaling;
  for (int l = 0; l <= L; ++l) {
    const std::size_t block = std::size_t{1} << (L - l);  // bins per half-support
    const double scale = std::pow(2.0, -static_cast<double>(L + 1) + 0.5 * l);
    for (std::size_t k = 0; k < (std::size_t{1} << l); ++k) {
      const std::size_t row = (std::size_t{1} << l) + k;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t half = j / block;  // index into level l+1 dyadic intervals
        if (half == 2 * k)
          w.matrix[row * n + j] = scale;
        else if (half == 2 * k + 1)
          w.matrix[row * n + j] = -scale;
      }
    }
  }
  return w;
}

std::vector<double> to_wavelet_dense(const HaarTransform& w, std::span<const double> heights) {
  const std::size_t n = w.dim();
  if (heights.size() != n) throw BadShape("input length does not match the transform");
  if (w.matrix.empty()) throw TooLarge("dense matrix not materialized at this level");
  std::vector<double> out(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += w.matrix[r * n + j] * heights[j];
    out[r] = acc;
  }
  return out;
}

std::vector<double> to_heights_dense(const HaarTransform& w, std::span<const double> coeffs) {
  const std::size_t n = w.dim();
  if (coeffs.size() != n) throw BadShape("input length does not match the transform");
  if (w.matrix.empty()) throw TooLarge("dense matrix not materialized at this level");
  // W^-1 = 2^(L+1) W^T.
  const double scale = std::pow(2.0, static_cast<double>(w.level + 1));
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) acc += w.matrix[r * n + j] * coeffs[r];
    out[j] = scale * acc;
  }
  return out;
}

std::vector<double> to_wavelet(std::span<const double> heights) {
  const int L = level_of_length(heights.size());
  if (heights.size() > (std::size_t{1} << 10)) return fast_to_wavelet(heights);
  return to_wavelet_dense(build_haar_matrix(L), heights);
}

std::vector<double> to_heights(std::span<const double> coeffs) {
  const int L = level_of_length(coeffs.size());
  if (coeffs.size() > (std::size_t{1} << 10)) return fast_to_heights(coeffs);
  return to_heights_dense(build_haar_matrix(L), coeffs);
}

double ell_infty_distance(std::span<const double> coeffs_f, std::span<const double> coeffs_g) {
  if (coeffs_f.size() != coeffs_g.size()) throw BadShape("coefficient arrays differ in length");
  const int L = level_of_length(coeffs_f.size());
  double total = std::fabs(coeffs_f[0] - coeffs_g[0]);
  for (int l = 0; l <= L; ++l) {
    const std::size_t m = std::size_t{1} << l;
    double level_max = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      level_max = std::max(level_max, std::fabs(coeffs_f[m + k] - coeffs_g[m + k]));
    total += std::pow(2.0, 0.5 * l) * level_max;
  }
  return total;
}

}  // namespace hazbands
