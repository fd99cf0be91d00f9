#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace moodtag::detail {

// In-place iterative radix-2 FFT. Size must be a power of two.
inline void fft_inplace(std::vector<std::complex<double>>& x) {
  const size_t n = x.size();
  if (n < 2) return;

  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Magnitude spectrum of a real frame: bins 0..n/2 inclusive.
inline std::vector<double> real_magnitude_spectrum(const std::vector<double>& frame) {
  std::vector<std::complex<double>> buf(frame.begin(), frame.end());
  fft_inplace(buf);
  std::vector<double> mags(frame.size() / 2 + 1);
  for (size_t k = 0; k < mags.size(); ++k) mags[k] = std::abs(buf[k]);
  return mags;
}

}  // namespace moodtag::detail
