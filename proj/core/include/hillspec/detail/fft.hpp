#pragma once

#include <bit>
#include <cassert>
#include <vector>

#include "hillspec/types.hpp"

namespace hillspec::detail {

inline bool is_pow2(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT; sign=-1 forward, sign=+1 inverse
/// (inverse includes the 1/N factor).
inline void fft(std::vector<Complex>& a, int sign) {
  const size_t n = a.size();
  assert(is_pow2(n));
  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        Complex u = a[i + k];
        Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (sign > 0) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

}  // namespace hillspec::detail
