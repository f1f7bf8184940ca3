#include "declab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace declab {

bool is_pow2(long long n) { return n > 0 && (n & (n - 1)) == 0; }

long long next_pow2(long long n) {
  long long p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::span<std::complex<double>> v, int sign) {
  const std::size_t n = v.size();
  if (!is_pow2(static_cast<long long>(n))) {
    throw std::invalid_argument("transform length must be a power of two");
  }
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = v[i + k];
        const std::complex<double> t = v[i + k + len / 2] * w;
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
}

}  // namespace declab
