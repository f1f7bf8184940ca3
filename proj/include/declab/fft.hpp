#pragma once

#include <complex>
#include <span>

namespace declab {

bool is_pow2(long long n);
long long next_pow2(long long n);

/// In-place iterative radix-2 transform, length a power of two.
/// sign = +1 evaluates f(j) = sum_k v[k] e(+ jk / n) (unnormalized inverse),
/// sign = -1 the forward transform. No 1/n factor is applied.
void fft_pow2(std::span<std::complex<double>> v, int sign);

}  // namespace declab
