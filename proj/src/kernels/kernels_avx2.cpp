// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "vislab/kernels.hpp"

namespace vislab::kernels::avx2 {

namespace {

// (a * b) mod p for a, b < 2^26 held exactly in doubles.
inline __m256d mulmod(__m256d a, __m256d b, __m256d p, __m256d pinv) {
  const __m256d prod = _mm256_mul_pd(a, b);
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  __m256d r = _mm256_fnmadd_pd(q, p, prod);
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), p));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
  return r;
}

inline __m256d addmod(__m256d a, __m256d b, __m256d p) {
  const __m256d s = _mm256_add_pd(a, b);
  return _mm256_sub_pd(s, _mm256_and_pd(_mm256_cmp_pd(s, p, _CMP_GE_OQ), p));
}

}  // namespace

void eval_row(std::span<const std::uint32_t> coeffs, std::uint32_t p, std::uint32_t y_begin,
              std::span<std::uint32_t> out) {
  const std::size_t n = out.size();
  if (coeffs.empty()) {
    for (auto& v : out) v = 0;
    return;
  }
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d step = _mm256_set1_pd(4.0);
  const std::size_t top = coeffs.size() - 1;

  std::size_t k = 0;
  __m256d y0 = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(y_begin)), _mm256_setr_pd(0, 1, 2, 3));
  for (; k + 8 <= n; k += 8) {
    const __m256d y1 = _mm256_add_pd(y0, step);
    __m256d acc0 = _mm256_set1_pd(static_cast<double>(coeffs[top]));
    __m256d acc1 = acc0;
    for (std::size_t j = top; j-- > 0;) {
      const __m256d c = _mm256_set1_pd(static_cast<double>(coeffs[j]));
      acc0 = addmod(mulmod(acc0, y0, vp, vpinv), c, vp);
      acc1 = addmod(mulmod(acc1, y1, vp, vpinv), c, vp);
    }
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + k), _mm256_cvtpd_epi32(acc0));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + k + 4), _mm256_cvtpd_epi32(acc1));
    y0 = _mm256_add_pd(y1, step);
  }
  if (k < n)
    scalar::eval_row(coeffs, p, static_cast<std::uint32_t>(y_begin + k), out.subspan(k));
}

void coprime_row(std::uint32_t x, std::uint32_t y_begin, std::span<std::uint8_t> out) {
  const std::size_t n = out.size();
  const bool x_even = (x & 1u) == 0;
  const std::uint32_t x_odd = x >> std::countr_zero(x);
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i y = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(y_begin + k)), lane);
    // Binary gcd of the odd x_odd with y: halve b when even, else (a, b) <- (min, max - min).
    __m256i a = _mm256_set1_epi32(static_cast<int>(x_odd));
    __m256i b = y;
    while (!_mm256_testz_si256(b, b)) {
      const __m256i even = _mm256_cmpeq_epi32(_mm256_and_si256(b, one), zero);
      const __m256i mn = _mm256_min_epu32(a, b);
      const __m256i mx = _mm256_max_epu32(a, b);
      a = _mm256_blendv_epi8(mn, a, even);
      b = _mm256_blendv_epi8(_mm256_sub_epi32(mx, mn), _mm256_srli_epi32(b, 1), even);
    }
    __m256i ok = _mm256_cmpeq_epi32(a, one);
    if (x_even) ok = _mm256_and_si256(ok, _mm256_cmpeq_epi32(_mm256_and_si256(y, one), one));
    const unsigned mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(ok)));
    for (unsigned i = 0; i < 8; ++i) out[k + i] = static_cast<std::uint8_t>(mask >> i & 1u);
  }
  if (k < n) scalar::coprime_row(x, static_cast<std::uint32_t>(y_begin + k), out.subspan(k));
}

}  // namespace vislab::kernels::avx2
