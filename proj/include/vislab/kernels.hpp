#pragma once

// Data-parallel inner loops of the grid sweeps.  Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant selected at runtime.  The variants
// must agree bit-for-bit with the scalar reference.

#include <cstdint>
#include <span>

namespace vislab::kernels {

enum class Isa { Scalar, Avx2 };

/// Largest modulus (exclusive) accepted by eval_row; keeps a*b exact in a double.
inline constexpr std::uint32_t kMaxEvalModulus = 1u << 26;

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Best ISA supported by this CPU and build.
Isa detected_isa();
Isa active_isa();
/// Forces a variant (tests, benchmarks).  Throws InvalidArgument if unsupported.
void set_active_isa(Isa isa);

/// out[k] = (sum_j coeffs[j] * y^j) mod p with y = y_begin + k.
/// Requires p < kMaxEvalModulus, coeffs[j] < p and every y <= p.
void eval_row(std::span<const std::uint32_t> coeffs, std::uint32_t p, std::uint32_t y_begin,
              std::span<std::uint32_t> out);

/// out[k] = 1 if gcd(x, y_begin + k) == 1 else 0.  Requires x >= 1, y_begin >= 1, and
/// values below 2^31.
void coprime_row(std::uint32_t x, std::uint32_t y_begin, std::span<std::uint8_t> out);

namespace scalar {
void eval_row(std::span<const std::uint32_t> coeffs, std::uint32_t p, std::uint32_t y_begin,
              std::span<std::uint32_t> out);
void coprime_row(std::uint32_t x, std::uint32_t y_begin, std::span<std::uint8_t> out);
}  // namespace scalar

namespace avx2 {
void eval_row(std::span<const std::uint32_t> coeffs, std::uint32_t p, std::uint32_t y_begin,
              std::span<std::uint32_t> out);
void coprime_row(std::uint32_t x, std::uint32_t y_begin, std::span<std::uint8_t> out);
}  // namespace avx2

}  // namespace vislab::kernels
