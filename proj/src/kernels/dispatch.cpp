#include <atomic>

#include "vislab/errors.hpp"
#include "vislab/kernels.hpp"

namespace vislab::kernels {

namespace {

std::atomic<int> g_active{-1};

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(VISLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
  int v = g_active.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detected_isa());
    g_active.store(v, std::memory_order_relaxed);
  }
  return static_cast<Isa>(v);
}

void set_active_isa(Isa isa) {
  if (!isa_supported(isa))
    throw InvalidArgument(std::string("kernel ISA not supported here: ") + isa_name(isa));
  g_active.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void eval_row(std::span<const std::uint32_t> coeffs, std::uint32_t p, std::uint32_t y_begin,
              std::span<std::uint32_t> out) {
#if defined(VISLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2 && p < kMaxEvalModulus) return avx2::eval_row(coeffs, p, y_begin, out);
#endif
  scalar::eval_row(coeffs, p, y_begin, out);
}

void coprime_row(std::uint32_t x, std::uint32_t y_begin, std::span<std::uint8_t> out) {
#if defined(VISLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::coprime_row(x, y_begin, out);
#endif
  scalar::coprime_row(x, y_begin, out);
}

}  // namespace vislab::kernels
