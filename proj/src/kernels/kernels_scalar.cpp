#include <numeric>

#include "vislab/kernels.hpp"

namespace vislab::kernels::scalar {

void eval_row(std::span<const std::uint32_t> coeffs, std::uint32_t p, std::uint32_t y_begin,
              std::span<std::uint32_t> out) {
  const std::uint64_t m = p;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint64_t y = (y_begin + k) % m;
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * y + coeffs[j]) % m;
    out[k] = static_cast<std::uint32_t>(acc);
  }
}

void coprime_row(std::uint32_t x, std::uint32_t y_begin, std::span<std::uint8_t> out) {
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = std::gcd(x, static_cast<std::uint32_t>(y_begin + k)) == 1;
}

}  // namespace vislab::kernels::scalar
