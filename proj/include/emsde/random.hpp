#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace emsde {

/// Philox4x32-10 (Salmon et al., SC'11). Stateless: the output is a pure
/// function of (key, counter), which makes streams splittable by path and index.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Maps the top 52 bits to the open interval (0, 1); the largest value is 1 - 2^-53.
inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Inverse of the standard normal CDF, Wichura's AS241 (PPND16); relative
/// accuracy about 1e-16 on (0, 1).
double normal_quantile(double p);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Keyed counter-based normal stream. Normal number j of stream `stream` is
/// drawn from Philox block j / 2 (two normals per 128-bit block), so any
/// sub-range can be produced independently.
class CounterNormal {
 public:
  CounterNormal(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  /// Normals 2*block and 2*block+1.
  std::array<double, 2> pair(std::uint64_t block) const {
    const auto r = philox4x32({static_cast<std::uint32_t>(block),
                               static_cast<std::uint32_t>(block >> 32), stream_lo_, stream_hi_},
                              key_);
    const std::uint64_t a = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
    return {normal_quantile(to_open_unit(a)), normal_quantile(to_open_unit(b))};
  }

  /// Writes normals first .. first + count - 1 to out.
  void fill(std::uint64_t first, double* out, std::size_t count) const {
    std::uint64_t j = first;
    const std::uint64_t end = first + count;
    if (j < end && (j & 1u)) *out++ = pair(j++ / 2)[1];
    for (; j + 1 < end; j += 2) {
      const auto z = pair(j / 2);
      *out++ = z[0];
      *out++ = z[1];
    }
    if (j < end) *out = pair(j / 2)[0];
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
};

}  // namespace emsde
