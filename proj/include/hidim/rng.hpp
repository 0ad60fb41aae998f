#ifndef HIDIM_RNG_HPP_
#define HIDIM_RNG_HPP_

#include <array>
#include <cstdint>

namespace hidim {

// Philox4x32-10 counter-based generator (Salmon et al., Random123). A stream
// is fully identified by its 64-bit key and the upper 64 bits of the counter,
// so any (seed, replicate, column) triple can be drawn without touching
// other streams.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block bijection(Block counter, Key key);

  // Stream keyed by seed; (stream_hi, stream_lo) occupy counter words 3 and 2.
  Philox4x32(std::uint64_t seed, std::uint32_t stream_hi, std::uint32_t stream_lo);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1) with 53 random bits.
  double next_open01();
  // Standard normal via Box-Muller; pairs are cached.
  double next_normal();

 private:
  void refill();

  Key key_;
  Block counter_;
  Block buffer_{};
  unsigned used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

} // namespace hidim

#endif // HIDIM_RNG_HPP_
