#pragma once

#include <array>
#include <cstdint>

namespace gim {

/// Identifies one reproducible stream of uniforms. Equal (seed, stream_id)
/// pairs give equal sequences on every platform and thread schedule.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeededStream&, const SeededStream&) = default;
};

/// Philox4x32-10 block: 128-bit counter, 64-bit key.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                      std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based uniform generator on the open interval (0, 1). Draw k of a
/// stream depends only on (seed, stream_id, k), so draws can be produced in
/// any order.
class CounterUniform {
 public:
  explicit CounterUniform(SeededStream stream) noexcept : stream_(stream) {}

  /// k-th uniform of the stream.
  [[nodiscard]] double at(std::uint64_t k) const noexcept;

  /// Next uniform in sequence.
  double operator()() noexcept { return at(position_++); }

  [[nodiscard]] std::uint64_t position() const noexcept { return position_; }

 private:
  SeededStream stream_;
  std::uint64_t position_ = 0;
};

}  // namespace gim
