#pragma once

#include <cstdint>
#include <string_view>

namespace cskb {

// Incremental 64-bit FNV-1a. Used for statement ids and manifest digests.
class Fnv1a64 {
 public:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  constexpr Fnv1a64& update(std::string_view bytes) noexcept {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= kPrime;
    }
    return *this;
  }
  // Field separator that cannot occur in UTF-8 text (0xFF).
  constexpr Fnv1a64& separator() noexcept {
    state_ ^= 0xFFu;
    state_ *= kPrime;
    return *this;
  }
  constexpr std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = kOffset;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace cskb
