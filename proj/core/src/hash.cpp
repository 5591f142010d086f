#include "cskb/hash.hpp"

namespace cskb {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  return Fnv1a64{}.update(bytes).digest();
}

}  // namespace cskb
