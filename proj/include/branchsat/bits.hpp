#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace branchsat {

// Fixed-width bitset over closure indices with ordering and hashing.
template <std::size_t W>
class Bits {
 public:
  static constexpr std::size_t kCapacity = 64 * W;

  void set(std::size_t i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }

  bool empty() const {
    for (uint64_t x : w_)
      if (x) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (uint64_t x : w_) n += static_cast<std::size_t>(std::popcount(x));
    return n;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < W; ++k) {
      uint64_t x = w_[k];
      while (x) {
        int b = std::countr_zero(x);
        fn(static_cast<uint32_t>(k * 64 + static_cast<std::size_t>(b)));
        x &= x - 1;
      }
    }
  }

  std::vector<uint32_t> elements() const {
    std::vector<uint32_t> out;
    for_each([&](uint32_t i) { out.push_back(i); });
    return out;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < W; ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < W; ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < W; ++k) r.w_[k] &= ~o.w_[k];
    return r;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < W; ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  friend bool operator==(const Bits& a, const Bits& b) { return a.w_ == b.w_; }
  friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }
  // Word-wise order; used for canonical sorting only.
  friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

  // Lexicographic order of the ascending element sequences.
  static bool seq_less(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < W; ++k) {
      uint64_t d = a.w_[k] ^ b.w_[k];
      if (!d) continue;
      int bit = std::countr_zero(d);
      uint64_t above = ~uint64_t{0} << bit;
      bool in_a = (a.w_[k] >> bit) & 1U;
      // the set holding the smallest differing element wins unless the other has nothing beyond it
      const Bits& other = in_a ? b : a;
      bool other_continues = (other.w_[k] & above) != 0;
      for (std::size_t j = k + 1; j < W && !other_continues; ++j) other_continues = other.w_[j] != 0;
      return in_a ? other_continues : !other_continues;
    }
    return false;
  }

  std::size_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (uint64_t x : w_) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h ^ (h >> 32));
  }

 private:
  std::array<uint64_t, W> w_{};
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace branchsat
