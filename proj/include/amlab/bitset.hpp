#ifndef AMLAB_BITSET_HPP
#define AMLAB_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace amlab {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool none() const noexcept {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  bool is_subset_of(Bitset const& o) const noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(Bitset const& o) const noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }
  std::size_t intersection_count(Bitset const& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t k = 0; k < w_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(w_[k] & o.w_[k]));
    return c;
  }

  Bitset& operator&=(Bitset const& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bitset& operator|=(Bitset const& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bitset& subtract(Bitset const& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, Bitset const& b) { return a &= b; }
  friend Bitset operator|(Bitset a, Bitset const& b) { return a |= b; }

  friend bool operator==(Bitset const& a, Bitset const& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  // Index of the first set bit at or after `from`, or size() when there is none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= n_) return n_;
    std::size_t k = from >> 6;
    std::uint64_t x = w_[k] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (x) {
        std::size_t r = (k << 6) + static_cast<std::size_t>(std::countr_zero(x));
        return r < n_ ? r : n_;
      }
      if (++k == w_.size()) return n_;
      x = w_[k];
    }
  }
  std::size_t first() const noexcept { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k];
      while (x) {
        f((k << 6) + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace amlab

#endif  // AMLAB_BITSET_HPP
