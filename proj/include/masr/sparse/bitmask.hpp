#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace masr::sparse {

/// Presence bits for a dense vector: bit i describes element i.
/// Text form puts index 0 leftmost, so "0010" has only element 2 set.
class BitMask {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMask() = default;
  explicit BitMask(std::size_t size);

  static BitMask from_string(std::string_view bits);
  static BitMask from_words(std::size_t size, std::vector<Word> words);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

  [[nodiscard]] bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }

  [[nodiscard]] std::size_t popcount() const noexcept;
  /// Set bits in [0, idx). This is the compact-storage address of element idx.
  [[nodiscard]] std::size_t prefix_popcount(std::size_t idx) const;
  /// Set bits in [lo, hi).
  [[nodiscard]] std::size_t popcount_range(std::size_t lo, std::size_t hi) const;
  /// Leading non-zero detect: first set index >= start.
  [[nodiscard]] std::optional<std::size_t> lnzd(std::size_t start) const;

  [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BitMask&, const BitMask&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

[[nodiscard]] inline std::size_t word_count(std::size_t bits) noexcept {
  return (bits + BitMask::kWordBits - 1) / BitMask::kWordBits;
}

/// Bitwise AND of weight and activation masks. Throws DimensionError on length mismatch.
[[nodiscard]] BitMask work_mask(const BitMask& weights, const BitMask& activations);

/// popcount(a & b) restricted to [lo, hi) without materialising the AND.
[[nodiscard]] std::size_t and_popcount_range(const BitMask& a, const BitMask& b, std::size_t lo,
                                             std::size_t hi);

/// Calls fn(i) for every i in [lo, hi) with a[i] && b[i], ascending.
template <typename Fn>
void for_each_and_bit(const BitMask& a, const BitMask& b, std::size_t lo, std::size_t hi, Fn&& fn) {
  if (lo >= hi) return;
  const auto wa = a.words();
  const auto wb = b.words();
  const std::size_t first = lo / BitMask::kWordBits;
  const std::size_t last = (hi - 1) / BitMask::kWordBits;
  for (std::size_t w = first; w <= last; ++w) {
    BitMask::Word word = wa[w] & wb[w];
    if (w == first) word &= ~BitMask::Word{0} << (lo % BitMask::kWordBits);
    if (w == last && hi % BitMask::kWordBits != 0) {
      word &= ~BitMask::Word{0} >> (BitMask::kWordBits - hi % BitMask::kWordBits);
    }
    while (word != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(word));
      fn(w * BitMask::kWordBits + bit);
      word &= word - 1;
    }
  }
}

}  // namespace masr::sparse
