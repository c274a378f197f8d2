#include "masr/sparse/bitmask.hpp"

#include <algorithm>

#include "masr/common/error.hpp"

namespace masr::sparse {

namespace {

// Mask with the low `n` bits set, n in [0, 64].
BitMask::Word low_bits(std::size_t n) noexcept {
  return n >= BitMask::kWordBits ? ~BitMask::Word{0} : (BitMask::Word{1} << n) - 1;
}

}  // namespace

BitMask::BitMask(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitMask BitMask::from_string(std::string_view bits) {
  BitMask mask(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask.set(i);
    } else if (bits[i] != '0') {
      throw ParameterError("bitmask literal may only contain '0' and '1'");
    }
  }
  return mask;
}

BitMask BitMask::from_words(std::size_t size, std::vector<Word> words) {
  if (words.size() != word_count(size)) {
    throw StructuralError("bitmask word count does not match its length");
  }
  if (size % kWordBits != 0 && !words.empty() && (words.back() & ~low_bits(size % kWordBits)) != 0) {
    throw StructuralError("bitmask has bits set beyond its length");
  }
  BitMask mask;
  mask.size_ = size;
  mask.words_ = std::move(words);
  return mask;
}

std::size_t BitMask::popcount() const noexcept {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitMask::prefix_popcount(std::size_t idx) const {
  if (idx > size_) throw DimensionError("prefix_popcount index beyond mask length");
  return popcount_range(0, idx);
}

std::size_t BitMask::popcount_range(std::size_t lo, std::size_t hi) const {
  if (lo >= hi) return 0;
  const std::size_t first = lo / kWordBits;
  const std::size_t last = (hi - 1) / kWordBits;
  std::size_t n = 0;
  for (std::size_t w = first; w <= last; ++w) {
    Word word = words_[w];
    if (w == first) word &= ~low_bits(lo % kWordBits);
    if (w == last) word &= low_bits(hi - last * kWordBits);
    n += static_cast<std::size_t>(std::popcount(word));
  }
  return n;
}

std::optional<std::size_t> BitMask::lnzd(std::size_t start) const {
  if (start > size_) throw DimensionError("lnzd start beyond mask length");
  if (start == size_) return std::nullopt;
  std::size_t w = start / kWordBits;
  Word word = words_[w] & ~low_bits(start % kWordBits);
  while (true) {
    if (word != 0) {
      const std::size_t idx = w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
      return idx < size_ ? std::optional<std::size_t>(idx) : std::nullopt;
    }
    if (++w == words_.size()) return std::nullopt;
    word = words_[w];
  }
}

std::string BitMask::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

BitMask work_mask(const BitMask& weights, const BitMask& activations) {
  if (weights.size() != activations.size()) {
    throw DimensionError("work_mask: weight mask has " + std::to_string(weights.size()) +
                         " bits, activation mask has " + std::to_string(activations.size()));
  }
  std::vector<BitMask::Word> words(weights.words().begin(), weights.words().end());
  const auto other = activations.words();
  for (std::size_t i = 0; i < words.size(); ++i) words[i] &= other[i];
  return BitMask::from_words(weights.size(), std::move(words));
}

std::size_t and_popcount_range(const BitMask& a, const BitMask& b, std::size_t lo, std::size_t hi) {
  hi = std::min({hi, a.size(), b.size()});
  if (lo >= hi) return 0;
  const auto wa = a.words();
  const auto wb = b.words();
  const std::size_t first = lo / BitMask::kWordBits;
  const std::size_t last = (hi - 1) / BitMask::kWordBits;
  std::size_t n = 0;
  for (std::size_t w = first; w <= last; ++w) {
    BitMask::Word word = wa[w] & wb[w];
    if (w == first) word &= ~low_bits(lo % BitMask::kWordBits);
    if (w == last) word &= low_bits(hi - last * BitMask::kWordBits);
    n += static_cast<std::size_t>(std::popcount(word));
  }
  return n;
}

}  // namespace masr::sparse
