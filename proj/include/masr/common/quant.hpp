#pragma once

#include <cstdint>

namespace masr {

/// Sign-split linear quantisation: one sign bit plus (bits - 1) magnitude bits,
/// with positive and negative magnitudes scaled separately.
struct QuantParams {
  int bits = 10;
  double s_pos = 0.0;
  double s_neg = 0.0;

  [[nodiscard]] constexpr std::int32_t max_code() const noexcept {
    return (std::int32_t{1} << (bits - 1)) - 1;
  }
  [[nodiscard]] double scale_for(bool negative) const noexcept { return negative ? s_neg : s_pos; }

  friend bool operator==(const QuantParams&, const QuantParams&) = default;
};

}  // namespace masr
