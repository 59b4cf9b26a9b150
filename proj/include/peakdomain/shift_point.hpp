#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace peakdomain {

using Word = std::vector<std::uint8_t>;  // symbols 0/1

Word word_from_string(std::string_view s);
std::string word_to_string(const Word& w);

// A bi-infinite binary sequence that is eventually periodic on both sides:
//
//   n <  offset                 : left_period, repeated, last symbol at offset-1
//   offset <= n < offset+|center|: center
//   n >= offset + |center|       : right_period, repeated
//
// Every coordinate is computable exactly, shifting just moves `offset`
// (O(1), word storage shared), and coordinate-wise equality is decidable:
// past both centers the sequences are periodic, so agreement on one
// lcm-length window settles each tail.
class ShiftPoint {
 public:
  ShiftPoint();  // the all-zero sequence
  ShiftPoint(Word left_period, Word center, Word right_period, std::int64_t offset = 0);

  static ShiftPoint from_strings(std::string_view left, std::string_view center,
                                 std::string_view right, std::int64_t offset = 0);

  int coord(std::int64_t n) const;
  ShiftPoint shifted(std::int64_t k) const;  // (sigma^k x)_i = x_{i+k}

  std::int64_t offset() const { return offset_; }
  const Word& left_period() const { return words_->left; }
  const Word& center() const { return words_->center; }
  const Word& right_period() const { return words_->right; }

  // window of coordinates [lo, hi], inclusive
  Word window(std::int64_t lo, std::int64_t hi) const;

  // smallest |n| with a_n != b_n, or nullopt when the sequences are equal
  static std::optional<std::int64_t> first_disagreement(const ShiftPoint& a, const ShiftPoint& b);

  friend bool operator==(const ShiftPoint& a, const ShiftPoint& b) {
    return !first_disagreement(a, b).has_value();
  }

 private:
  struct Words {
    Word left, center, right;
  };
  std::shared_ptr<const Words> words_;
  std::int64_t offset_ = 0;
};

// d(x, y) = 2^{-min{|n| : x_n != y_n}}, 0 when equal
double shift_distance(const ShiftPoint& a, const ShiftPoint& b);

}  // namespace peakdomain
