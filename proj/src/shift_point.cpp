#include "peakdomain/shift_point.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace peakdomain {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t lcm_capped(std::int64_t a, std::int64_t b) {
  const std::int64_t l = std::lcm(a, b);
  if (l <= 0 || l > (1ll << 22))
    throw std::invalid_argument("ShiftPoint: period lcm too large");
  return l;
}

}  // namespace

Word word_from_string(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("binary word expected, got: " + std::string(s));
    w.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (auto b : w) s.push_back(b ? '1' : '0');
  return s;
}

ShiftPoint::ShiftPoint() : ShiftPoint(Word{0}, Word{}, Word{0}, 0) {}

ShiftPoint::ShiftPoint(Word left_period, Word center, Word right_period, std::int64_t offset)
    : offset_(offset) {
  if (left_period.empty() || right_period.empty())
    throw std::invalid_argument("ShiftPoint: period words must be nonempty");
  for (const Word* w : {&left_period, &center, &right_period})
    for (auto b : *w)
      if (b > 1) throw std::invalid_argument("ShiftPoint: symbols must be 0/1");
  words_ = std::make_shared<const Words>(
      Words{std::move(left_period), std::move(center), std::move(right_period)});
}

ShiftPoint ShiftPoint::from_strings(std::string_view left, std::string_view center,
                                    std::string_view right, std::int64_t offset) {
  return ShiftPoint(word_from_string(left), word_from_string(center), word_from_string(right),
                    offset);
}

int ShiftPoint::coord(std::int64_t n) const {
  const std::int64_t rel = n - offset_;
  const auto& w = *words_;
  if (rel < 0) {
    const auto L = static_cast<std::int64_t>(w.left.size());
    // left period ends at coordinate offset-1
    return w.left[static_cast<std::size_t>(L - 1 - floor_mod(-rel - 1, L))];
  }
  const auto C = static_cast<std::int64_t>(w.center.size());
  if (rel < C) return w.center[static_cast<std::size_t>(rel)];
  const auto R = static_cast<std::int64_t>(w.right.size());
  return w.right[static_cast<std::size_t>(floor_mod(rel - C, R))];
}

ShiftPoint ShiftPoint::shifted(std::int64_t k) const {
  ShiftPoint y = *this;
  y.offset_ -= k;
  return y;
}

Word ShiftPoint::window(std::int64_t lo, std::int64_t hi) const {
  if (lo > hi) throw std::invalid_argument("ShiftPoint::window: lo > hi");
  Word out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(static_cast<std::uint8_t>(coord(n)));
  return out;
}

std::optional<std::int64_t> ShiftPoint::first_disagreement(const ShiftPoint& a,
                                                           const ShiftPoint& b) {
  // Past [lo - L, hi + R) both sequences are purely periodic, so agreement
  // there propagates to all coordinates.
  const std::int64_t lo = std::min(a.offset_, b.offset_);
  const std::int64_t hi = std::max(a.offset_ + static_cast<std::int64_t>(a.center().size()),
                                   b.offset_ + static_cast<std::int64_t>(b.center().size()));
  const std::int64_t L = lcm_capped(static_cast<std::int64_t>(a.left_period().size()),
                                    static_cast<std::int64_t>(b.left_period().size()));
  const std::int64_t R = lcm_capped(static_cast<std::int64_t>(a.right_period().size()),
                                    static_cast<std::int64_t>(b.right_period().size()));
  const std::int64_t bound = std::max(std::llabs(lo - L), std::llabs(hi + R - 1));
  for (std::int64_t k = 0; k <= bound; ++k) {
    if (a.coord(k) != b.coord(k)) return k;
    if (k > 0 && a.coord(-k) != b.coord(-k)) return k;
  }
  return std::nullopt;
}

double shift_distance(const ShiftPoint& a, const ShiftPoint& b) {
  const auto k = ShiftPoint::first_disagreement(a, b);
  if (!k) return 0.0;
  if (*k > 1074) return 0.0;  // below double subnormal range
  return std::ldexp(1.0, -static_cast<int>(*k));
}

}  // namespace peakdomain
