#include "peakdomain/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "peakdomain/contracts.hpp"

namespace peakdomain {

namespace {

using contracts::kBruteForceWindowCap;
using contracts::kMaxWindowLen;

void check_window(CoordWindow w) {
  if (w.lo > w.hi) throw std::invalid_argument("window: lo > hi");
  if (w.length() > kMaxWindowLen) throw std::invalid_argument("window cap exceeded");
}

// admissible symbol-1 counts of a frequency band on L symbols
std::vector<bool> band_ones(long long L, double p, double delta) {
  std::vector<bool> ok(static_cast<std::size_t>(L + 1), false);
  for (long long j = 0; j <= L; ++j) {
    const double lhs = std::fabs(static_cast<double>(j) - static_cast<double>(L) * p);
    ok[static_cast<std::size_t>(j)] = lhs <= static_cast<double>(L) * delta + 1e-9;
  }
  return ok;
}

std::uint64_t band_count(long long L, double p, double delta) {
  if (L == 0) return 1;
  const auto ok = band_ones(L, p, delta);
  std::uint64_t acc = 0;
  for (long long j = 0; j <= L; ++j)
    if (ok[static_cast<std::size_t>(j)]) acc += binomial(static_cast<int>(L), static_cast<int>(j));
  return acc;
}

// split of a window into past (< 0), junction and future (>= 0) parts for
// the spliced-family oracle
struct SpliceSplit {
  long long past_len = 0, future_len = 0, junction_len = 0;
};

SpliceSplit splice_split(const SplicedFamilyOracle& o, CoordWindow w) {
  SpliceSplit s;
  const long long jlo = -o.junction_radius, jhi = o.junction_radius - 1;  // exempt coords
  for (long long n = w.lo; n <= w.hi; ++n) {
    if (o.junction_radius > 0 && n >= jlo && n <= jhi) {
      ++s.junction_len;
    } else if (n < 0) {
      ++s.past_len;
    } else {
      ++s.future_len;
    }
  }
  return s;
}

double side_delta(const SplicedFamilyOracle& o, long long len) {
  if (o.fixed_delta) return *o.fixed_delta;
  return len > 0 ? 1.0 / static_cast<double>(len) : 0.0;
}

// distinct L-subwords of the listed words, encoded msb-first
std::set<std::uint64_t> explicit_subwords(const ExplicitListOracle& o, long long L) {
  std::set<std::uint64_t> out;
  if (L < 1 || L > 63) return out;
  for (const auto& w : o.words) {
    if (static_cast<long long>(w.size()) < L) continue;
    for (std::size_t start = 0; start + static_cast<std::size_t>(L) <= w.size(); ++start) {
      std::uint64_t bits = 0;
      for (long long i = 0; i < L; ++i)
        bits = (bits << 1) | w[start + static_cast<std::size_t>(i)];
      out.insert(bits);
    }
  }
  return out;
}

}  // namespace

CoordWindow bowen_ball_window(long long k, long long m) {
  if (k < 1 || m < 0) throw std::invalid_argument("bowen_ball_window: need k >= 1, m >= 0");
  return CoordWindow{-m, k - 1 + m};
}

CoordWindow cover_window(long long n, long long m) {
  if (n < 1 || m < 0) throw std::invalid_argument("cover_window: need n >= 1, m >= 0");
  return CoordWindow{-m, n + m};
}

std::uint64_t binomial(int n, int k) {
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(65);
    for (int i = 0; i <= 64; ++i) {
      t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
      for (int j = 1; j < i; ++j)
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
            t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
    return t;
  }();
  if (n < 0 || n > 64 || k < 0 || k > n) return 0;
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

bool oracle_admits(const WordSetOracle& E, CoordWindow w, std::uint64_t word_bits) {
  check_window(w);
  const long long L = w.length();
  if (std::holds_alternative<FullShiftOracle>(E)) return true;
  if (const auto* fb = std::get_if<FrequencyBandOracle>(&E)) {
    const int ones = __builtin_popcountll(word_bits);
    return band_ones(L, fb->p, fb->delta)[static_cast<std::size_t>(ones)];
  }
  if (const auto* el = std::get_if<ExplicitListOracle>(&E)) {
    return explicit_subwords(*el, L).count(word_bits) > 0;
  }
  const auto& sp = std::get<SplicedFamilyOracle>(E);
  long long past_ones = 0, past_len = 0, fut_ones = 0, fut_len = 0;
  for (long long n = w.lo; n <= w.hi; ++n) {
    const int bit = static_cast<int>((word_bits >> (w.hi - n)) & 1);  // msb = w.lo
    if (sp.junction_radius > 0 && n >= -sp.junction_radius && n <= sp.junction_radius - 1)
      continue;
    if (n < 0) {
      ++past_len;
      past_ones += bit;
    } else {
      ++fut_len;
      fut_ones += bit;
    }
  }
  auto in_band = [&](long long ones, long long len, double p) {
    if (len == 0) return true;
    return std::fabs(static_cast<double>(ones) - static_cast<double>(len) * p) <=
           static_cast<double>(len) * side_delta(sp, len) + 1e-9;
  };
  return in_band(past_ones, past_len, sp.p_past) && in_band(fut_ones, fut_len, sp.p_future);
}

std::uint64_t admissible_count_on(const WordSetOracle& E, CoordWindow w) {
  check_window(w);
  const long long L = w.length();
  if (std::holds_alternative<FullShiftOracle>(E)) return std::uint64_t{1} << L;
  if (const auto* fb = std::get_if<FrequencyBandOracle>(&E)) return band_count(L, fb->p, fb->delta);
  if (const auto* el = std::get_if<ExplicitListOracle>(&E))
    return explicit_subwords(*el, L).size();
  const auto& sp = std::get<SplicedFamilyOracle>(E);
  const SpliceSplit s = splice_split(sp, w);
  return band_count(s.past_len, sp.p_past, side_delta(sp, s.past_len)) *
         band_count(s.future_len, sp.p_future, side_delta(sp, s.future_len)) *
         (std::uint64_t{1} << s.junction_len);
}

std::uint64_t brute_force_count_on(const WordSetOracle& E, CoordWindow w) {
  check_window(w);
  const long long L = w.length();
  if (L > kBruteForceWindowCap)
    throw std::invalid_argument("brute force enumeration capped at window length 24");
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << L;
  for (std::uint64_t bits = 0; bits < total; ++bits)
    if (oracle_admits(E, w, bits)) ++count;
  return count;
}

std::uint64_t cover_count(const WordSetOracle& E, long long n, long long m) {
  return admissible_count_on(E, cover_window(n, m));
}

std::uint64_t separated_count(const WordSetOracle& E, long long n, long long m) {
  const CoordWindow w = cover_window(n, m);
  if (w.length() <= kBruteForceWindowCap) {
    // constructive maximal set: every admissible word differs from every
    // other somewhere in the window, hence is 2^-m-separated
    return brute_force_count_on(E, w);
  }
  return admissible_count_on(E, w);
}

namespace {

struct Fit {
  double slope = 0.0, intercept = 0.0, slope_stderr = 0.0;
};

Fit fit_log_counts(const std::vector<long long>& depths, const std::vector<std::uint64_t>& counts) {
  const std::size_t k = depths.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> ys(k);
  for (std::size_t i = 0; i < k; ++i) {
    ys[i] = std::log(static_cast<double>(counts[i]));
    sx += static_cast<double>(depths[i]);
    sy += ys[i];
    sxx += static_cast<double>(depths[i]) * static_cast<double>(depths[i]);
    sxy += static_cast<double>(depths[i]) * ys[i];
  }
  const double n = static_cast<double>(k);
  const double den = n * sxx - sx * sx;
  Fit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_x = 0;
  const double mean_x = sx / n;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ys[i] - (f.slope * static_cast<double>(depths[i]) + f.intercept);
    ss_res += r * r;
    ss_x += (static_cast<double>(depths[i]) - mean_x) * (static_cast<double>(depths[i]) - mean_x);
  }
  if (k > 2) f.slope_stderr = std::sqrt(ss_res / (n - 2.0) / ss_x);
  return f;
}

EntropyEstimate estimate_from_counts(long long m, const std::vector<long long>& depths,
                                     const std::vector<std::uint64_t>& counts) {
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] == 0)
      throw std::invalid_argument("h_estimate: empty word set at depth " +
                                  std::to_string(depths[i]));
  EntropyEstimate est;
  est.resolution_m = m;
  est.depths = depths;
  est.counts = counts;
  const Fit f = fit_log_counts(depths, counts);
  est.slope = f.slope;
  est.t_lo = f.slope - std::max(f.slope_stderr, 0.0);

  // Bisect the finite-n surrogate: t is past the critical exponent once
  // count(n) e^{-t n} < 1/2 at every depth.
  auto vanishes = [&](double t) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double v = std::log(static_cast<double>(counts[i])) -
                       t * static_cast<double>(depths[i]);
      if (v >= std::log(0.5)) return false;
    }
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (!vanishes(hi)) hi *= 2.0;
  if (vanishes(lo)) {
    est.t_hi = 0.0;
  } else {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (vanishes(mid) ? hi : lo) = mid;
    }
    est.t_hi = hi;
  }
  return est;
}

}  // namespace

EntropyEstimate h_estimate(const WordSetOracle& E, long long m,
                           const std::vector<long long>& depths) {
  if (depths.size() < 4) throw std::invalid_argument("h_estimate: need at least 4 depths");
  std::vector<std::uint64_t> counts;
  counts.reserve(depths.size());
  for (long long n : depths) counts.push_back(cover_count(E, n, m));
  return estimate_from_counts(m, depths, counts);
}

std::uint64_t union_count_on(const UnionOracle& u, CoordWindow w) {
  check_window(w);
  const long long L = w.length();
  // popcount-reducible pair: union of admissible one-counts, closed form
  auto ones_set = [&](const WordSetOracle& E) -> std::optional<std::vector<bool>> {
    if (std::holds_alternative<FullShiftOracle>(E))
      return std::vector<bool>(static_cast<std::size_t>(L + 1), true);
    if (const auto* fb = std::get_if<FrequencyBandOracle>(&E))
      return band_ones(L, fb->p, fb->delta);
    return std::nullopt;
  };
  const auto sa = ones_set(u.a), sb = ones_set(u.b);
  if (sa && sb) {
    std::uint64_t acc = 0;
    for (long long j = 0; j <= L; ++j)
      if ((*sa)[static_cast<std::size_t>(j)] || (*sb)[static_cast<std::size_t>(j)])
        acc += binomial(static_cast<int>(L), static_cast<int>(j));
    return acc;
  }
  if (L > kBruteForceWindowCap)
    throw std::invalid_argument("union count: window too long for enumeration");
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << L); ++bits)
    if (oracle_admits(u.a, w, bits) || oracle_admits(u.b, w, bits)) ++count;
  return count;
}

UnionMaxReport union_max_check(const WordSetOracle& a, const WordSetOracle& b, long long m,
                               const std::vector<long long>& depths) {
  if (depths.size() < 4) throw std::invalid_argument("union_max_check: need at least 4 depths");
  UnionMaxReport rep;
  rep.first = h_estimate(a, m, depths);
  rep.second = h_estimate(b, m, depths);
  std::vector<std::uint64_t> counts;
  counts.reserve(depths.size());
  const UnionOracle u{a, b};
  for (long long n : depths) counts.push_back(union_count_on(u, cover_window(n, m)));
  rep.unioned = estimate_from_counts(m, depths, counts);
  rep.max_part_slope = std::max(rep.first.slope, rep.second.slope);
  return rep;
}

AsymmetryResult heteroclinic_asymmetry(double p, double q, long long m,
                                       const std::vector<long long>& depths,
                                       std::uint64_t /*seed: counts are deterministic*/) {
  if (depths.size() < 4) throw std::invalid_argument("heteroclinic_asymmetry: need >= 4 depths");
  const SplicedFamilyOracle family{p, q, 0, std::nullopt};
  const WordSetOracle E{family};
  std::vector<std::uint64_t> fwd, bwd;
  for (long long n : depths) {
    const CoordWindow wf = bowen_ball_window(n, m);              // [-m, n-1+m]
    const CoordWindow wb{-(n - 1 + m), m};                       // inverse shift
    if (wf.length() > kMaxWindowLen) throw std::invalid_argument("window cap exceeded");
    fwd.push_back(admissible_count_on(E, wf));
    bwd.push_back(admissible_count_on(E, wb));
  }
  AsymmetryResult res;
  res.forward = estimate_from_counts(m, depths, fwd);
  res.backward = estimate_from_counts(m, depths, bwd);
  res.forward_slope = res.forward.slope;
  res.backward_slope = res.backward.slope;
  return res;
}

double bernoulli_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
}

}  // namespace peakdomain
