#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "peakdomain/shift_point.hpp"

namespace peakdomain {

// ---------------------------------------------------------------------------
// Word-set oracles: finite-window surrogates of subsets E of the 2-shift.
// Membership of any finite window word is decidable and exact.
// ---------------------------------------------------------------------------

struct FullShiftOracle {};

// word admissible iff |freq_1(word) - p| <= delta
struct FrequencyBandOracle {
  double p = 0.5;
  double delta = 0.0;
};

// admissible L-words are the contiguous L-subwords of the listed base words
struct ExplicitListOracle {
  std::vector<Word> words;
};

// Splice surrogate: the part of the window at coordinates >= 0 must sit in a
// frequency band around p_future, the part at coordinates < 0 in a band
// around p_past. Bands use delta = 1/(side length) unless fixed_delta is
// set. Coordinates inside [-junction_radius, junction_radius) are exempt.
struct SplicedFamilyOracle {
  double p_future = 0.5;
  double p_past = 0.5;
  long long junction_radius = 0;
  std::optional<double> fixed_delta;
};

using WordSetOracle =
    std::variant<FullShiftOracle, FrequencyBandOracle, ExplicitListOracle, SplicedFamilyOracle>;

// inclusive coordinate interval
struct CoordWindow {
  long long lo = 0, hi = 0;
  long long length() const { return hi - lo + 1; }
};

// The Bowen ball B(x, 2^-m, k) is the cylinder fixing coordinates
// [-m, k-1+m] of x (agreement on [i-m, i+m] for 0 <= i < k).
CoordWindow bowen_ball_window(long long k, long long m);

// Window used by the cover-count layer: n + 2m + 1 coordinates.
CoordWindow cover_window(long long n, long long m);

// exact binomial coefficients up to n = 64 (all fit in uint64)
std::uint64_t binomial(int n, int k);

// does the oracle admit the word placed on the given window?
bool oracle_admits(const WordSetOracle& E, CoordWindow w, std::uint64_t word_bits);

// exact number of admissible words on the window; closed form where the
// constraints reduce to popcounts, enumeration otherwise
std::uint64_t admissible_count_on(const WordSetOracle& E, CoordWindow w);

// independent 2^L enumeration, window length <= kBruteForceWindowCap
std::uint64_t brute_force_count_on(const WordSetOracle& E, CoordWindow w);

// number of distinct admissible (n+2m+1)-windows; every distinct window
// needs its own depth-n cylinder, so this is the minimal equal-depth cover
std::uint64_t cover_count(const WordSetOracle& E, long long n, long long m);

// maximal set of pairwise-distinct admissible windows; distinct windows are
// 2^-m-separated at some time, so this coincides with cover_count
std::uint64_t separated_count(const WordSetOracle& E, long long n, long long m);

struct EntropyEstimate {
  long long resolution_m = 0;
  std::vector<long long> depths;
  std::vector<std::uint64_t> counts;
  double slope = 0.0;  // least squares of log count vs n
  double t_lo = 0.0, t_hi = 0.0;  // bisection bracket for the critical exponent
};

// Requires at least 4 depths, all within the window cap, all with nonzero
// counts (throws "empty word set" otherwise).
EntropyEstimate h_estimate(const WordSetOracle& E, long long m,
                           const std::vector<long long>& depths);

struct UnionOracle {
  WordSetOracle a, b;
};

std::uint64_t union_count_on(const UnionOracle& u, CoordWindow w);

struct UnionMaxReport {
  EntropyEstimate first, second, unioned;
  double max_part_slope = 0.0;
};

UnionMaxReport union_max_check(const WordSetOracle& a, const WordSetOracle& b, long long m,
                               const std::vector<long long>& depths);

struct AsymmetryResult {
  EntropyEstimate forward, backward;
  double forward_slope = 0.0, backward_slope = 0.0;
};

// Spliced family with Bernoulli(q) past and Bernoulli(p) future, junction at
// 0. Forward windows [-m, n-1+m] see mostly future coordinates; the inverse
// shift's windows [-(n-1+m), m] see mostly past ones. The seed parameter is
// unused: band counting is exact and deterministic.
AsymmetryResult heteroclinic_asymmetry(double p, double q, long long m,
                                       const std::vector<long long>& depths, std::uint64_t seed);

// Shannon entropy of a Bernoulli(p) symbol in nats
double bernoulli_entropy(double p);

}  // namespace peakdomain
