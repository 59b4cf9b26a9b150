#include <doctest.h>

#include <cmath>

#include "peakdomain/contracts.hpp"
#include "peakdomain/entropy.hpp"

using namespace peakdomain;

TEST_CASE("bowen ball window") {
  CHECK(bowen_ball_window(1, 0).lo == 0);
  CHECK(bowen_ball_window(1, 0).hi == 0);
  CHECK(bowen_ball_window(5, 2).lo == -2);
  CHECK(bowen_ball_window(5, 2).hi == 6);
  CHECK_THROWS_AS(bowen_ball_window(0, 1), std::invalid_argument);

  // the cover layer fixes n + 2m + 1 coordinates
  for (long long n = 1; n <= 12; ++n)
    for (long long m = 0; m <= 3; ++m) CHECK(cover_window(n, m).length() == n + 2 * m + 1);
}

TEST_CASE("binomials") {
  CHECK(binomial(21, 10) == 352716ull);
  CHECK(binomial(25, 6) == 177100ull);
  CHECK(binomial(25, 7) == 480700ull);
  CHECK(binomial(64, 32) == 1832624140942590534ull);
  CHECK(binomial(5, 7) == 0ull);
}

TEST_CASE("full shift cover counts are exact powers of two") {
  const WordSetOracle full{FullShiftOracle{}};
  for (long long n = 1; n <= 20; ++n)
    for (long long m = 0; m <= 2; ++m)
      CHECK(cover_count(full, n, m) == (std::uint64_t{1} << (n + 2 * m + 1)));
  CHECK(cover_count(full, 3, 1) == 64ull);
  CHECK_THROWS_AS(cover_count(full, 28, 2), std::invalid_argument);  // window cap
}

TEST_CASE("frequency band counts: canonical cases") {
  // window length 21, band 0.5 +- 0.05: #1s in {10, 11}
  const WordSetOracle band{FrequencyBandOracle{0.5, 0.05}};
  CHECK(admissible_count_on(band, CoordWindow{0, 20}) == 705432ull);

  // window length 25, band 0.25 +- 1/24: #1s in {6, 7}
  const WordSetOracle quarter{FrequencyBandOracle{0.25, 1.0 / 24.0}};
  CHECK(admissible_count_on(quarter, CoordWindow{0, 24}) == 657800ull);

  // the shipped typical-word rate: (1/24) log count near H(0.25)
  const double rate = std::log(657800.0) / 24.0;
  CHECK(std::fabs(rate - bernoulli_entropy(0.25)) <= contracts::kBandEntropyTol);
}

TEST_CASE("explicit list oracle") {
  const ExplicitListOracle three{{word_from_string("10110"), word_from_string("00000"),
                                  word_from_string("11111")}};
  const WordSetOracle E{three};
  CHECK(admissible_count_on(E, CoordWindow{0, 4}) == 3);
  CHECK(separated_count(E, 4, 0) == 3);  // window length 5
  // a single repeated word grows only linearly many distinct subwords
  const ExplicitListOracle orbit{{word_from_string("010101010101010101")}};
  CHECK(admissible_count_on(WordSetOracle{orbit}, CoordWindow{0, 3}) == 2);
}

TEST_CASE("brute force enumeration matches closed-form counts") {
  for (long long len = 1; len <= 22; ++len) {
    const CoordWindow w{0, len - 1};
    const WordSetOracle full{FullShiftOracle{}};
    CHECK(brute_force_count_on(full, w) == admissible_count_on(full, w));
    const WordSetOracle band{FrequencyBandOracle{0.25, 1.0 / 24.0}};
    CHECK(brute_force_count_on(band, w) == admissible_count_on(band, w));
    const WordSetOracle band2{FrequencyBandOracle{0.5, 0.1}};
    CHECK(brute_force_count_on(band2, w) == admissible_count_on(band2, w));
  }
  // spliced family: window straddling the junction
  const WordSetOracle sp{SplicedFamilyOracle{0.5, 0.1, 0, std::nullopt}};
  for (long long m : {0ll, 2ll}) {
    const CoordWindow w{-m - 4, 9};
    CHECK(brute_force_count_on(sp, w) == admissible_count_on(sp, w));
  }
}

TEST_CASE("separated counts equal cover counts") {
  const WordSetOracle full{FullShiftOracle{}};
  CHECK(separated_count(full, 3, 1) == cover_count(full, 3, 1));
  const WordSetOracle band{FrequencyBandOracle{0.5, 0.05}};
  for (long long n : {6ll, 10ll, 16ll, 20ll})
    CHECK(separated_count(band, n, 0) == cover_count(band, n, 0));
}

TEST_CASE("band count monotonicity") {
  // nonincreasing as delta shrinks
  CHECK(admissible_count_on(WordSetOracle{FrequencyBandOracle{0.5, 0.2}}, CoordWindow{0, 20}) >=
        admissible_count_on(WordSetOracle{FrequencyBandOracle{0.5, 0.1}}, CoordWindow{0, 20}));
  CHECK(admissible_count_on(WordSetOracle{FrequencyBandOracle{0.5, 0.1}}, CoordWindow{0, 20}) >=
        admissible_count_on(WordSetOracle{FrequencyBandOracle{0.5, 0.05}}, CoordWindow{0, 20}));
  // nondecreasing in n for the full shift
  const WordSetOracle full{FullShiftOracle{}};
  for (long long n = 1; n < 20; ++n) CHECK(cover_count(full, n + 1, 0) > cover_count(full, n, 0));
}

TEST_CASE("h_estimate on the full shift") {
  const WordSetOracle full{FullShiftOracle{}};
  std::vector<long long> depths;
  for (long long n = 8; n <= 20; ++n) depths.push_back(n);
  const auto est1 = h_estimate(full, 1, depths);
  CHECK(std::fabs(est1.slope - std::log(2.0)) <= contracts::kFullShiftSlopeTol);
  CHECK(est1.t_lo <= est1.slope);
  CHECK(est1.slope <= est1.t_hi);

  // resolution stability between m and m+1
  const auto est2 = h_estimate(full, 2, depths);
  CHECK(std::fabs(est1.slope - est2.slope) <= contracts::kResolutionStabilityTol);

  CHECK_THROWS_AS(h_estimate(full, 1, std::vector<long long>{8, 9, 10}), std::invalid_argument);
}

TEST_CASE("h_estimate rejects empty word sets") {
  // delta so narrow the band misses every integer count at some length
  const WordSetOracle band{FrequencyBandOracle{0.25, 1.0 / 24.0}};
  std::vector<long long> depths{8, 9, 10, 11};  // length 10 band around 2.5 is empty
  CHECK_THROWS_AS(h_estimate(band, 0, depths), std::invalid_argument);
}

TEST_CASE("single-orbit families have vanishing slope") {
  Word w = word_from_string("0110");
  Word repeated;
  for (int i = 0; i < 10; ++i) repeated.insert(repeated.end(), w.begin(), w.end());
  const WordSetOracle E{ExplicitListOracle{{repeated}}};
  std::vector<long long> depths{8, 10, 12, 14, 16, 18, 20};
  const auto est = h_estimate(E, 0, depths);
  CHECK(est.slope <= 0.02);
  CHECK(est.t_lo <= est.slope);
  CHECK(est.slope <= est.t_hi);
}

TEST_CASE("union takes the max slope") {
  std::vector<long long> depths;
  for (long long n = 8; n <= 20; ++n) depths.push_back(n);
  const WordSetOracle big{FrequencyBandOracle{0.5, 0.1}};
  const WordSetOracle small{FrequencyBandOracle{0.1, 0.1}};
  const auto rep = union_max_check(big, small, 0, depths);
  CHECK(std::fabs(rep.unioned.slope - rep.max_part_slope) <= contracts::kUnionMaxTol);
  for (std::size_t i = 0; i < depths.size(); ++i) {
    // union counts are subadditive and dominate both parts
    CHECK(rep.unioned.counts[i] <= rep.first.counts[i] + rep.second.counts[i]);
    CHECK(rep.unioned.counts[i] >= rep.first.counts[i]);
    CHECK(rep.unioned.counts[i] >= rep.second.counts[i]);
  }

  // FullShift subsumes everything; E union E is E
  const WordSetOracle full{FullShiftOracle{}};
  const auto rep2 = union_max_check(full, small, 1, depths);
  for (std::size_t i = 0; i < depths.size(); ++i)
    CHECK(rep2.unioned.counts[i] == rep2.first.counts[i]);
  const auto rep3 = union_max_check(big, big, 0, depths);
  for (std::size_t i = 0; i < depths.size(); ++i)
    CHECK(rep3.unioned.counts[i] == rep3.first.counts[i]);

  // union membership cross-check against enumeration
  const UnionOracle u{big, small};
  for (long long n : {8ll, 12ll}) {
    const CoordWindow w = cover_window(n, 0);
    std::uint64_t brute = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << w.length()); ++bits)
      if (oracle_admits(big, w, bits) || oracle_admits(small, w, bits)) ++brute;
    CHECK(union_count_on(u, w) == brute);
  }
}

TEST_CASE("heteroclinic asymmetry slopes") {
  std::vector<long long> depths;
  for (long long n = 8; n <= 20; ++n) depths.push_back(n);
  const auto res = heteroclinic_asymmetry(0.5, 0.1, 2, depths, 1);
  CHECK(std::fabs(res.forward_slope - std::log(2.0)) <= contracts::kBandEntropyTol);
  CHECK(std::fabs(res.backward_slope - bernoulli_entropy(0.1)) <= contracts::kBandEntropyTol);
  CHECK(std::fabs(res.forward_slope - res.backward_slope) >= contracts::kAsymmetryMinGap);

  // symmetric pair: the two directions agree
  const auto sym = heteroclinic_asymmetry(0.3, 0.3, 2, depths, 1);
  CHECK(std::fabs(sym.forward_slope - sym.backward_slope) <= contracts::kSymmetricAgreeTol);

  // degenerate bands around deterministic words: bounded counts, flat slopes
  const SplicedFamilyOracle det{0.0, 1.0, 0, 0.0};
  std::vector<std::uint64_t> counts;
  for (long long n : depths) counts.push_back(admissible_count_on(WordSetOracle{det},
                                                                  bowen_ball_window(n, 2)));
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) CHECK(counts[i] == counts[i + 1]);
  CHECK(counts[0] == 1);
}

TEST_CASE("spliced family junction exemption") {
  // all-ones future, all-zeros past; only the junction coordinates are free
  const SplicedFamilyOracle strict{1.0, 0.0, 0, 0.0};
  const SplicedFamilyOracle loose{1.0, 0.0, 2, 0.0};
  const CoordWindow w{-3, 2};  // 6 coordinates, 4 of them in [-2, 1]
  CHECK(admissible_count_on(WordSetOracle{strict}, w) == 1);  // 000111
  CHECK(admissible_count_on(WordSetOracle{loose}, w) == 16);
  CHECK(brute_force_count_on(WordSetOracle{strict}, w) == 1);
  CHECK(brute_force_count_on(WordSetOracle{loose}, w) == 16);
}

TEST_CASE("resolution stability of band slopes") {
  std::vector<long long> depths;
  for (long long n = 8; n <= 20; ++n) depths.push_back(n);
  const WordSetOracle band{FrequencyBandOracle{0.5, 0.1}};
  const auto e0 = h_estimate(band, 0, depths);
  const auto e1 = h_estimate(band, 1, depths);
  CHECK(std::fabs(e0.slope - e1.slope) <= 0.02);
}
