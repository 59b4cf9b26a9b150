#include "peakdomain/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "peakdomain/csv.hpp"
#include "peakdomain/parallel.hpp"
#include "peakdomain/rng.hpp"

namespace peakdomain {

namespace {

int popcount32(std::uint32_t v) { return __builtin_popcount(v); }

// expectation of a radius-r window table under Bernoulli(p)
double bernoulli_window_expectation(double p, int radius, const std::vector<double>& table) {
  const int len = 2 * radius + 1;
  double acc = 0.0;
  for (std::uint32_t w = 0; w < (1u << len); ++w) {
    const int ones = popcount32(w);
    acc += table[w] * std::pow(p, ones) * std::pow(1.0 - p, len - ones);
  }
  return acc;
}

// expectation of a window table over the orbit of word^infty
double dirac_window_expectation(const Word& word, int radius, const std::vector<double>& table) {
  const auto P = static_cast<std::int64_t>(word.size());
  double acc = 0.0;
  for (std::int64_t j = 0; j < P; ++j) {
    std::uint32_t idx = 0;
    for (int n = -radius; n <= radius; ++n) {
      std::int64_t k = (j + n) % P;
      if (k < 0) k += P;
      idx = (idx << 1) | word[static_cast<std::size_t>(k)];
    }
    acc += table[idx];
  }
  return acc / static_cast<double>(P);
}

}  // namespace

std::string measure_to_string(const MeasureSpec& mu) {
  if (const auto* b = std::get_if<BernoulliMeasure>(&mu))
    return "bernoulli:" + fmt_double(b->p);
  if (const auto* d = std::get_if<DiracPeriodicMeasure>(&mu))
    return "dirac:" + word_to_string(d->word);
  return "lebesgue-torus";
}

double expected_value(const MeasureSpec& mu, const Observable& phi) {
  const auto& node = phi.node();
  if (const auto* aff = std::get_if<AffineObs>(&node))
    return aff->a * expected_value(mu, *aff->inner) + aff->b;
  if (const auto* c = std::get_if<ConstantObs>(&node)) return c->c;

  if (const auto* b = std::get_if<BernoulliMeasure>(&mu)) {
    if (const auto* w = std::get_if<ShiftWindowObs>(&node))
      return bernoulli_window_expectation(b->p, w->radius, w->table);
  } else if (const auto* d = std::get_if<DiracPeriodicMeasure>(&mu)) {
    if (const auto* w = std::get_if<ShiftWindowObs>(&node))
      return dirac_window_expectation(d->word, w->radius, w->table);
  } else if (std::holds_alternative<LebesgueTorusMeasure>(mu)) {
    if (const auto* t = std::get_if<TorusTrigObs>(&node)) {
      double acc = 0.0;
      for (const auto& term : t->terms)
        if (term.a == 0 && term.b == 0) acc += term.c_cos;  // sin(0) = 0
      return acc;
    }
  }
  throw std::invalid_argument("expected_value: unsupported (measure, observable) pair");
}

double birkhoff_average(const System& sys, const Observable& phi, const Point& x, long long n,
                        Direction dir) {
  if (n < 1) throw std::invalid_argument("birkhoff_average: n must be >= 1");
  const long long m = dir == Direction::Forward ? n : -n;
  return cocycle_eval(sys, phi, x, m) / static_cast<double>(n);
}

EmpiricalAverage empirical_average(const System& sys, const std::vector<Observable>& dict,
                                   const Point& x, long long n, Direction dir) {
  if (n < 1) throw std::invalid_argument("empirical_average: n must be >= 1");
  EmpiricalAverage acc;
  acc.base = x;
  acc.length = n;
  acc.sums.assign(dict.size(), 0.0);
  Point p = x;
  for (long long k = 0; k < n; ++k) {
    if (dir == Direction::Backward) p = sys.inverse(p);
    for (std::size_t i = 0; i < dict.size(); ++i) acc.sums[i] += dict[i].eval(sys, p);
    if (dir == Direction::Forward) p = sys.apply(p);
  }
  return acc;
}

std::vector<DictionaryEntry> cylinder_dictionary(int max_radius) {
  if (max_radius < 0 || max_radius > 4)
    throw std::invalid_argument("cylinder dictionary radius out of range");
  std::vector<DictionaryEntry> dict;
  for (int r = 0; r <= max_radius; ++r) {
    const int len = 2 * r + 1;
    for (std::int64_t w = (1ll << len) - 1; w >= 0; --w) {
      Word word(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i)
        word[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((w >> (len - 1 - i)) & 1);
      dict.push_back(DictionaryEntry{r, static_cast<std::uint32_t>(w),
                                     Observable::cylinder_indicator(r, word)});
    }
  }
  return dict;
}

SeparatingObservable separating_observable(const MeasureSpec& mu, const MeasureSpec& nu,
                                           const std::vector<DictionaryEntry>& dict) {
  if (dict.empty()) throw std::invalid_argument("separating_observable: empty dictionary");
  std::size_t best = 0;
  double best_gap = -1.0, best_emu = 0.0, best_enu = 0.0;
  for (std::size_t i = 0; i < dict.size(); ++i) {
    const double emu = expected_value(mu, dict[i].obs);
    const double enu = expected_value(nu, dict[i].obs);
    const double gap = std::fabs(emu - enu);
    if (gap > best_gap) {  // strict: ties keep the first entry
      best_gap = gap;
      best = i;
      best_emu = emu;
      best_enu = enu;
    }
  }
  if (best_gap <= 0.0)
    throw std::invalid_argument("separating_observable: measures indistinguishable on dictionary");
  // solve a*emu + b = -1, a*enu + b = +1
  const double a = 2.0 / (best_enu - best_emu);
  const double b = -1.0 - a * best_emu;
  return SeparatingObservable{Observable::affine(dict[best].obs, a, b), a, b, best, best_gap};
}

WordSource WordSource::dirac(Word periodic_word) {
  if (periodic_word.empty()) throw std::invalid_argument("dirac word must be nonempty");
  WordSource s;
  s.is_dirac_ = true;
  s.word_ = std::move(periodic_word);
  return s;
}

WordSource WordSource::bernoulli(double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bernoulli p must be in (0,1)");
  WordSource s;
  s.p_ = p;
  s.seed_ = seed;
  return s;
}

WordSource WordSource::from_measure(const MeasureSpec& mu, std::uint64_t seed) {
  if (const auto* b = std::get_if<BernoulliMeasure>(&mu)) return bernoulli(b->p, seed);
  if (const auto* d = std::get_if<DiracPeriodicMeasure>(&mu)) return dirac(d->word);
  throw std::invalid_argument("word source requires a shift measure");
}

Word WordSource::make_window(long long len) const {
  if (len < 0) throw std::invalid_argument("window length must be >= 0");
  Word w(static_cast<std::size_t>(len));
  if (is_dirac_) {
    for (long long i = 0; i < len; ++i)
      w[static_cast<std::size_t>(i)] = word_[static_cast<std::size_t>(i % static_cast<long long>(word_.size()))];
  } else {
    SplitMix64 rng(seed_);
    for (auto& b : w) b = rng.next_bernoulli(p_) ? 1 : 0;
  }
  return w;
}

Word WordSource::extension_period(const Word& window) const {
  if (is_dirac_) return word_;
  if (window.empty())
    throw std::invalid_argument("bernoulli source needs a nonempty window to extend");
  return window;
}

ShiftPoint splice(const WordSource& past, const WordSource& future, long long half_length) {
  if (half_length < 0) throw std::invalid_argument("splice: half_length must be >= 0");
  const Word past_window = past.make_window(half_length);
  const Word future_window = future.make_window(half_length);
  Word center = past_window;
  center.insert(center.end(), future_window.begin(), future_window.end());
  return ShiftPoint(past.extension_period(past_window), std::move(center),
                    future.extension_period(future_window), -half_length);
}

HeteroclinicCheck heteroclinic_peak_check(const System& shift_sys, const ShiftPoint& spliced,
                                          const MeasureSpec& mu, const MeasureSpec& nu,
                                          const std::vector<DictionaryEntry>& dict,
                                          const PeakParams& params) {
  HeteroclinicCheck out{separating_observable(mu, nu, dict), {}, 0, false};
  const Point x{spliced};
  out.profile = peak_profile(shift_sys, out.sep.obs, x, params);

  // Junction radius J: the last time either cocycle tail still sits at or
  // above its asymptotic side of the mean, i.e. phi_n >= 0. Past J the
  // separating inequality phi_n < 0 = phi_0 has kicked in on both sides.
  // Diagnostic output; note phi at the peak is >= phi_0 = 0, so the last
  // peak time always lies in [-J, J].
  const long long N = params.horizon;
  const CocycleTable t = cocycle_table(shift_sys, out.sep.obs, x, N);
  long long j = 0;
  for (long long n = 1; n <= N; ++n)
    if (t.value(n) >= 0.0 || t.value(-n) >= 0.0) j = n;
  out.junction_radius = j;
  out.peak_in_junction = std::llabs(out.profile.last_peak_time) <= out.junction_radius;
  return out;
}

ObstructionResult ergodic_obstruction_demo(const MeasureSpec& mu, std::size_t samples, long long n,
                                           double tol, int dict_radius, std::uint64_t seed,
                                           unsigned workers) {
  if (n < 1) throw std::invalid_argument("obstruction demo: n must be >= 1");
  if (dict_radius < 0 || dict_radius > 2)
    throw std::invalid_argument("obstruction demo: dictionary radius must be <= 2");
  const bool is_bernoulli = std::holds_alternative<BernoulliMeasure>(mu);
  if (!is_bernoulli && !std::holds_alternative<DiracPeriodicMeasure>(mu))
    throw std::invalid_argument("obstruction demo: shift measure required");

  // expectations of every cylinder of radius <= dict_radius, via the
  // radius-dict_radius word probabilities
  const int R = dict_radius;
  const int len = 2 * R + 1;
  const std::size_t words = std::size_t{1} << len;
  std::vector<double> expect(words);
  for (std::size_t w = 0; w < words; ++w) {
    Word word(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i)
      word[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((w >> (len - 1 - i)) & 1);
    expect[w] = expected_value(mu, Observable::cylinder_indicator(R, word));
  }

  const auto flags = parallel_map<char>(samples, workers, [&](std::size_t idx) -> char {
    // raw symbols on [-(n+R), n+R]
    const long long lo = -(n + R), hi = n + R;
    const auto total = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::uint8_t> bits(total);
    if (is_bernoulli) {
      SplitMix64 rng(derive_seed(seed, idx));
      const double p = std::get<BernoulliMeasure>(mu).p;
      for (auto& b : bits) b = rng.next_bernoulli(p) ? 1 : 0;
    } else {
      const auto& word = std::get<DiracPeriodicMeasure>(mu).word;
      const auto P = static_cast<long long>(word.size());
      for (long long k = lo; k <= hi; ++k) {
        long long r = k % P;
        if (r < 0) r += P;
        bits[static_cast<std::size_t>(k - lo)] = word[static_cast<std::size_t>(r)];
      }
    }
    auto word_at = [&](long long center) {
      std::uint32_t v = 0;
      for (int d = -R; d <= R; ++d)
        v = (v << 1) | bits[static_cast<std::size_t>(center + d - lo)];
      return v;
    };
    // window-word counts, forward centers [0, n-1], backward [-n, -1]
    std::vector<std::uint32_t> cf(words, 0), cb(words, 0);
    for (long long k = 0; k < n; ++k) ++cf[word_at(k)];
    for (long long k = -n; k < 0; ++k) ++cb[word_at(k)];

    // every cylinder of radius rho <= R is a union of radius-R words; check
    // both empirical frequencies against the exact expectation
    for (int rho = 0; rho <= R; ++rho) {
      const int plen = 2 * rho + 1;
      const int pad = R - rho;
      for (std::uint32_t w = 0; w < (1u << plen); ++w) {
        std::uint64_t sf = 0, sb = 0;
        double e = 0.0;
        // all radius-R words whose middle plen bits equal w
        for (std::uint32_t outer = 0; outer < (1u << (2 * pad)); ++outer) {
          const std::uint32_t head = outer >> pad;
          const std::uint32_t tail = outer & ((1u << pad) - 1u);
          const std::uint32_t full = (((head << plen) | w) << pad) | tail;
          sf += cf[full];
          sb += cb[full];
          e += expect[full];
        }
        const double ff = static_cast<double>(sf) / static_cast<double>(n);
        const double fb = static_cast<double>(sb) / static_cast<double>(n);
        if (std::fabs(ff - e) > tol || std::fabs(fb - e) > tol) return 0;
      }
    }
    return 1;
  });

  ObstructionResult res;
  res.samples = samples;
  res.n = n;
  res.tol = tol;
  for (char f : flags) res.typical += (f == 1);
  res.fraction = samples == 0 ? 0.0 : static_cast<double>(res.typical) / static_cast<double>(samples);
  return res;
}

}  // namespace peakdomain
