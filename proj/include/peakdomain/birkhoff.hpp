#pragma once

#include <cstdint>
#include <vector>

#include "peakdomain/cocycle.hpp"

namespace peakdomain {

struct BernoulliMeasure {
  double p = 0.5;  // i.i.d. symbol-1 probability, p in (0,1)
};

struct DiracPeriodicMeasure {
  Word word;  // uniform measure on the orbit of the periodic point word^infty
};

struct LebesgueTorusMeasure {};

using MeasureSpec = std::variant<BernoulliMeasure, DiracPeriodicMeasure, LebesgueTorusMeasure>;

std::string measure_to_string(const MeasureSpec& mu);

// Exact closed-form expectation; throws for unsupported (measure, observable)
// pairs.
double expected_value(const MeasureSpec& mu, const Observable& phi);

enum class Direction { Forward, Backward };

// forward: (1/n) phi_n(x); backward: (1/n) phi_{-n}(x). The empirical mean
// over the past orbit {f^{-1}x, ..., f^{-n}x} is minus the backward value.
double birkhoff_average(const System& sys, const Observable& phi, const Point& x, long long n,
                        Direction dir);

// Running sums of a fixed observable dictionary along an orbit segment.
struct EmpiricalAverage {
  Point base;
  long long length = 0;
  std::vector<double> sums;  // one per observable, averages = sums / length
};

EmpiricalAverage empirical_average(const System& sys, const std::vector<Observable>& dict,
                                   const Point& x, long long n, Direction dir);

// Cylinder indicators of radius <= max_radius. Within a radius, words are
// enumerated from all-ones down to all-zeros so the symbol-1 cylinder comes
// first; ties in the separating gap are broken by this order.
struct DictionaryEntry {
  int radius = 0;
  std::uint32_t word = 0;
  Observable obs;
};

std::vector<DictionaryEntry> cylinder_dictionary(int max_radius);

struct SeparatingObservable {
  Observable obs;     // a * phi0 + b with integral -1 against mu and +1 against nu
  double a = 0.0, b = 0.0;
  std::size_t dictionary_index = 0;
  double gap = 0.0;  // |E_mu[phi0] - E_nu[phi0]|
};

// Throws when mu and nu are indistinguishable on the dictionary.
SeparatingObservable separating_observable(const MeasureSpec& mu, const MeasureSpec& nu,
                                           const std::vector<DictionaryEntry>& dict);

// Word source for splicing: a periodic word or a seeded Bernoulli sampler.
class WordSource {
 public:
  static WordSource dirac(Word periodic_word);
  static WordSource bernoulli(double p, std::uint64_t seed);
  static WordSource from_measure(const MeasureSpec& mu, std::uint64_t seed);

  // window of `len` symbols (coordinates [0,len) of the source's own stream)
  Word make_window(long long len) const;
  // periodic extension beyond the window
  Word extension_period(const Word& window) const;

 private:
  WordSource() = default;
  bool is_dirac_ = false;
  Word word_;
  double p_ = 0.5;
  std::uint64_t seed_ = 0;
};

// Heteroclinic candidate: coordinates [-L, -1] from the past source,
// [0, L-1] from the future source, periodic extension beyond. Exact object.
ShiftPoint splice(const WordSource& past, const WordSource& future, long long half_length);

struct HeteroclinicCheck {
  SeparatingObservable sep;
  PeakProfile profile;
  long long junction_radius = 0;  // J: first time both empirical tails cross their means
  bool peak_in_junction = false;  // |n_f| <= J
};

HeteroclinicCheck heteroclinic_peak_check(const System& shift_sys, const ShiftPoint& spliced,
                                          const MeasureSpec& mu, const MeasureSpec& nu,
                                          const std::vector<DictionaryEntry>& dict,
                                          const PeakParams& params);

struct ObstructionResult {
  std::size_t samples = 0;
  long long n = 0;
  double tol = 0.0;
  std::size_t typical = 0;  // samples with every dictionary average within tol, both directions
  double fraction = 0.0;
};

// Statistical shadow of mu(H_f(mu)) = 1: fraction of mu-samples whose
// forward and backward empirical averages of every dictionary observable
// sit within tol of the expectation.
ObstructionResult ergodic_obstruction_demo(const MeasureSpec& mu, std::size_t samples, long long n,
                                           double tol, int dict_radius, std::uint64_t seed,
                                           unsigned workers = 1);

}  // namespace peakdomain
