#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peakdomain/cocycle.hpp"

namespace peakdomain {

// Hopf-side point classification driven by the Jacobian cocycle.
// Dissipative: certified finite peaks. ConservativeSuspect: flat or
// recurrent tail evidence (never a positive claim of conservativity).
// Unknown: mixed evidence, e.g. a rising tail whose sup is never attained.
enum class PointClass { Dissipative, ConservativeSuspect, Unknown };

const char* point_class_name(PointClass c);

PointClass classify_point(const System& sys, const Point& x, const PeakParams& params);

struct WilsonInterval {
  double lo = 0.0, hi = 1.0;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z);

struct HopfReport {
  std::size_t sample_size = 0;
  std::size_t dissipative = 0, conservative_suspect = 0, unknown = 0;
  // Dissipative fraction among classified samples (Unknown excluded from the
  // point estimate and reported separately).
  double estimate = 0.0;
  WilsonInterval ci;
  double transitive_lower_bound = 0.0;  // 1 - estimate
  std::vector<PointClass> classes;      // per sample, index order
  std::vector<Point> points;
};

HopfReport estimate_H_volume(const System& sys, std::size_t n_samples, const PeakParams& params,
                             std::uint64_t seed, unsigned workers = 1);

// half-open interval [lo, hi) on the NS axis
struct Interval {
  double lo = 0.0, hi = 0.0;
  double length() const { return hi - lo; }
};

struct TorusRect {
  double x0 = 0.0, y0 = 0.0, width = 0.0, height = 0.0;
  bool contains(double x, double y) const {
    return x >= x0 && x < x0 + width && y >= y0 && y < y0 + height;
  }
};

struct WanderingCertificate {
  bool pass = false;
  long long horizon = 0;  // K
  double min_separation = 0.0;
  std::string detail;
};

// NS: exact monotone interval images g^k [a,b) = [g^k a, g^k b); pairwise
// disjointness over |i|,|j| <= K with hairline-contact slack (adjacent
// half-open images share an endpoint).
WanderingCertificate wandering_check_ns(const Interval& W, long long K);

// Torus: witness search on a grid. W and f^m W overlap iff some u in W has
// f^m u back in W; a found witness certifies failure. Disjointness on the
// torus is never positively certified this way.
WanderingCertificate wandering_check_torus(const TorusRect& W, long long K, int grid_per_axis);

struct SumIntegralResult {
  double integral = 0.0;      // midpoint quadrature of sum_{|n|<=N} e^{phi_n} over W
  double union_length = 0.0;  // sum of exact interval lengths |g^n W|
  long long horizon = 0;
};

// Requires W wandering; throws when the cocycle tail fails to decay over W.
SumIntegralResult sum_integral_check(const Interval& W, long long N,
                                     std::size_t quadrature_points);

struct RecurrenceResult {
  std::size_t samples = 0;
  long long n_iter = 0;
  double frac_ge_1 = 0.0, frac_ge_10 = 0.0, frac_ge_100 = 0.0;
};

RecurrenceResult recurrence_check(const TorusRect& A, std::size_t samples, long long n_iter,
                                  std::uint64_t seed, unsigned workers = 1);

// Fraction of seeded samples whose forward orbit covers every cell of the
// epsilon-grid within n_iter steps. epsilon at least the torus diameter makes
// every point trivially dense.
double transitivity_report(std::size_t samples, long long n_iter, double epsilon,
                           std::uint64_t seed, unsigned workers = 1);

}  // namespace peakdomain
