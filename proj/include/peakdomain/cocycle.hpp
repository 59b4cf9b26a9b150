#pragma once

#include <string>
#include <vector>

#include "peakdomain/observable.hpp"

namespace peakdomain {

inline constexpr long long kMaxHorizon = 1 << 20;

// phi_n(x) for n in [-N, N]. values[N + n] = phi_n(x), values[N] = 0.
// Built incrementally with phi_{n+1} = phi_n + phi(f^n x), O(N) map
// applications.
struct CocycleTable {
  long long horizon = 0;
  std::vector<double> values;
  // range of the generator phi(f^j x) seen while building; used to detect
  // constant cocycle tails
  double increment_min = 0.0, increment_max = 0.0;

  double value(long long n) const { return values[static_cast<std::size_t>(n + horizon)]; }
};

double cocycle_eval(const System& sys, const Observable& phi, const Point& x, long long n);
CocycleTable cocycle_table(const System& sys, const Observable& phi, const Point& x, long long N);

struct PeakParams {
  long long horizon = 60;      // N
  long long drift_window = 0;  // 0 -> max(2, N/4)
  double lambda_min = 1e-3;    // minimum certified tail decay rate
  double tie_tol = -1.0;       // < 0 -> 0 on Shift, 1e-9 * scale elsewhere

  long long effective_drift_window() const;
};

struct PeakCertificate {
  bool certified = false;
  double decay_rate = 0.0;  // lambda:  phi_n <= phi_max - lambda (|n| - onset)  past the onset
  long long onset = 0;      // N0
  double forward_slope = 0.0, backward_slope = 0.0;  // tail diagnostics
  std::string reason;                                // set when uncertified
};

// Truncated peak data of the cocycle at x over [-N, N].
struct PeakProfile {
  double phi_max = 0.0;
  std::vector<long long> peak_times;  // sorted ascending, nonempty
  long long last_peak_time = 0;       // n_f = max(peak_times)
  long long horizon = 0;
  double tie_tol = 0.0;
  PeakCertificate certificate;
};

PeakProfile peak_profile(const System& sys, const Observable& phi, const Point& x,
                         const PeakParams& params);

// Profile of f^k x read off a precomputed table of x:
// phi_n(f^k x) = phi_{n+k}(x) - phi_k(x). Requires |k| + N <= table horizon.
PeakProfile peak_profile_shifted(const CocycleTable& table, long long k, const PeakParams& params,
                                 bool exact_ties);

struct SectionResult {
  long long last_peak_time = 0;  // n_f(x)
  Point section_point;           // pi(x) = f^{n_f(x)} x
  PeakProfile profile;
};

// Throws std::invalid_argument when the profile is not certified.
SectionResult section_pi(const System& sys, const Observable& phi, const Point& x,
                         const PeakParams& params);

// |Phi(x) - Phi(f^k x) - phi_k(x)|; throws when either profile fails to
// certify.
double verify_shift_relation(const System& sys, const Observable& phi, const Point& x, long long k,
                             const PeakParams& params);

struct FundamentalDomainReport {
  long long window = 0;  // K
  std::vector<int> hit_counts;      // per sample; -1 when the sample failed to certify
  std::vector<bool> sample_certified;
  std::size_t certified = 0;
  std::size_t exactly_once = 0;  // certified samples whose orbit meets W once
};

// W = {x : n_f(x) = 0}. For each certified sample counts k in [-K, K] with
// f^k x in W; a fundamental domain gives count 1.
FundamentalDomainReport fundamental_domain_test(const System& sys, const Observable& phi,
                                                const std::vector<Point>& sample,
                                                const PeakParams& params, long long K,
                                                unsigned workers = 1);

}  // namespace peakdomain
