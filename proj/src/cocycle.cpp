#include "peakdomain/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "peakdomain/parallel.hpp"

namespace peakdomain {

namespace {

// least-squares slope of (i, y_i)
double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / den;
}

// Analyze a value window v(n), n in [-N, N], given via an accessor.
template <typename ValueAt>
PeakProfile analyze_window(ValueAt v, long long N, const PeakParams& params, bool exact_ties,
                           double incr_min, double incr_max) {
  PeakProfile prof;
  prof.horizon = N;

  double vmax = v(-N), vabs = 0.0;
  for (long long n = -N; n <= N; ++n) {
    vmax = std::max(vmax, v(n));
    vabs = std::max(vabs, std::fabs(v(n)));
  }
  const double scale = std::max(1.0, vabs);
  const double tie = params.tie_tol >= 0.0 ? params.tie_tol : (exact_ties ? 0.0 : 1e-9 * scale);
  prof.phi_max = vmax;
  prof.tie_tol = tie;
  for (long long n = -N; n <= N; ++n)
    if (v(n) >= vmax - tie) prof.peak_times.push_back(n);
  prof.last_peak_time = prof.peak_times.back();

  const long long dw = params.effective_drift_window();
  if (N < dw) throw std::invalid_argument("peak profile: horizon smaller than drift window");
  auto& cert = prof.certificate;

  const double incr_scale = std::max(1.0, std::max(std::fabs(incr_min), std::fabs(incr_max)));
  if (incr_max - incr_min <= 1e-12 * incr_scale) {
    cert.reason = "constant cocycle tails";
    return prof;
  }

  // tail slopes over the last drift_window indices, as functions of |n|
  std::vector<double> idx, fwd, bwd;
  for (long long m = N - dw + 1; m <= N; ++m) {
    idx.push_back(static_cast<double>(m));
    fwd.push_back(v(m));
    bwd.push_back(v(-m));
  }
  cert.forward_slope = lsq_slope(idx, fwd);
  cert.backward_slope = lsq_slope(idx, bwd);

  long long max_abs_peak = 0;
  for (long long t : prof.peak_times) max_abs_peak = std::max(max_abs_peak, std::llabs(t));
  if (max_abs_peak > N - dw) {
    cert.reason = "peak inside tail window";
    return prof;
  }
  if (!(cert.forward_slope <= -params.lambda_min)) {
    cert.reason = "forward tail not decaying";
    return prof;
  }
  if (!(cert.backward_slope <= -params.lambda_min)) {
    cert.reason = "backward tail not decaying";
    return prof;
  }

  // Envelope: smallest onset N0 >= max |peak| with
  //   v(n) <= phi_max - lambda (|n| - N0)  for N0 < |n| <= N.
  const double lambda = std::min(-cert.forward_slope, -cert.backward_slope);
  const double env_tol = 1e-9 * scale;
  double need = static_cast<double>(max_abs_peak);
  for (long long n = -N; n <= N; ++n) {
    const double cand = static_cast<double>(std::llabs(n)) - (vmax - v(n) + env_tol) / lambda;
    need = std::max(need, cand);
  }
  const long long onset = static_cast<long long>(std::ceil(need - 1e-12));
  if (onset > N - dw) {
    cert.reason = "decay onset beyond horizon";
    return prof;
  }
  cert.certified = true;
  cert.decay_rate = lambda;
  cert.onset = std::max(onset, max_abs_peak);
  return prof;
}

}  // namespace

long long PeakParams::effective_drift_window() const {
  if (drift_window > 0) return drift_window;
  return std::max<long long>(2, horizon / 4);
}

double cocycle_eval(const System& sys, const Observable& phi, const Point& x, long long n) {
  if (std::llabs(n) > kMaxHorizon) throw std::invalid_argument("cocycle horizon cap exceeded");
  double acc = 0.0;
  if (n >= 0) {
    Point p = x;
    for (long long j = 0; j < n; ++j) {
      acc += phi.eval(sys, p);
      p = sys.apply(p);
    }
  } else {
    Point p = x;
    for (long long j = 0; j < -n; ++j) {
      p = sys.inverse(p);
      acc -= phi.eval(sys, p);
    }
  }
  return acc;
}

CocycleTable cocycle_table(const System& sys, const Observable& phi, const Point& x, long long N) {
  if (N < 1 || N > kMaxHorizon) throw std::invalid_argument("cocycle table horizon out of range");
  CocycleTable t;
  t.horizon = N;
  t.values.assign(static_cast<std::size_t>(2 * N + 1), 0.0);
  bool first = true;
  auto see = [&](double g) {
    if (first) {
      t.increment_min = t.increment_max = g;
      first = false;
    } else {
      t.increment_min = std::min(t.increment_min, g);
      t.increment_max = std::max(t.increment_max, g);
    }
  };

  // forward: phi_{n+1} = phi_n + phi(f^n x)
  Point p = x;
  double acc = 0.0;
  for (long long n = 0; n < N; ++n) {
    const double g = phi.eval(sys, p);
    see(g);
    acc += g;
    t.values[static_cast<std::size_t>(N + n + 1)] = acc;
    p = sys.apply(p);
  }
  // backward: phi_{-(m+1)} = phi_{-m} - phi(f^{-(m+1)} x)
  p = x;
  acc = 0.0;
  for (long long m = 0; m < N; ++m) {
    p = sys.inverse(p);
    const double g = phi.eval(sys, p);
    see(g);
    acc -= g;
    t.values[static_cast<std::size_t>(N - m - 1)] = acc;
  }
  return t;
}

PeakProfile peak_profile(const System& sys, const Observable& phi, const Point& x,
                         const PeakParams& params) {
  const CocycleTable t = cocycle_table(sys, phi, x, params.horizon);
  return peak_profile_shifted(t, 0, params, sys.kind() == SystemKind::Shift);
}

PeakProfile peak_profile_shifted(const CocycleTable& table, long long k, const PeakParams& params,
                                 bool exact_ties) {
  const long long N = params.horizon;
  if (std::llabs(k) + N > table.horizon)
    throw std::invalid_argument("peak_profile_shifted: table horizon too small");
  const double base = table.value(k);
  auto v = [&](long long n) { return table.value(n + k) - base; };
  // generator range over the sub-orbit [k-N, k+N)
  double lo = table.value(k - N + 1) - table.value(k - N);
  double hi = lo;
  for (long long j = k - N; j < k + N; ++j) {
    const double g = table.value(j + 1) - table.value(j);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return analyze_window(v, N, params, exact_ties, lo, hi);
}

SectionResult section_pi(const System& sys, const Observable& phi, const Point& x,
                         const PeakParams& params) {
  PeakProfile prof = peak_profile(sys, phi, x, params);
  if (!prof.certificate.certified)
    throw std::invalid_argument("section_pi: profile not certified (" + prof.certificate.reason +
                                ")");
  SectionResult r{prof.last_peak_time, sys.iterate(x, prof.last_peak_time), std::move(prof)};
  return r;
}

double verify_shift_relation(const System& sys, const Observable& phi, const Point& x, long long k,
                             const PeakParams& params) {
  if (std::llabs(k) * 2 > params.horizon)
    throw std::invalid_argument("verify_shift_relation: |k| too large for horizon");
  const PeakProfile px = peak_profile(sys, phi, x, params);
  const PeakProfile py = peak_profile(sys, phi, sys.iterate(x, k), params);
  if (!px.certificate.certified || !py.certificate.certified)
    throw std::runtime_error("verify_shift_relation: certification failure");
  const double phik = cocycle_eval(sys, phi, x, k);
  return std::fabs(px.phi_max - py.phi_max - phik);
}

FundamentalDomainReport fundamental_domain_test(const System& sys, const Observable& phi,
                                                const std::vector<Point>& sample,
                                                const PeakParams& params, long long K,
                                                unsigned workers) {
  const bool exact = sys.kind() == SystemKind::Shift;
  FundamentalDomainReport rep;
  rep.window = K;
  rep.hit_counts = parallel_map<int>(sample.size(), workers, [&](std::size_t i) {
    const CocycleTable t = cocycle_table(sys, phi, sample[i], params.horizon + K);
    const PeakProfile base = peak_profile_shifted(t, 0, params, exact);
    if (!base.certificate.certified) return -1;
    int hits = 0;
    for (long long k = -K; k <= K; ++k) {
      const PeakProfile pk = peak_profile_shifted(t, k, params, exact);
      if (pk.certificate.certified && pk.last_peak_time == 0) ++hits;
    }
    return hits;
  });
  rep.sample_certified.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const bool ok = rep.hit_counts[i] >= 0;
    rep.sample_certified[i] = ok;
    if (ok) {
      ++rep.certified;
      if (rep.hit_counts[i] == 1) ++rep.exactly_once;
    }
  }
  return rep;
}

}  // namespace peakdomain
