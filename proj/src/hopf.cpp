#include "peakdomain/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "peakdomain/contracts.hpp"
#include "peakdomain/parallel.hpp"
#include "peakdomain/rng.hpp"

namespace peakdomain {

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::Dissipative: return "dissipative";
    case PointClass::ConservativeSuspect: return "conservative-suspect";
    case PointClass::Unknown: return "unknown";
  }
  return "?";
}

PointClass classify_point(const System& sys, const Point& x, const PeakParams& params) {
  const Observable phi = log_jacobian_observable(sys);  // throws on shift
  const CocycleTable table = cocycle_table(sys, phi, x, params.horizon);
  const PeakProfile prof = peak_profile_shifted(table, 0, params, false);
  const auto& cert = prof.certificate;
  if (cert.certified) return PointClass::Dissipative;
  if (cert.reason == "constant cocycle tails") {
    // phi is constant along this orbit. Value ~0 means a flat cocycle
    // (volume preserved, e.g. the cat map). A nonzero value makes phi_n
    // linear: the sup is infinite and never attained, which is neither
    // dissipative evidence nor recurrence, e.g. the NS fixed points.
    const double level = std::max(std::fabs(table.increment_min), std::fabs(table.increment_max));
    return level < params.lambda_min ? PointClass::ConservativeSuspect : PointClass::Unknown;
  }
  // flat tails on both sides: recurrent-looking, no decay either way
  if (std::fabs(cert.forward_slope) < params.lambda_min &&
      std::fabs(cert.backward_slope) < params.lambda_min)
    return PointClass::ConservativeSuspect;
  return PointClass::Unknown;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) return WilsonInterval{0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double den = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / den;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / den;
  return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

HopfReport estimate_H_volume(const System& sys, std::size_t n_samples, const PeakParams& params,
                             std::uint64_t seed, unsigned workers) {
  if (n_samples < 1) throw std::invalid_argument("estimate_H_volume: need at least one sample");
  HopfReport rep;
  rep.sample_size = n_samples;
  rep.points.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    SplitMix64 rng(derive_seed(seed, i));
    if (sys.kind() == SystemKind::NorthSouth)
      rep.points[i] = NsPoint{rng.next_double()};
    else if (sys.kind() == SystemKind::CatMap)
      rep.points[i] = TorusPoint{rng.next_double(), rng.next_double()};
    else
      throw std::invalid_argument("estimate_H_volume: system has no log-Jacobian");
  }
  rep.classes = parallel_map<PointClass>(
      n_samples, workers, [&](std::size_t i) { return classify_point(sys, rep.points[i], params); });
  for (auto c : rep.classes) {
    if (c == PointClass::Dissipative) ++rep.dissipative;
    else if (c == PointClass::ConservativeSuspect) ++rep.conservative_suspect;
    else ++rep.unknown;
  }
  const std::size_t classified = rep.dissipative + rep.conservative_suspect;
  rep.estimate = classified == 0
                     ? 0.0
                     : static_cast<double>(rep.dissipative) / static_cast<double>(classified);
  rep.ci = wilson_interval(rep.dissipative, classified, contracts::kWilsonZ);
  rep.transitive_lower_bound = 1.0 - rep.estimate;
  return rep;
}

WanderingCertificate wandering_check_ns(const Interval& W, long long K) {
  if (!(W.lo >= 0.0 && W.lo < W.hi && W.hi <= 1.0))
    throw std::invalid_argument("wandering_check_ns: need 0 <= lo < hi <= 1");
  WanderingCertificate cert;
  cert.horizon = K;
  std::vector<Interval> images;
  images.reserve(static_cast<std::size_t>(2 * K + 1));
  for (long long k = -K; k <= K; ++k)
    images.push_back(Interval{ns_pow(W.lo, k), ns_pow(W.hi, k)});  // g monotone increasing

  const double slack = contracts::kIntervalContactTol;
  cert.pass = true;
  cert.min_separation = 1.0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const double overlap = std::min(images[i].hi, images[j].hi) -
                             std::max(images[i].lo, images[j].lo);
      cert.min_separation = std::min(cert.min_separation, -overlap);
      // half-open adjacent images touch at one computed endpoint; only an
      // overlap beyond the contact slack is a genuine intersection
      if (overlap > 2.0 * slack) {
        cert.pass = false;
        cert.detail = "images " + std::to_string(static_cast<long long>(i) - K) + " and " +
                      std::to_string(static_cast<long long>(j) - K) + " overlap by " +
                      std::to_string(overlap);
        return cert;
      }
    }
  }
  return cert;
}

WanderingCertificate wandering_check_torus(const TorusRect& W, long long K, int grid_per_axis) {
  if (!(W.width > 0.0 && W.height > 0.0))
    throw std::invalid_argument("wandering_check_torus: degenerate rectangle");
  if (grid_per_axis < 2) throw std::invalid_argument("wandering_check_torus: grid too coarse");
  WanderingCertificate cert;
  cert.horizon = K;
  cert.min_separation = 0.0;
  // f preserves volume and is a bijection, so f^i W and f^j W (i < j)
  // intersect iff W and f^{j-i} W do.
  for (int ix = 0; ix < grid_per_axis; ++ix) {
    for (int iy = 0; iy < grid_per_axis; ++iy) {
      TorusPoint p{W.x0 + (ix + 0.5) * W.width / grid_per_axis,
                   W.y0 + (iy + 0.5) * W.height / grid_per_axis};
      for (long long m = 1; m <= 2 * K; ++m) {
        p = cat_apply(p);
        if (W.contains(p.x, p.y)) {
          cert.pass = false;
          cert.detail = "witness: grid point returns to W after " + std::to_string(m) + " steps";
          return cert;
        }
      }
    }
  }
  cert.pass = true;  // no witness found; not a proof of disjointness on the torus
  cert.detail = "no witness found on the sampling grid";
  return cert;
}

SumIntegralResult sum_integral_check(const Interval& W, long long N,
                                     std::size_t quadrature_points) {
  if (!(W.lo >= 0.0 && W.lo <= W.hi && W.hi <= 1.0))
    throw std::invalid_argument("sum_integral_check: bad interval");
  if (N < 0) throw std::invalid_argument("sum_integral_check: N must be >= 0");
  SumIntegralResult res;
  res.horizon = N;
  for (long long n = -N; n <= N; ++n) res.union_length += ns_pow(W.hi, n) - ns_pow(W.lo, n);
  if (W.length() == 0.0 || quadrature_points == 0) return res;

  const double h = W.length() / static_cast<double>(quadrature_points);
  double acc = 0.0;
  double edge_ring = 0.0, mid_ring = 0.0;  // tail-decay diagnostic
  for (std::size_t i = 0; i < quadrature_points; ++i) {
    const double u = W.lo + (static_cast<double>(i) + 0.5) * h;
    // phi_n via running log-Jacobian sums both ways
    double s = 1.0;  // n = 0 term, e^0
    double acc_f = 0.0, acc_b = 0.0;
    double uf = u, ub = u;
    for (long long n = 1; n <= N; ++n) {
      acc_f += ns_log_jacobian(uf);
      uf = ns_apply(uf);
      ub = ns_inverse(ub);
      acc_b -= ns_log_jacobian(ub);
      const double tf = std::exp(acc_f), tb = std::exp(acc_b);
      s += tf + tb;
      if (n == N) edge_ring += tf + tb;
      if (n == (N + 1) / 2) mid_ring += tf + tb;
    }
    acc += s;
  }
  if (N >= 2 && edge_ring > mid_ring)
    throw std::runtime_error("sum_integral_check: cocycle tail not decaying over W");
  res.integral = acc * h;
  return res;
}

RecurrenceResult recurrence_check(const TorusRect& A, std::size_t samples, long long n_iter,
                                  std::uint64_t seed, unsigned workers) {
  if (!(A.width > 0.0 && A.height > 0.0))
    throw std::invalid_argument("recurrence_check: degenerate region");
  const auto counts = parallel_map<long long>(samples, workers, [&](std::size_t i) {
    SplitMix64 rng(derive_seed(seed, i));
    double x = A.x0 + rng.next_double() * A.width;
    double y = A.y0 + rng.next_double() * A.height;
    long long returns = 0;
    for (long long k = 0; k < n_iter; ++k) {
      const double nx = 2.0 * x + y, ny = x + y;
      x = nx - std::floor(nx);
      y = ny - std::floor(ny);
      if (A.contains(x, y)) ++returns;
    }
    return returns;
  });
  RecurrenceResult res;
  res.samples = samples;
  res.n_iter = n_iter;
  if (samples == 0) return res;
  std::size_t c1 = 0, c10 = 0, c100 = 0;
  for (long long c : counts) {
    c1 += (c >= 1);
    c10 += (c >= 10);
    c100 += (c >= 100);
  }
  const auto total = static_cast<double>(samples);
  res.frac_ge_1 = static_cast<double>(c1) / total;
  res.frac_ge_10 = static_cast<double>(c10) / total;
  res.frac_ge_100 = static_cast<double>(c100) / total;
  return res;
}

double transitivity_report(std::size_t samples, long long n_iter, double epsilon,
                           std::uint64_t seed, unsigned workers) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("transitivity_report: epsilon must be > 0");
  if (samples == 0) return 0.0;
  if (epsilon >= std::sqrt(0.5)) return 1.0;  // torus diameter; any point is epsilon-dense
  const int G = static_cast<int>(std::ceil(1.0 / epsilon));
  const std::size_t cells = static_cast<std::size_t>(G) * static_cast<std::size_t>(G);
  const auto dense = parallel_map<char>(samples, workers, [&](std::size_t i) -> char {
    SplitMix64 rng(derive_seed(seed, i));
    double x = rng.next_double(), y = rng.next_double();
    std::vector<char> visited(cells, 0);
    std::size_t seen = 0;
    for (long long k = 0; k < n_iter; ++k) {
      const auto cx = static_cast<std::size_t>(std::min(G - 1.0, std::floor(x * G)));
      const auto cy = static_cast<std::size_t>(std::min(G - 1.0, std::floor(y * G)));
      char& v = visited[cx * static_cast<std::size_t>(G) + cy];
      if (!v) {
        v = 1;
        if (++seen == cells) return 1;
      }
      const double nx = 2.0 * x + y, ny = x + y;
      x = nx - std::floor(nx);
      y = ny - std::floor(ny);
    }
    return seen == cells ? 1 : 0;
  });
  std::size_t ok = 0;
  for (char d : dense) ok += (d == 1);
  return static_cast<double>(ok) / static_cast<double>(samples);
}

}  // namespace peakdomain
