#pragma once

#include <string>
#include <variant>
#include <vector>

#include "peakdomain/shift_point.hpp"

namespace peakdomain {

struct NsPoint {
  double u = 0.0;  // interval coordinate in [0,1]; 0 attracting, 1 repelling
};

struct TorusPoint {
  double x = 0.0, y = 0.0;  // reduced mod 1 into [0,1)
};

using Point = std::variant<NsPoint, TorusPoint, ShiftPoint>;

enum class SystemKind { NorthSouth, CatMap, Shift };

const char* system_name(SystemKind k);

// North-South interval map g(u) = u/(2-u): fixes 0 and 1, g(u) < u on (0,1),
// multiplier 1/2 at the sink and 2 at the source.
double ns_apply(double u);
double ns_inverse(double v);
double ns_log_jacobian(double u);  // log g'(u) = log(2 / (2-u)^2)

// g^n(u) = u / (2^n (1-u) + u), valid for every integer n. One division, so
// long compositions do not accumulate error.
double ns_pow(double u, long long n);

// Hyperbolic toral automorphism [[2,1],[1,1]] mod 1; det 1, log-Jacobian 0.
TorusPoint cat_apply(const TorusPoint& p);
TorusPoint cat_inverse(const TorusPoint& p);
double torus_distance(const TorusPoint& a, const TorusPoint& b);

// One contract over the three reference systems: forward map, inverse map,
// exact k-fold iteration where available, and a metric.
class System {
 public:
  static System north_south() { return System(SystemKind::NorthSouth); }
  static System cat_map() { return System(SystemKind::CatMap); }
  static System shift() { return System(SystemKind::Shift); }

  SystemKind kind() const { return kind_; }
  bool has_log_jacobian() const { return kind_ != SystemKind::Shift; }

  Point apply(const Point& x) const;
  Point inverse(const Point& x) const;
  Point iterate(const Point& x, long long k) const;  // f^k
  double distance(const Point& a, const Point& b) const;

  // [f^{n_from} x, ..., f^{n_to} x]
  std::vector<Point> orbit(const Point& x, long long n_from, long long n_to) const;

 private:
  explicit System(SystemKind k) : kind_(k) {}
  void check_point(const Point& x) const;
  SystemKind kind_;
};

std::string point_to_string(const Point& x);

}  // namespace peakdomain
