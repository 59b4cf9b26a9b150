#include "peakdomain/systems.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace peakdomain {

namespace {

void check_ns_domain(double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("north-south coordinate outside [0,1]: " + std::to_string(u));
}

double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r -= 1.0;
  return r;
}

}  // namespace

const char* system_name(SystemKind k) {
  switch (k) {
    case SystemKind::NorthSouth: return "north-south";
    case SystemKind::CatMap: return "cat-map";
    case SystemKind::Shift: return "shift";
  }
  return "?";
}

double ns_apply(double u) {
  check_ns_domain(u);
  return u / (2.0 - u);
}

double ns_inverse(double v) {
  check_ns_domain(v);
  return 2.0 * v / (1.0 + v);
}

double ns_log_jacobian(double u) {
  check_ns_domain(u);
  return std::log(2.0) - 2.0 * std::log(2.0 - u);
}

double ns_pow(double u, long long n) {
  check_ns_domain(u);
  if (n == 0) return u;
  if (std::llabs(n) > 1000) throw std::domain_error("ns_pow: |n| too large for exp2");
  const double scale = std::exp2(static_cast<double>(n));
  return u / (scale * (1.0 - u) + u);
}

TorusPoint cat_apply(const TorusPoint& p) {
  return TorusPoint{mod1(2.0 * p.x + p.y), mod1(p.x + p.y)};
}

TorusPoint cat_inverse(const TorusPoint& p) {
  return TorusPoint{mod1(p.x - p.y), mod1(-p.x + 2.0 * p.y)};
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  double dx = std::fabs(a.x - b.x);
  double dy = std::fabs(a.y - b.y);
  dx = std::min(dx, 1.0 - dx);
  dy = std::min(dy, 1.0 - dy);
  return std::sqrt(dx * dx + dy * dy);
}

void System::check_point(const Point& x) const {
  const bool ok = (kind_ == SystemKind::NorthSouth && std::holds_alternative<NsPoint>(x)) ||
                  (kind_ == SystemKind::CatMap && std::holds_alternative<TorusPoint>(x)) ||
                  (kind_ == SystemKind::Shift && std::holds_alternative<ShiftPoint>(x));
  if (!ok)
    throw std::invalid_argument(std::string("point does not belong to system ") +
                                system_name(kind_));
}

Point System::apply(const Point& x) const {
  check_point(x);
  switch (kind_) {
    case SystemKind::NorthSouth: return NsPoint{ns_apply(std::get<NsPoint>(x).u)};
    case SystemKind::CatMap: return cat_apply(std::get<TorusPoint>(x));
    case SystemKind::Shift: return std::get<ShiftPoint>(x).shifted(1);
  }
  throw std::logic_error("unreachable");
}

Point System::inverse(const Point& x) const {
  check_point(x);
  switch (kind_) {
    case SystemKind::NorthSouth: return NsPoint{ns_inverse(std::get<NsPoint>(x).u)};
    case SystemKind::CatMap: return cat_inverse(std::get<TorusPoint>(x));
    case SystemKind::Shift: return std::get<ShiftPoint>(x).shifted(-1);
  }
  throw std::logic_error("unreachable");
}

Point System::iterate(const Point& x, long long k) const {
  check_point(x);
  switch (kind_) {
    case SystemKind::NorthSouth: return NsPoint{ns_pow(std::get<NsPoint>(x).u, k)};
    case SystemKind::Shift: return std::get<ShiftPoint>(x).shifted(k);
    case SystemKind::CatMap: {
      TorusPoint p = std::get<TorusPoint>(x);
      for (long long i = 0; i < std::llabs(k); ++i) p = k > 0 ? cat_apply(p) : cat_inverse(p);
      return p;
    }
  }
  throw std::logic_error("unreachable");
}

double System::distance(const Point& a, const Point& b) const {
  check_point(a);
  check_point(b);
  switch (kind_) {
    case SystemKind::NorthSouth:
      return std::fabs(std::get<NsPoint>(a).u - std::get<NsPoint>(b).u);
    case SystemKind::CatMap: return torus_distance(std::get<TorusPoint>(a), std::get<TorusPoint>(b));
    case SystemKind::Shift: return shift_distance(std::get<ShiftPoint>(a), std::get<ShiftPoint>(b));
  }
  throw std::logic_error("unreachable");
}

std::vector<Point> System::orbit(const Point& x, long long n_from, long long n_to) const {
  if (n_from > n_to) throw std::invalid_argument("orbit: n_from > n_to");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  Point p = iterate(x, n_from);
  out.push_back(p);
  for (long long n = n_from + 1; n <= n_to; ++n) {
    p = apply(p);
    out.push_back(p);
  }
  return out;
}

std::string point_to_string(const Point& x) {
  char buf[80];
  if (const auto* p = std::get_if<NsPoint>(&x)) {
    std::snprintf(buf, sizeof(buf), "%.12g", p->u);
    return buf;
  }
  if (const auto* p = std::get_if<TorusPoint>(&x)) {
    std::snprintf(buf, sizeof(buf), "%.12g;%.12g", p->x, p->y);
    return buf;
  }
  const auto& s = std::get<ShiftPoint>(x);
  return word_to_string(s.window(-8, 7));
}

}  // namespace peakdomain
