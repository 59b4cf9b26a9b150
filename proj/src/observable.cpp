#include "peakdomain/observable.hpp"

#include <cmath>
#include <stdexcept>

namespace peakdomain {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::uint32_t word_index(const Word& w) {
  if (w.size() > 31) throw std::invalid_argument("word too long for index");
  std::uint32_t idx = 0;
  for (auto b : w) idx = (idx << 1) | b;
  return idx;
}

Observable Observable::constant(double c) { return Observable(Node{ConstantObs{c}}); }

Observable Observable::ns_log_jacobian() { return Observable(Node{NsLogJacobianObs{}}); }

Observable Observable::shift_window(int radius, std::vector<double> table) {
  if (radius < 0 || radius > 12) throw std::invalid_argument("shift window radius out of range");
  const std::size_t want = std::size_t{1} << (2 * radius + 1);
  if (table.size() != want)
    throw std::invalid_argument("shift window table must have 2^(2r+1) entries");
  return Observable(Node{ShiftWindowObs{radius, std::move(table)}});
}

Observable Observable::torus_trig(std::vector<TrigTerm> terms) {
  return Observable(Node{TorusTrigObs{std::move(terms)}});
}

Observable Observable::affine(Observable inner, double a, double b) {
  return Observable(Node{AffineObs{std::make_shared<const Observable>(std::move(inner)), a, b}});
}

Observable Observable::cylinder_indicator(int radius, const Word& word) {
  if (static_cast<int>(word.size()) != 2 * radius + 1)
    throw std::invalid_argument("cylinder word must have 2r+1 symbols");
  std::vector<double> table(std::size_t{1} << (2 * radius + 1), 0.0);
  table[word_index(word)] = 1.0;
  return shift_window(radius, std::move(table));
}

Observable Observable::symbol_mean() { return shift_window(0, {-1.0, 1.0}); }

double Observable::eval(const System& sys, const Point& x) const {
  struct Visitor {
    const System& sys;
    const Point& x;

    double operator()(const ConstantObs& o) const { return o.c; }

    double operator()(const NsLogJacobianObs&) const {
      return peakdomain::ns_log_jacobian(std::get<NsPoint>(x).u);
    }

    double operator()(const ShiftWindowObs& o) const {
      const auto& s = std::get<ShiftPoint>(x);
      std::uint32_t idx = 0;
      for (int n = -o.radius; n <= o.radius; ++n)
        idx = (idx << 1) | static_cast<std::uint32_t>(s.coord(n));
      return o.table[idx];
    }

    double operator()(const TorusTrigObs& o) const {
      const auto& p = std::get<TorusPoint>(x);
      double v = 0.0;
      for (const auto& t : o.terms) {
        const double ang = kTwoPi * (t.a * p.x + t.b * p.y);
        v += t.c_cos * std::cos(ang) + t.c_sin * std::sin(ang);
      }
      return v;
    }

    double operator()(const AffineObs& o) const { return o.a * o.inner->eval(sys, x) + o.b; }
  };
  try {
    return std::visit(Visitor{sys, x}, node_);
  } catch (const std::bad_variant_access&) {
    throw std::invalid_argument("observable not defined on this system's space");
  }
}

Observable log_jacobian_observable(const System& sys) {
  switch (sys.kind()) {
    case SystemKind::NorthSouth: return Observable::ns_log_jacobian();
    case SystemKind::CatMap: return Observable::constant(0.0);  // det [[2,1],[1,1]] = 1
    case SystemKind::Shift: break;
  }
  throw std::invalid_argument("system has no log-Jacobian");
}

}  // namespace peakdomain
