#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "peakdomain/systems.hpp"

namespace peakdomain {

class Observable;

struct ConstantObs {
  double c = 0.0;
};

struct NsLogJacobianObs {};

// value depends only on coordinates [-radius, radius]; table indexed by the
// window word, coordinate -radius as the most significant bit
struct ShiftWindowObs {
  int radius = 0;
  std::vector<double> table;  // size 2^(2 radius + 1)
};

struct TrigTerm {
  int a = 0, b = 0;
  double c_cos = 0.0, c_sin = 0.0;  // c_cos*cos(2pi(ax+by)) + c_sin*sin(2pi(ax+by))
};

struct TorusTrigObs {
  std::vector<TrigTerm> terms;
};

struct AffineObs {
  std::shared_ptr<const Observable> inner;
  double a = 1.0, b = 0.0;  // a*inner + b
};

// index of a window word, most significant bit first
std::uint32_t word_index(const Word& w);

class Observable {
 public:
  using Node = std::variant<ConstantObs, NsLogJacobianObs, ShiftWindowObs, TorusTrigObs, AffineObs>;

  static Observable constant(double c);
  static Observable ns_log_jacobian();
  static Observable shift_window(int radius, std::vector<double> table);
  static Observable torus_trig(std::vector<TrigTerm> terms);
  static Observable affine(Observable inner, double a, double b);
  // indicator of the cylinder [x_{-r} ... x_r == word]
  static Observable cylinder_indicator(int radius, const Word& word);
  // 2 x_0 - 1
  static Observable symbol_mean();

  double eval(const System& sys, const Point& x) const;
  const Node& node() const { return node_; }

 private:
  explicit Observable(Node n) : node_(std::move(n)) {}
  Node node_;
};

// the Jacobian cocycle generator of a system: log g' on NS, 0 on the cat map
Observable log_jacobian_observable(const System& sys);

}  // namespace peakdomain
