#include <doctest.h>

#include <cmath>

#include "peakdomain/rng.hpp"
#include "peakdomain/systems.hpp"

using namespace peakdomain;

TEST_CASE("north-south map formulas") {
  CHECK(ns_apply(0.0) == 0.0);
  CHECK(ns_apply(1.0) == 1.0);
  CHECK(ns_apply(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(ns_inverse(1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ns_apply(1.5), std::domain_error);
  CHECK_THROWS_AS(ns_apply(-0.1), std::domain_error);

  CHECK(ns_log_jacobian(0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(ns_log_jacobian(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(ns_log_jacobian(0.5) == doctest::Approx(std::log(8.0 / 9.0)).epsilon(1e-15));
}

TEST_CASE("ns closed-form iterate matches stepping") {
  // g^n(1/2) = 1/(2^n + 1)
  double u = 0.5;
  for (int n = 1; n <= 20; ++n) {
    u = ns_apply(u);
    CHECK(u == doctest::Approx(1.0 / (std::exp2(n) + 1.0)).epsilon(1e-14));
    CHECK(ns_pow(0.5, n) == doctest::Approx(u).epsilon(1e-14));
  }
  CHECK(ns_pow(0.3, 0) == 0.3);
  CHECK(ns_pow(0.3, -1) == doctest::Approx(ns_inverse(0.3)).epsilon(1e-15));
}

TEST_CASE("ns monotone and contracting toward 0") {
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double u = i / 200.0;
    const double v = ns_apply(u);
    CHECK(v > prev);  // strictly increasing
    if (u > 0.0 && u < 1.0) CHECK(v < u);
    prev = v;
  }
}

TEST_CASE("cat map arithmetic") {
  const TorusPoint origin{0.0, 0.0};
  const auto f0 = cat_apply(origin);
  CHECK(f0.x == 0.0);
  CHECK(f0.y == 0.0);

  const auto p = cat_apply(TorusPoint{0.5, 0.5});
  CHECK(p.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(0.0).epsilon(1e-15));
  const auto q = cat_inverse(TorusPoint{0.5, 0.0});
  CHECK(q.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q.y == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bijectivity on random points") {
  SplitMix64 rng(11);
  const System ns = System::north_south();
  const System cat = System::cat_map();
  const System sh = System::shift();
  for (int i = 0; i < 10000; ++i) {
    {
      const Point x = NsPoint{rng.next_double()};
      const Point y = ns.inverse(ns.apply(x));
      CHECK(ns.distance(x, y) <= 1e-12);
    }
    {
      const Point x = TorusPoint{rng.next_double(), rng.next_double()};
      const Point y = cat.inverse(cat.apply(x));
      CHECK(cat.distance(x, y) <= 1e-12);
    }
    {
      Word left{1}, center, right{0, 1};
      const ShiftPoint x(left, center, right, static_cast<std::int64_t>(rng.next_below(7)) - 3);
      const auto y = x.shifted(1).shifted(-1);
      CHECK(x == y);
    }
  }
}

TEST_CASE("shift point coordinates and shifting") {
  // ...111.000... : 1 for n < 0, 0 for n >= 0
  const auto spike = ShiftPoint::from_strings("1", "", "0");
  CHECK(spike.coord(-1) == 1);
  CHECK(spike.coord(-17) == 1);
  CHECK(spike.coord(0) == 0);
  CHECK(spike.coord(23) == 0);

  const auto shifted = spike.shifted(1);  // (sigma x)_{-1} = x_0 = 0
  CHECK(shifted.coord(-1) == 0);
  CHECK(shifted.coord(-2) == 1);

  // identity and exact inverse
  CHECK(spike.shifted(0) == spike);
  CHECK(spike.shifted(5).shifted(-5) == spike);

  // representation independence: ...11.11 000... with longer words
  const auto spike2 = ShiftPoint::from_strings("11", "1100", "00", -2);
  CHECK(spike2 == spike);
  CHECK(shift_distance(spike, spike2) == 0.0);
  CHECK_FALSE(spike == spike.shifted(3));
}

TEST_CASE("shift metric") {
  const auto x = ShiftPoint::from_strings("0", "10110", "0", -2);  // coords -2..2
  // flip coordinate 2: first disagreement at |n| = 2
  const auto y = ShiftPoint::from_strings("0", "10111", "0", -2);
  CHECK(shift_distance(x, y) == 0.25);
  // differ first at coordinates 2 and -3: still 2^-2
  const auto z = ShiftPoint::from_strings("1", "10111", "0", -2);
  CHECK(shift_distance(x, z) == 0.25);
  CHECK(shift_distance(x, x) == 0.0);
}

TEST_CASE("metric axioms on random triples") {
  SplitMix64 rng(99);
  const System systems[3] = {System::north_south(), System::cat_map(), System::shift()};
  auto rand_point = [&](const System& s) -> Point {
    switch (s.kind()) {
      case SystemKind::NorthSouth: return NsPoint{rng.next_double()};
      case SystemKind::CatMap: return TorusPoint{rng.next_double(), rng.next_double()};
      default: {
        Word c;
        for (int i = 0; i < 6; ++i) c.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
        return ShiftPoint(Word{static_cast<std::uint8_t>(rng.next_below(2))}, c,
                          Word{static_cast<std::uint8_t>(rng.next_below(2))},
                          static_cast<std::int64_t>(rng.next_below(5)) - 2);
      }
    }
  };
  for (int rep = 0; rep < 300; ++rep) {
    for (const auto& sys : systems) {
      const Point a = rand_point(sys), b = rand_point(sys), c = rand_point(sys);
      const double dab = sys.distance(a, b);
      CHECK(dab >= 0.0);
      CHECK(dab == sys.distance(b, a));
      CHECK(sys.distance(a, a) == 0.0);
      CHECK(dab <= sys.distance(a, c) + sys.distance(c, b) + 1e-15);
    }
  }
}

TEST_CASE("cross-system distance is an error") {
  const System ns = System::north_south();
  CHECK_THROWS_AS(ns.distance(Point{NsPoint{0.5}}, Point{TorusPoint{0.1, 0.2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ns.apply(Point{TorusPoint{0.1, 0.2}}), std::invalid_argument);
}

TEST_CASE("orbit") {
  const System ns = System::north_south();
  const auto orb = ns.orbit(Point{NsPoint{0.5}}, 0, 3);
  REQUIRE(orb.size() == 4);
  CHECK(std::get<NsPoint>(orb[0]).u == 0.5);
  CHECK(std::get<NsPoint>(orb[1]).u == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::get<NsPoint>(orb[2]).u == doctest::Approx(1.0 / 5.0).epsilon(1e-15));
  CHECK(std::get<NsPoint>(orb[3]).u == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

  const auto single = ns.orbit(Point{NsPoint{0.7}}, 0, 0);
  REQUIRE(single.size() == 1);
  CHECK(std::get<NsPoint>(single[0]).u == 0.7);

  const System cat = System::cat_map();
  for (const auto& p : cat.orbit(Point{TorusPoint{0.0, 0.0}}, -3, 3)) {
    CHECK(std::get<TorusPoint>(p).x == 0.0);
    CHECK(std::get<TorusPoint>(p).y == 0.0);
  }
}
