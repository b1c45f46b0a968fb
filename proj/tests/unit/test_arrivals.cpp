#include <doctest.h>

#include <random>

#include "tnc/arrivals.hpp"
#include "tnc/errors.hpp"
#include "tnc/units.hpp"

using namespace tnc;

TEST_SUITE("arrivals") {

TEST_CASE("cumulative of a burst covers the whole horizon") {
  const auto burst = ArrivalProcess::burst(25.0);
  CHECK(burst.cumulative(0, 5) == doctest::Approx(25.0));
  CHECK(burst.cumulative(0, 1) == doctest::Approx(25.0));
  CHECK(burst.cumulative(1, 5) == doctest::Approx(0.0));
  CHECK(burst.cumulative(3, 3) == 0.0);
}

TEST_CASE("cumulative of a train is plain summation") {
  const auto train = ArrivalProcess::train(25.0, 5);
  CHECK(train.cumulative(1, 4) == doctest::Approx(75.0));
  CHECK(train.cumulative(0, 5) == doctest::Approx(125.0));
  CHECK(train.cumulative(0, 50) == doctest::Approx(125.0));  // frozen past T
  CHECK(train.cumulative(2, 2) == 0.0);
}

TEST_CASE("preconditions") {
  const auto train = ArrivalProcess::train(10.0, 3);
  CHECK_THROWS_AS(train.cumulative(4, 2), ArgumentError);
  CHECK_THROWS_AS(train.cumulative(-1, 2), ArgumentError);
  CHECK_THROWS_AS(ArrivalProcess({5.0, -1.0}), ArgumentError);
}

TEST_CASE("log_ratio uses the bits-to-log convention") {
  const auto burst = ArrivalProcess::burst(25.0);
  CHECK(burst.log_ratio(0, 1) == doctest::Approx(25.0 * kLnTwo).epsilon(1e-15));
  CHECK(burst.log_ratio(1, 1) == 0.0);
  const auto train = ArrivalProcess::train(25.0, 5);
  CHECK(train.log_ratio(2, 5) ==
        doctest::Approx(bits_to_log(train.cumulative(2, 5))).epsilon(1e-15));
}

TEST_CASE("cumulative is superadditive-exact across any split point") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> bits(0.0, 40.0);
  std::vector<double> inc;
  for (int i = 0; i < 9; ++i) inc.push_back(bits(gen));
  const ArrivalProcess p(inc);
  for (int u = 0; u <= 12; ++u) {
    for (int v = u; v <= 12; ++v) {
      for (int t = v; t <= 12; ++t) {
        CHECK(p.cumulative(u, t) ==
              doctest::Approx(p.cumulative(u, v) + p.cumulative(v, t))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("declared envelope is checked at construction") {
  // Burst of 20 bits fits (sigma=0, rho=20) exactly.
  CHECK_NOTHROW(ArrivalProcess::burst(20.0, Envelope{0.0, 20.0}));
  // A 25-bit burst violates it.
  CHECK_THROWS_AS(ArrivalProcess::burst(25.0, Envelope{0.0, 20.0}),
                  ArgumentError);
  CHECK_NOTHROW(ArrivalProcess::train(25.0, 5, Envelope{0.0, 25.0}));
  CHECK_THROWS_AS(ArrivalProcess::train(26.0, 5, Envelope{0.0, 25.0}),
                  ArgumentError);
  CHECK_THROWS_AS(ArrivalProcess::burst(1.0, Envelope{-1.0, 0.0}),
                  ArgumentError);
}

TEST_CASE("every on-horizon window satisfies a declared envelope") {
  const Envelope env{25.0, 10.0};
  const ArrivalProcess p({25.0, 10.0, 0.0, 10.0, 10.0}, env);
  for (int u = 0; u <= p.horizon(); ++u) {
    for (int t = u; t <= p.horizon(); ++t) {
      CHECK(p.cumulative(u, t) <=
            env.rho_bits_per_slot * (t - u) + env.sigma_bits + 1e-9);
    }
  }
}

TEST_CASE("composite with d = 0 and empty overhead is the plain process") {
  const auto msg = ArrivalProcess::train(25.0, 5);
  const CompositeArrival comp(ArrivalProcess{}, msg, 0);
  for (int u = 0; u <= 8; ++u) {
    for (int t = u; t <= 8; ++t) {
      CHECK(comp.cumulative(u, t) == doctest::Approx(msg.cumulative(u, t)));
    }
  }
}

TEST_CASE("composite sums overhead and message and freezes after T") {
  const CompositeArrival comp(ArrivalProcess::train(25.0, 2),
                              ArrivalProcess::train(25.0, 5), 2);
  CHECK(comp.cumulative(-2, 7) == doctest::Approx(175.0));
  CHECK(comp.cumulative(-2, 100) == doctest::Approx(175.0));  // frozen
  CHECK(comp.cumulative(-2, 0) == doctest::Approx(50.0));
  CHECK(comp.cumulative(-1, 3) == doctest::Approx(25.0 + 75.0));
  CHECK(comp.total_until(5) == doctest::Approx(175.0));
  CHECK_THROWS_AS(comp.cumulative(-3, 0), ArgumentError);
}

TEST_CASE("composite construction validates the overhead span") {
  CHECK_THROWS_AS(
      CompositeArrival(ArrivalProcess::train(25.0, 1),
                       ArrivalProcess::train(25.0, 5), 2),
      ArgumentError);
  CHECK_THROWS_AS(
      CompositeArrival(ArrivalProcess{}, ArrivalProcess::burst(1.0), -1),
      ArgumentError);
}

}  // TEST_SUITE
