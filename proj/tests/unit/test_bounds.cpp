#include <doctest.h>

#include <cmath>
#include <memory>

#include "oracles.hpp"
#include "tnc/bounds.hpp"
#include "tnc/errors.hpp"
#include "tnc/log_util.hpp"
#include "tnc/units.hpp"

using namespace tnc;

namespace {

Scenario make_scenario(int hops, std::shared_ptr<const ChannelModel> ch,
                       std::vector<double> x, ArrivalProcess arr, int t, int w) {
  Scenario sc;
  sc.hops = hops;
  sc.channel = std::move(ch);
  sc.backlog_bits = std::move(x);
  sc.arrivals = std::move(arr);
  sc.eval_time = t;
  sc.target_delay = w;
  return sc;
}

std::shared_ptr<const RayleighChannel> rayleigh(double snr_db) {
  return std::make_shared<RayleighChannel>(
      RayleighChannel::from_db(snr_db, 20.0));
}

Scenario two_hop_train(double snr_db, int w) {
  return make_scenario(2, rayleigh(snr_db), {50.0, 50.0},
                       ArrivalProcess::train(25.0, 5, Envelope{0.0, 25.0}), 5,
                       w);
}

// |log difference| with a relative allowance.
void check_log_close(double got, double expect, double tol) {
  CHECK(std::abs(got - expect) <= tol * std::max(1.0, std::abs(expect)));
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("N = 1 collapses the N-hop kernel to the single-hop expression") {
  const auto sc = make_scenario(1, rayleigh(5.0), {100.0},
                                ArrivalProcess::train(25.0, 5), 5, 10);
  for (double s = 1e-4; s < 5.0; s *= 2.1) {
    check_log_close(kernel_wtb(sc, s), kernel_wtb_single(sc, s), 1e-12);
  }
}

TEST_CASE("degenerate hand case: V = 1, no arrivals, no backlog") {
  const auto sc =
      make_scenario(2, std::make_shared<ConstantChannel>(0.0), {0.0, 0.0},
                    ArrivalProcess({0.0}), 3, 2);
  // Every factor is 1, so Phi counts its terms: binom(5,4)*2 + 1 + 5 = 16.
  const long double oracle = oracles::enum_phi(
      2, 3, 2, [](int) -> long double { return 0.0L; }, {0.0, 0.0}, 1.0L, 0.37L);
  CHECK(static_cast<double>(oracle) == doctest::Approx(16.0));
  for (double s : {0.05, 0.37, 2.0}) {
    CHECK(std::exp(kernel_wtb(sc, s)) == doctest::Approx(16.0).epsilon(1e-12));
  }
}

TEST_CASE("two-hop kernel matches the term-enumeration oracle") {
  const auto sc = two_hop_train(5.0, 10);
  const auto arr = ArrivalProcess::train(25.0, 5);
  auto A = [&](int k) -> long double { return arr.cumulative(0, k); };
  for (double s : {0.01, 0.05, 0.2, 1.0}) {
    const long double V = std::exp(static_cast<long double>(sc.channel->ln_v(s)));
    const long double oracle = oracles::enum_phi(2, 5, 10, A, {50.0, 50.0}, V, s);
    check_log_close(kernel_wtb(sc, s), static_cast<double>(std::log(oracle)),
                    1e-10);
  }
}

TEST_CASE("single-hop burst reduces to one closed-form term") {
  const auto sc = make_scenario(1, rayleigh(5.0), {0.0},
                                ArrivalProcess::burst(25.0), 1, 3);
  const double s = 0.1;
  const double expect = s * 25.0 * kLnTwo + 4.0 * sc.channel->ln_v(s);
  CHECK(kernel_wtb_single(sc, s) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(kernel_wtb(sc, s) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("empty system: the infimum over s runs away to zero") {
  const auto sc = make_scenario(1, rayleigh(5.0), {0.0},
                                ArrivalProcess({0.0}), 1, 2);
  const BoundResult r = bound(sc, BoundFamily::wtb);
  CHECK(r.at_boundary);            // monotone decreasing in s
  CHECK(r.probability < 1e-6);     // ln V < 0 drives it down
}

TEST_CASE("sotat kernel matches its direct sum and enforces s < 1") {
  const auto sc = two_hop_train(10.0, 12);
  const auto arr = ArrivalProcess::train(25.0, 5);
  auto A = [&](int k) -> long double { return arr.cumulative(0, k); };
  for (double s : {0.01, 0.2, 0.8}) {
    const long double V = std::exp(static_cast<long double>(sc.channel->ln_v(s)));
    const long double oracle = oracles::enum_sotat(2, 5, 12, A, 50.0, V, s);
    check_log_close(kernel_sotat(sc, s), static_cast<double>(std::log(oracle)),
                    1e-10);
  }
  CHECK_THROWS_AS(kernel_sotat(sc, 1.0), ArgumentError);
  CHECK_THROWS_AS(kernel_sotat(sc, -0.2), ArgumentError);
}

TEST_CASE("sotat at t = 0 is the single u = 0 term") {
  const auto sc = make_scenario(1, rayleigh(5.0), {40.0},
                                ArrivalProcess::burst(25.0), 0, 6);
  const double s = 0.3;
  const double expect = s * bits_to_log(40.0) + 6.0 * sc.channel->ln_v(s);
  CHECK(kernel_sotat(sc, s) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("corollary closed form matches the enveloped sotat sum") {
  const auto sc = make_scenario(1, rayleigh(5.0), {100.0},
                                ArrivalProcess::train(25.0, 5, Envelope{0.0, 25.0}),
                                5, 10);
  for (double s : {0.01, 0.05, 0.2, 0.9}) {
    const long double V = std::exp(static_cast<long double>(sc.channel->ln_v(s)));
    const long double oracle =
        oracles::enum_sotat_envelope(5, 10, 0.0, 25.0, 100.0, V, s);
    check_log_close(kernel_sotat_sigma_rho(sc, s),
                    static_cast<double>(std::log(oracle)), 1e-10);
  }
}

TEST_CASE("enveloped N-hop closed form: oracle match and domination") {
  const auto sc = two_hop_train(10.0, 10);
  for (double s : {0.01, 0.05, 0.2, 1.5}) {
    const long double V = std::exp(static_cast<long double>(sc.channel->ln_v(s)));
    const long double oracle =
        oracles::enum_phi_envelope(2, 5, 10, 0.0, 25.0, {50.0, 50.0}, V, s);
    check_log_close(kernel_wtb_sigma_rho(sc, s),
                    static_cast<double>(std::log(oracle)), 1e-10);
    // The envelope dominates the exact ratios pointwise.
    CHECK(kernel_wtb_sigma_rho(sc, s) >= kernel_wtb(sc, s) - 1e-12);
  }
}

TEST_CASE("enveloped closed form at t = 1 keeps only the backlog terms") {
  const auto sc = make_scenario(2, rayleigh(5.0), {30.0, 20.0},
                                ArrivalProcess::burst(25.0, Envelope{25.0, 0.0}),
                                1, 4);
  const double s = 0.2;
  const int tau = 5;
  LogSumExp expect;
  expect.add(log_binomial(tau - 1, tau - 1) + s * bits_to_log(50.0));
  expect.add(log_binomial(tau, tau - 1) + s * bits_to_log(30.0));
  const double want = tau * sc.channel->ln_v(s) + s * bits_to_log(25.0) +
                      expect.value();
  CHECK(kernel_wtb_sigma_rho(sc, s) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("enveloped closed form handles V0 = 1 exactly") {
  // Constant rate equal to the envelope rate makes V0 = 1 for every s.
  const auto sc = make_scenario(1, std::make_shared<ConstantChannel>(25.0),
                                {10.0},
                                ArrivalProcess::train(25.0, 5, Envelope{0.0, 25.0}),
                                5, 3);
  for (double s : {0.05, 0.4, 3.0}) {
    const long double V = std::exp(static_cast<long double>(sc.channel->ln_v(s)));
    const long double oracle =
        oracles::enum_phi_envelope(1, 5, 3, 0.0, 25.0, {10.0}, V, s);
    check_log_close(kernel_wtb_sigma_rho(sc, s),
                    static_cast<double>(std::log(oracle)), 1e-10);
  }
}

TEST_CASE("stationary bound: instability degenerates to probability 1") {
  const auto sc = make_scenario(1, rayleigh(5.0), {0.0},
                                ArrivalProcess::train(40.0, 5, Envelope{0.0, 40.0}),
                                5, 10);
  // rho = 40 > mean capacity (~34.3): no s with V0(s) < 1.
  const BoundResult r = bound(sc, BoundFamily::stationary);
  CHECK(r.probability == 1.0);
  CHECK_FALSE(r.feasible);
}

TEST_CASE("stationary bound reproduces the reference curve shape") {
  const auto sc = make_scenario(1, rayleigh(5.0), {0.0},
                                ArrivalProcess::burst(20.0, Envelope{0.0, 20.0}),
                                1, 0);
  double prev = bound(sc, BoundFamily::stationary).probability;
  CHECK(prev == doctest::Approx(1.0));  // near 1 at w = 0
  for (int w : {2, 5, 10, 20}) {
    const double p = bound(sc.with_delay(w), BoundFamily::stationary).probability;
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("delayed kernel with d = 0 and empty overhead equals the plain one") {
  const auto sc = two_hop_train(10.0, 8);
  for (double s : {0.01, 0.3, 2.0}) {
    CHECK(std::abs(kernel_wtb_delayed(sc, s) - kernel_wtb(sc, s)) <= 1e-14);
  }
}

TEST_CASE("delayed kernel matches the Eq.-15 enumeration oracle") {
  Scenario sc = make_scenario(3, rayleigh(5.0), {33.0, 33.0, 33.0},
                              ArrivalProcess::train(25.0, 5), 5, 10);
  sc.info_delay = 2;
  sc.overhead = ArrivalProcess::train(25.0, 2);
  const CompositeArrival comp = sc.composite();
  auto Ap = [&](int k) -> long double { return comp.cumulative(-2, k); };
  for (double s : {0.05, 0.3, 1.1}) {
    const long double V = std::exp(static_cast<long double>(sc.channel->ln_v(s)));
    const long double oracle =
        oracles::enum_phi_delayed(3, 5, 10, 2, Ap, {33.0, 33.0, 33.0}, V, s);
    check_log_close(kernel_wtb_delayed(sc, s),
                    static_cast<double>(std::log(oracle)), 1e-10);
  }
}

TEST_CASE("delayed bound is non-decreasing in the information delay") {
  double prev = 0.0;
  for (int d = 0; d <= 3; ++d) {
    Scenario sc = make_scenario(3, rayleigh(5.0), {33.0, 33.0, 33.0},
                                ArrivalProcess::train(25.0, 5), 5, 10);
    sc.info_delay = d;
    sc.overhead = ArrivalProcess::train(25.0, d);
    const double p = bound(sc, BoundFamily::wtb_delayed).probability;
    if (d > 0) CHECK(p >= prev - 1e-15);
    prev = p;
  }
}

TEST_CASE("backlog bound basics") {
  const Scenario sc = two_hop_train(5.0, 7);  // w is ignored for backlog
  const BoundResult at0 = bound_backlog(sc, 0.0);
  const BoundResult phi0 = bound(sc.with_delay(0), BoundFamily::wtb);
  CHECK(at0.probability == doctest::Approx(phi0.probability).epsilon(1e-9));
  double prev = at0.probability;
  for (double x : {100.0, 200.0, 400.0}) {
    const double p = bound_backlog(sc, x).probability;
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
  CHECK(bound_backlog(sc, 4000.0).probability < 1e-12);
  CHECK_THROWS_AS(bound_backlog(sc, -1.0), ArgumentError);
}

TEST_CASE("bound dispatch: monotone in w and ordered across families") {
  const auto families = {BoundFamily::wtb, BoundFamily::sotat,
                         BoundFamily::stationary};
  for (BoundFamily f : families) {
    double prev = 2.0;
    for (int w : {0, 4, 8, 16}) {
      const double p = bound(two_hop_train(10.0, w), f).probability;
      CHECK(p <= prev + 1e-15);
      prev = p;
    }
  }
  for (int w : {6, 12, 20}) {
    const Scenario sc = two_hop_train(10.0, w);
    const double pw = bound(sc, BoundFamily::wtb).raw_log_value;
    const double ps = bound(sc, BoundFamily::sotat).raw_log_value;
    const double pst = bound(sc, BoundFamily::stationary).raw_log_value;
    CHECK(pw <= ps + 1e-12);
    CHECK(ps <= pst + 1e-12);
  }
}

TEST_CASE("minimized bound never decreases when any backlog grows") {
  const Scenario base = two_hop_train(10.0, 10);
  const double p0 = bound(base, BoundFamily::wtb).probability;
  for (int n = 0; n < 2; ++n) {
    auto x = base.backlog_bits;
    x[n] += 50.0;
    const double p = bound(base.with_backlog(x), BoundFamily::wtb).probability;
    CHECK(p >= p0 - 1e-15);
  }
}

TEST_CASE("nested-sum counting identity") {
  for (int depth = 0; depth <= 6; ++depth) {
    for (int tau = 1; tau <= 8; ++tau) {
      CHECK(oracles::nested_sum_count(depth, tau) ==
            oracles::binom_ull(depth + tau - 1, tau - 1));
    }
  }
}

TEST_CASE("kernels stay finite on the stress grid") {
  for (int hops : {1, 3, 5}) {
    for (int w : {50, 195}) {
      std::vector<double> x(hops, 150.0);
      Scenario sc = make_scenario(hops, rayleigh(5.0), x,
                                  ArrivalProcess::train(25.0, 5, Envelope{0.0, 25.0}),
                                  5, w);
      for (double s : {1e-5, 0.5, 4.9}) {
        CHECK(std::isfinite(kernel_wtb(sc, s)));
        CHECK(std::isfinite(kernel_wtb_sigma_rho(sc, s)));
        if (s < 1.0) CHECK(std::isfinite(kernel_sotat(sc, s)));
      }
      sc.info_delay = 3;
      sc.overhead = ArrivalProcess::train(25.0, 3);
      for (double s : {1e-5, 0.5, 4.9}) {
        CHECK(std::isfinite(kernel_wtb_delayed(sc, s)));
      }
    }
  }
}

TEST_CASE("kernel preconditions reject bad setups") {
  const Scenario sc = two_hop_train(10.0, 5);
  CHECK_THROWS_AS(kernel_wtb(sc, 0.0), ArgumentError);
  CHECK_THROWS_AS(kernel_wtb_single(sc, 0.1), ArgumentError);  // N = 2
  Scenario delayed = sc;
  delayed.info_delay = 1;
  delayed.overhead = ArrivalProcess::train(25.0, 1);
  CHECK_THROWS_AS(kernel_wtb(delayed, 0.1), ArgumentError);
  CHECK_THROWS_AS(kernel_sotat(delayed, 0.1), ArgumentError);
  const auto no_env = make_scenario(1, rayleigh(5.0), {0.0},
                                    ArrivalProcess::burst(25.0), 1, 3);
  CHECK_THROWS_AS(kernel_wtb_sigma_rho(no_env, 0.1), ArgumentError);
  CHECK_THROWS_AS(bound(no_env, BoundFamily::stationary), ArgumentError);
  Scenario bad = sc;
  bad.backlog_bits = {1.0};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

}  // TEST_SUITE
