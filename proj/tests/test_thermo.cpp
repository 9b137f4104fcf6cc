#include <cmath>
#include <numeric>

#include "doctest.h"
#include "wtf/models.hpp"
#include "wtf/thermo.hpp"

using namespace wtf;

namespace {

// Independent closed forms for two-branch affine systems with ratios r and
// scales lam: Moran sums solved by bisection.
double moran_root(double r0, double r1, double l0, double l1, double q) {
  double lo = -200.0, hi = 200.0;
  for (int k = 0; k < 300; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double f = std::pow(r0, mid) * std::pow(l0, q) + std::pow(r1, mid) * std::pow(l1, q) - 1.0;
    (f > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::io_error;
}

const double kLn2 = std::log(2.0);

}  // namespace

TEST_CASE("pressure examples") {
  const auto m1 = reference_model("M1");
  auto p = pressure(m1, {}, 5);
  CHECK(p.exact);
  CHECK(p.error_bound == 0.0);
  CHECK(p.value == doctest::Approx(0.6931472).epsilon(1e-7));

  const auto m2 = reference_model("M2");
  p = pressure(m2, {0, 1, 0}, 3);
  CHECK(p.exact);
  CHECK(std::abs(p.value - -0.1053605) <= 1e-7);

  const auto m5 = reference_model("M5");
  p = pressure(m5, {-1, 0, 0}, 14);
  CHECK_FALSE(p.exact);
  CHECK(p.depth == 14);
  CHECK(std::abs(p.value) <= 2e-3);
  CHECK(p.error_bound > 0.0);
  CHECK(p.error_bound < 0.01);

  CHECK(kind_of([&] { pressure(m5, {-1, 0, 0}, 30); }) == ErrorKind::budget_exceeded);
}

TEST_CASE("pressure of the topological entropy and raw partition sums") {
  // a = 0, b = 0: every level sum is l^m exactly, even on a nonlinear map
  const auto m5 = reference_model("M5");
  const CylinderTable t(m5, 10);
  for (int m = t.first_level(); m <= 10; ++m) {
    CHECK(t.log_partition({0, 0, 0}, m) == doctest::Approx(m * kLn2).epsilon(1e-13));
  }
  // partition sums of -log|tau'| are sums of cylinder lengths up to distortion
  for (int m = t.first_level(); m <= 10; ++m) {
    CHECK(std::abs(t.log_partition({-1, 0, 0}, m)) < 0.05);
  }
}

TEST_CASE("property: pressure shifts with the additive constant") {
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    PressureEvaluator eval(sys, ThermoOptions{.depth = 10});
    for (double c : {-3.0, 0.5, 2.0}) {
      for (PotentialSpec pot : {PotentialSpec{-1.0, 0.0, 0.0}, PotentialSpec{-0.3, 2.0, 0.1}}) {
        PotentialSpec shifted = pot;
        shifted.c += c;
        CHECK(std::abs(eval(shifted).value - (eval(pot).value + c)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("bowen roots") {
  PressureEvaluator m1(reference_model("M1"));
  CHECK(std::abs(bowen_root(m1, PotentialFamily::s1(), {1.0, 2.0}) - 1.4854268) <= 1e-6);
  CHECK(std::abs(bowen_root(m1, PotentialFamily::s2(), {1.0, 3.0}) - 1.9433575) <= 1e-6);
  CHECK(std::abs(bowen_root(m1, PotentialFamily::s1(), {1.0, 2.0}) - (2.0 + std::log(0.7) / kLn2)) <= 1e-12);
  CHECK(std::abs(bowen_root(m1, PotentialFamily::s2(), {1.0, 3.0}) - kLn2 / -std::log(0.7)) <= 1e-12);

  PressureEvaluator m2(reference_model("M2"));
  CHECK(std::abs(bowen_root(m2, PotentialFamily::s1(), {0.0, 2.0}) - 0.8996390) <= 1e-6);
  CHECK(std::abs(bowen_root(m2, PotentialFamily::s2(), {0.0, 2.0}) - 0.8680528) <= 1e-6);

  CHECK(kind_of([&] { bowen_root(m1, PotentialFamily::s1(), {1.6, 2.0}); }) == ErrorKind::no_sign_change);
  const PotentialFamily flat{{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  CHECK(kind_of([&] { bowen_root(m1, flat, {0.0, 1.0}); }) == ErrorKind::too_flat);
  CHECK(kind_of([&] { bowen_root(m1, PotentialFamily::s1(), {2.0, 1.0}); }) == ErrorKind::invalid_argument);

  // residual re-check
  const double s1 = bowen_root(m2, PotentialFamily::s1(), {0.0, 2.0});
  CHECK(std::abs(m2(PotentialFamily::s1().at(s1)).value) <= 1e-8);
}

TEST_CASE("graph dimension predictions") {
  auto p = graph_dimension_prediction(PressureEvaluator(reference_model("M1")));
  CHECK(std::abs(p.box_dim - 1.4854268) <= 1e-6);
  CHECK(p.min_is_s1);
  CHECK(p.hausdorff_upper == p.s1);

  p = graph_dimension_prediction(PressureEvaluator(reference_model("M2")));
  CHECK(std::abs(p.box_dim - 0.8996390) <= 1e-6);
  CHECK_FALSE(p.min_is_s1);
  CHECK(std::abs(p.hausdorff_upper - 0.8680528) <= 1e-6);

  p = graph_dimension_prediction(PressureEvaluator(reference_model("M4")));
  CHECK(std::abs(p.s1 - 1.1602518) <= 1e-6);
  CHECK(std::abs(p.s2 - 1.3205043) <= 1e-6);
  // D + 1 - alpha and D / alpha with D = dim J, alpha = 1/2
  const double d = kLn2 / std::log(1.0 / 0.35);
  CHECK(p.s1 == doctest::Approx(d + 0.5).epsilon(1e-12));
  CHECK(p.s2 == doctest::Approx(d / 0.5).epsilon(1e-12));

  // nonlinear: s1 lies strictly between the affine values for the extreme slopes
  p = graph_dimension_prediction(PressureEvaluator(reference_model("M5")));
  CHECK(p.s2 == doctest::Approx(kLn2 / -std::log(0.7)).epsilon(1e-12));
  CHECK(p.s1 > 2.0 + std::log(0.7) / std::log(2.0 - 0.1 * M_PI));
  CHECK(p.s1 < 2.0 + std::log(0.7) / std::log(2.0 + 0.1 * M_PI));
}

TEST_CASE("A_of_q") {
  PressureEvaluator m3(reference_model("M3"));
  CHECK(std::abs(A_of_q(m3, 0.0) - 0.7025) <= 1e-3);
  CHECK(std::abs(A_of_q(m3, 0.0) - moran_root(0.3, 0.45, 0.4, 0.7, 0.0)) <= 1e-10);

  PressureEvaluator m2(reference_model("M2"));
  for (double q : {-7.0, -1.0, 0.0, 2.5, 9.0}) {
    CHECK(A_of_q(m2, q) == doctest::Approx((kLn2 + q * std::log(0.45)) / std::log(1.0 / 0.35)).epsilon(1e-12));
  }
  PressureEvaluator m4(reference_model("M4"));
  CHECK(std::abs(A_of_q(m4, 2.0) - -0.3397479) <= 1e-6);
  CHECK(kind_of([&] { A_of_q(m4, 31.0); }) == ErrorKind::invalid_argument);
  CHECK_NOTHROW(A_of_q(m4, -30.0));
}

TEST_CASE("spectrum examples") {
  const auto grid = uniform_grid(-10.0, 10.0, 41);
  auto c = spectrum(PressureEvaluator(reference_model("M4")), grid);
  CHECK(c.degenerate_flag);
  CHECK(std::abs(c.alpha_c - 0.5) <= 1e-9);

  c = spectrum(PressureEvaluator(reference_model("M1")), grid);
  CHECK(c.degenerate_flag);
  CHECK(std::abs(c.alpha_c - 0.5145732) <= 1e-7);
  CHECK(std::abs(c.cohomology_residual_plus) <= 1e-10);
  CHECK(std::abs(c.cohomology_residual_minus) <= 1e-10);

  c = spectrum(PressureEvaluator(reference_model("M3")), grid);
  CHECK_FALSE(c.degenerate_flag);
  CHECK(c.exact_endpoints);
  CHECK(std::abs(c.alpha_min - 0.4466766) <= 1e-4);
  CHECK(std::abs(c.alpha_max - 0.7610569) <= 1e-4);
  CHECK(std::abs(c.alpha_c - 0.6137) <= 1e-3);
  CHECK(std::abs(c.a0 - 0.7025) <= 1e-3);
  CHECK(std::abs(c.cohomology_residual_plus) > 1e-3);
  // implicit derivative at q = 0
  const double a0 = moran_root(0.3, 0.45, 0.4, 0.7, 0.0);
  const double p0 = std::pow(0.3, a0), p1 = std::pow(0.45, a0);
  const double ac = (p0 * -std::log(0.4) + p1 * -std::log(0.7)) / (p0 * std::log(1 / 0.3) + p1 * std::log(1 / 0.45));
  CHECK(std::abs(c.alpha_c - ac) <= 1e-9);

  CHECK_THROWS_AS(spectrum(PressureEvaluator(reference_model("M3")), {1.0, 0.0}), Error);
}

TEST_CASE("property: spectrum curve invariants") {
  const auto grid = uniform_grid(-10.0, 10.0, 81);
  for (const char* id : {"M2", "M3", "M5"}) {
    PressureEvaluator eval(reference_model(id), ThermoOptions{.depth = 12});
    const auto c = spectrum(eval, grid);
    const auto& s = c.samples;
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s[k].d == doctest::Approx(s[k].q * s[k].alpha + s[k].a_q).epsilon(1e-12));
      CHECK(s[k].alpha >= c.alpha_min - 1e-6);
      CHECK(s[k].alpha <= c.alpha_max + 1e-6);
      if (k > 0) CHECK(s[k].alpha <= s[k - 1].alpha + 1e-6);
      if (k > 0 && k + 1 < s.size()) CHECK(s[k + 1].a_q - 2 * s[k].a_q + s[k - 1].a_q >= -1e-6);
      // Legendre: D(alpha(q)) = inf over q' of (q' alpha + A_q')
      double inf = 1e300;
      for (const auto& o : s) inf = std::min(inf, o.q * s[k].alpha + o.a_q);
      CHECK(std::abs(s[k].d - inf) <= 1e-4);
    }
    // concavity of D as a function of alpha: slopes between samples (ordered
    // by increasing alpha) must decrease
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
      const double da0 = s[k - 1].alpha - s[k].alpha;
      const double da1 = s[k].alpha - s[k + 1].alpha;
      if (da0 < 1e-9 || da1 < 1e-9) continue;
      const double slope_hi = (s[k - 1].d - s[k].d) / da0;
      const double slope_lo = (s[k].d - s[k + 1].d) / da1;
      CHECK(slope_hi - slope_lo <= 1e-6);
    }
    CHECK(c.a0 <= 1.0 + 1e-9);
  }
}

TEST_CASE("property: oracle equivalence on affine branch-constant models") {
  for (const char* id : {"M1", "M2", "M3", "M4"}) {
    const auto sys = reference_model(id);
    PressureEvaluator eval(sys);
    const MoranOracle oracle(sys);
    CHECK(std::abs(graph_dimension_prediction(eval).s1 - oracle.s1()) <= 1e-6);
    CHECK(std::abs(graph_dimension_prediction(eval).s2 - oracle.s2()) <= 1e-6);
    for (int q = -10; q <= 10; ++q) {
      CHECK(std::abs(A_of_q(eval, q) - oracle.A_of_q(q)) <= 1e-6);
      CHECK(std::abs(alpha_of_q(eval, q) - oracle.alpha_of_q(q)) <= 1e-6);
      const PotentialSpec pot{-0.4, static_cast<double>(q), 0.2};
      CHECK(std::abs(eval(pot).value - oracle.pressure(pot)) <= 1e-6);
    }
  }
}

TEST_CASE("moran oracle") {
  const MoranOracle m2(reference_model("M2"));
  CHECK(std::abs(m2.s1() - 0.8996390) <= 1e-6);
  const MoranOracle m3(reference_model("M3"));
  CHECK(std::abs(m3.A_of_q(0.0) - 0.7023802) <= 1e-6);
  CHECK(std::abs(m3.A_of_q(0.0) - moran_root(0.3, 0.45, 0.4, 0.7, 0.0)) <= 1e-11);
  CHECK(std::abs(m3.alpha_min() - 0.4466769) <= 1e-6);
  CHECK(std::abs(m3.alpha_max() - 0.7610560) <= 1e-6);
  const MoranOracle m1(reference_model("M1"));
  CHECK(m1.pressure({}) == doctest::Approx(kLn2));
  CHECK(kind_of([] { MoranOracle(reference_model("M5")); }) == ErrorKind::not_branch_constant);
}

TEST_CASE("gibbs weights") {
  PressureEvaluator m3(reference_model("M3"));
  const double a0 = A_of_q(m3, 0.0);
  const auto phi0 = spectrum_potential(0.0, a0);
  auto w = gibbs_weights(m3, phi0, 1);
  REQUIRE(w.size() == 2);
  CHECK(std::abs(w[0] - 0.4292) <= 1e-3);
  CHECK(std::abs(w[1] - 0.5707) <= 1e-3);
  CHECK(std::abs(w[0] + w[1] - 1.0) <= 1e-12);
  const auto w2 = gibbs_weights(m3, phi0, 2);
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(w2[j] - w[j / 2] * w[j % 2]) <= 1e-12);

  PressureEvaluator m1(reference_model("M1"));
  const double s1 = graph_dimension_prediction(m1).s1;
  w = gibbs_weights(m1, PotentialFamily::s1().at(s1), 1);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(kind_of([&] { gibbs_weights(m1, PotentialSpec{}, 1); }) == ErrorKind::not_normalised);

  PressureEvaluator m5(reference_model("M5"));
  const auto leb = normalised(m5, {-1, 0, 0});
  w = gibbs_weights(m5, leb, 6);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gibbs sampling") {
  PressureEvaluator m3(reference_model("M3"));
  const auto phi0 = spectrum_potential(0.0, A_of_q(m3, 0.0));
  const auto s = gibbs_sample(m3, phi0, 50, 100000, 2024);
  std::size_t zeros = 0, total = 0;
  for (const auto& p : s) {
    for (Digit d : p.word.digits()) zeros += d == 0;
    total += p.word.size();
  }
  CHECK(std::abs(static_cast<double>(zeros) / total - 0.4292) <= 0.005);
  const auto again = gibbs_sample(m3, phi0, 50, 1000, 2024);
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].word == s[i].word);
    CHECK(again[i].x == s[i].x);
    CHECK(cylinder_of(m3.system(), again[i].word.prefix(20)).interval.contains(again[i].x));
  }

  PressureEvaluator m1(reference_model("M1"));
  const auto pot = PotentialFamily::s1().at(graph_dimension_prediction(m1).s1);
  const auto u = gibbs_sample(m1, pot, 40, 20000, 5);
  zeros = 0;
  for (const auto& p : u) {
    for (Digit d : p.word.digits()) zeros += d == 0;
  }
  CHECK(std::abs(zeros / (40.0 * 20000) - 0.5) <= 0.005);

  // block-Markov path: M5 Lebesgue-like measure, digits symmetric by x -> 1 - x
  PressureEvaluator m5(reference_model("M5"), ThermoOptions{.depth = 10});
  const auto leb = normalised(m5, {-1, 0, 0});
  const auto v = gibbs_sample(m5, leb, 30, 5000, 9);
  zeros = 0;
  for (const auto& p : v) {
    for (Digit d : p.word.digits()) zeros += d == 0;
  }
  CHECK(std::abs(zeros / (30.0 * 5000) - 0.5) <= 0.01);
  const auto v2 = gibbs_sample(m5, leb, 30, 100, 9);
  for (std::size_t i = 0; i < v2.size(); ++i) CHECK(v2[i].word == v[i].word);
}

TEST_CASE("measure stats") {
  PressureEvaluator m1(reference_model("M1"));
  const double s1 = graph_dimension_prediction(m1).s1;
  auto st = measure_stats(m1, PotentialFamily::s1().at(s1), 10);
  CHECK(st.exact);
  CHECK(st.entropy == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(st.lyapunov == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(st.dim == doctest::Approx(1.0).epsilon(1e-12));

  PressureEvaluator m3(reference_model("M3"));
  const double a0 = A_of_q(m3, 0.0);
  st = measure_stats(m3, spectrum_potential(0.0, a0), 10);
  CHECK(std::abs(st.entropy - 0.6831) <= 1e-3);
  CHECK(std::abs(st.lyapunov - 0.9725) <= 1e-3);
  CHECK(std::abs(st.dim - a0) <= 1e-10);
  CHECK(std::abs(st.alpha - 0.6137) <= 1e-3);

  PressureEvaluator m2(reference_model("M2"));
  const double s2 = graph_dimension_prediction(m2).s2;
  st = measure_stats(m2, PotentialFamily::s2().at(s2), 10);
  CHECK(std::abs(st.dim - 0.6602521) <= 1e-6);
  CHECK(std::abs(st.alpha - 0.7606134) <= 1e-5);
  // s2 h-identity: s2 * (-int log lambda) = h
  CHECK(std::abs(s2 * -st.mean_log_lambda - st.entropy) <= 1e-6);

  // nonlinear path: Lebesgue-like measure on M5 has dimension close to 1
  PressureEvaluator m5(reference_model("M5"), ThermoOptions{.depth = 12});
  st = measure_stats(m5, normalised(m5, {-1, 0, 0}), 12);
  CHECK_FALSE(st.exact);
  CHECK(st.entropy <= kLn2 + 1e-12);
  CHECK(std::abs(st.dim - 1.0) <= 0.02);
}

TEST_CASE("property: identity chain and entropy cap") {
  PressureEvaluator m3(reference_model("M3"));
  for (double q : uniform_grid(-6.0, 6.0, 13)) {
    const double a = A_of_q(m3, q);
    const double alpha = alpha_of_q(m3, q);
    const auto st = measure_stats(m3, spectrum_potential(q, a), 8);
    CHECK(std::abs(st.dim - (q * alpha + a)) <= 2e-3);
    CHECK(std::abs(st.alpha - alpha) <= 1e-3);
    CHECK(st.entropy <= kLn2 + 1e-12);
    CHECK(st.dim >= 0.0);
    CHECK(st.dim <= 1.0);
    // the lifted predictor equals jin_upper at (D(alpha), alpha)
    CHECK(std::abs(lifted_dim_prediction(st) - jin_upper(st.dim, st.alpha)) <= 1e-6);
  }
}

TEST_CASE("lifted predictor and jin_upper") {
  PressureEvaluator m1(reference_model("M1"));
  const auto pm1 = graph_dimension_prediction(m1);
  auto st = measure_stats(m1, PotentialFamily::s1().at(pm1.s1), 5);
  CHECK(std::abs(lifted_dim_prediction(st) - 1.4854268) <= 1e-6);

  PressureEvaluator m2(reference_model("M2"));
  const auto pm2 = graph_dimension_prediction(m2);
  st = measure_stats(m2, PotentialFamily::s2().at(pm2.s2), 5);
  CHECK(std::abs(lifted_dim_prediction(st) - 0.8680528) <= 1e-6);
  CHECK(std::abs(st.dim + 1.0 + st.mean_log_lambda / st.lyapunov - pm2.s1) <= 1e-9);

  CHECK(std::abs(jin_upper(0.7025, 0.6137) - 1.0888) <= 2e-3);
  CHECK(jin_upper(0.4, 0.4) == doctest::Approx(1.0));
  const double d = kLn2 / std::log(1.0 / 0.35);
  CHECK(std::abs(jin_upper(d, 0.5) - 1.1602521) <= 1e-6);
  CHECK_THROWS_AS(jin_upper(0.5, 0.0), Error);
}
