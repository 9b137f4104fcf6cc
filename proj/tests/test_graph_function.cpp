#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "doctest.h"
#include "wtf/graph_function.hpp"
#include "wtf/models.hpp"

using namespace wtf;

namespace {

SystemSpec zero_forcing(const char* id) {
  auto s = reference_spec(id);
  s.forcing = Forcing::zero();
  return s;
}

SymbolWord random_word(std::uint64_t seed, int n) {
  SplitMix64 rng(seed);
  std::vector<Digit> d(static_cast<std::size_t>(n));
  for (auto& v : d) v = static_cast<Digit>(rng.below(2));
  return SymbolWord(d);
}

}  // namespace

TEST_CASE("theta sequences") {
  const auto a = ThetaSequence::iid_uniform(42);
  const auto b = ThetaSequence::iid_uniform(42);
  for (std::size_t n = 0; n < 100; ++n) {
    CHECK(a.at(n) == b.at(n));
    CHECK(a.at(n) >= 0.0);
    CHECK(a.at(n) < 1.0);
    CHECK(a.shifted(7).at(n) == a.at(n + 7));
    CHECK(a.shifted(3).shifted(4).at(n) == a.at(n + 7));
  }
  CHECK(ThetaSequence::iid_uniform(43).at(0) != a.at(0));
  CHECK(ThetaSequence::zeros().at(5) == 0.0);
}

TEST_CASE("forcing difference matches direct evaluation") {
  const auto g = Forcing::trig({0.3, 1.0, -0.5}, {0.0, 0.2, 0.7});
  for (double a : {0.0, 0.1, 0.37, 0.9}) {
    for (double d : {0.3, 1e-3}) {
      CHECK(g.difference(a, d) == doctest::Approx(g.value(a + d) - g.value(a)).epsilon(1e-9));
    }
    CHECK(g.difference(a, 1e-20) == doctest::Approx(g.derivative(a) * 1e-20).epsilon(1e-9));
  }
  CHECK(g.sup_abs() == doctest::Approx(2.7));
}

TEST_CASE("eval_W examples") {
  const auto m1 = reference_model("M1");
  const auto z = ThetaSequence::zeros();
  const auto r0 = eval_W(m1, 0.0, z, 1e-10);
  CHECK(std::abs(r0.value - 10.0 / 3.0) <= 1e-10);
  CHECK(r0.tail_bound <= 1e-10);
  // period-2 orbit {1/3, 2/3}; the double nearest 1/3 shadows it for ~50 steps
  CHECK(std::abs(eval_W(m1, 1.0 / 3.0, z, 1e-12).value + 5.0 / 3.0) <= 1e-6);
  const auto r = eval_W(m1, 0.123, z, 1e-12);
  CHECK(r.terms_used == 81);
  CHECK(r.tail_bound <= 1e-12);
  CHECK(std::pow(0.7, 80) / 0.3 > 1e-12);
  CHECK_THROWS_AS(eval_W(m1, 0.1, z, 0.0), Error);
  CHECK_THROWS_AS(eval_W(m1, 0.1, z, -1.0), Error);
}

TEST_CASE("eval_W functional equation") {
  // W_theta(x) = g(x + theta_0) + lambda(x) W_{sigma theta}(tau x)
  const auto theta = ThetaSequence::iid_uniform(3);
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    for (double x : {0.05, 0.31, 0.62, 0.97}) {
      const double lhs = eval_W(sys, x, theta, 1e-13).value;
      const double rhs = sys.g(x + theta.at(0)) +
                         sys.lambda(x) * eval_W(sys, sys.tau(x), theta.shifted(1), 1e-13).value;
      CHECK(std::abs(lhs - rhs) <= 1e-11);
    }
  }
}

TEST_CASE("eval_W_skew examples") {
  const auto m1 = reference_model("M1");
  const auto z = ThetaSequence::zeros();
  const double tol = 1e-12;
  CHECK(std::abs(eval_W_skew(m1, 1.0 / 3.0, z, 10, tol) - eval_W(m1, 1.0 / 3.0, z, tol).value) <= 1e-10);
  const auto seeded = ThetaSequence::iid_uniform(42);
  CHECK(std::abs(eval_W_skew(m1, 0.3, seeded, 8, tol) - eval_W(m1, 0.3, seeded, tol).value) <= 1e-10);
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    CHECK(eval_W_skew(sys, 0.2, seeded, 0, tol) == eval_W(sys, 0.2, seeded, tol).value);
  }
  CHECK_THROWS_AS(eval_W_skew(reference_model("M2"), 0.5, z, 3, tol), Error);
}

TEST_CASE("property: skew-product invariance") {
  const double tol = 1e-12;
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    for (int s = 0; s < 20; ++s) {
      const auto w = random_word(hash_key(17, s), 24);
      const double x = representative(sys, w, 0.5);
      const auto theta = s % 2 ? ThetaSequence::iid_uniform(s) : ThetaSequence::zeros();
      const double direct = eval_W(sys, x, theta, tol).value;
      for (int n : {1, 5, 12, 20}) CHECK(std::abs(eval_W_skew(sys, x, theta, n, tol) - direct) <= 10 * tol);
    }
  }
}

TEST_CASE("property: truncation soundness") {
  const auto m3 = reference_model("M3");
  SplitMix64 rng(123);
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform();
    const auto theta = ThetaSequence::iid_uniform(rng());
    const auto coarse = eval_W(m3, x, theta, 1e-6);
    const auto fine = eval_W(m3, x, theta, 1e-9);
    CHECK(std::abs(coarse.value - fine.value) < coarse.tail_bound);
  }
}

TEST_CASE("oscillation examples") {
  const auto z = ThetaSequence::zeros();
  const auto flat = validate_system(zero_forcing("M1"));
  CHECK(oscillation_over(flat, {0, 1, 1}, z, 64, 1e-12).osc == 0.0);

  const auto m1 = reference_model("M1");
  double lo = 1e300, hi = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const auto w = code_of(m1, 1.0 / 3.0, n);
    const double r = oscillation_over(m1, w, z, 256, 1e-12).osc / std::pow(0.7, n);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo > 1.0);
  CHECK(hi < 16.0);

  const auto m2 = reference_model("M2");
  const auto o = oscillation_over(m2, {0}, z, 256, 1e-12);
  CHECK(o.osc > 0.0);
  CHECK(o.probes == 256);
  CHECK_THROWS_AS(oscillation_over(m2, {0}, z, 1, 1e-12), Error);
}

TEST_CASE("oscillation agrees with direct evaluation at shallow depth") {
  const auto theta = ThetaSequence::iid_uniform(8);
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    const SymbolWord w{1, 0, 1};
    double lo = 1e300, hi = -1e300;
    for (std::size_t j = 0; j < 64; ++j) {
      const double t = representative(sys, word_from_index(j, 6, 2), 0.5);
      const double v = eval_W(sys, representative(sys, w, t), theta, 1e-13).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    // forward orbits of doubles only resolve W to about |x ulp|^alpha
    CHECK(oscillation_over(sys, w, theta, 64, 1e-13).osc == doctest::Approx(hi - lo).epsilon(1e-6));
  }
}

TEST_CASE("property: oscillation band over lambda^n") {
  // [c_hat, C_hat] fitted once per model over zeros and three seeds, n <= 16
  const std::map<std::string, std::pair<double, double>> band{
      {"M1", {1.0, 16.0}}, {"M2", {0.5, 18.0}}, {"M3", {0.7, 14.0}}};
  for (const auto& [id, b] : band) {
    const auto sys = reference_model(id);
    for (int th = 0; th < 4; ++th) {
      const auto theta = th == 0 ? ThetaSequence::zeros() : ThetaSequence::iid_uniform(200 + th);
      for (int p = 0; p < 10; ++p) {
        const auto w = random_word(hash_key(41, p), 16);
        for (int n = 1; n <= 16; ++n) {
          const auto head = w.prefix(static_cast<std::size_t>(n));
          const double osc = oscillation_over(sys, head, theta, 64, 1e-12).osc;
          const double r = osc * std::exp(-birkhoff_sum_word(sys, Observable::log_lambda, head));
          CHECK(r >= b.first);
          CHECK(r <= b.second);
        }
      }
    }
  }
}

TEST_CASE("property: Hoelder continuity on the repeller") {
  // K fitted once per model on a separate sample; exponent alpha_min - 0.02.
  // Pairs share a random-length prefix, so both points lie on the repeller.
  const std::map<std::string, std::pair<double, double>> spec{
      {"M1", {0.5145732, 16.0}}, {"M2", {0.7606124, 18.0}}, {"M3", {0.4466769, 10.0}},
      {"M4", {0.5, 11.0}},       {"M5", {0.4710, 14.0}}};
  for (const auto& [id, s] : spec) {
    const auto sys = reference_model(id);
    for (int th = 0; th < 3; ++th) {
      const auto theta = th == 0 ? ThetaSequence::zeros() : ThetaSequence::iid_uniform(50 + th);
      SplitMix64 rng(hash_key(77, th));
      for (int k = 0; k < 300; ++k) {
        std::vector<Digit> a(40), b(40);
        for (auto& v : a) v = static_cast<Digit>(rng.below(2));
        for (auto& v : b) v = static_cast<Digit>(rng.below(2));
        const auto m = rng.below(30);
        for (std::size_t j = 0; j < m; ++j) b[j] = a[j];
        const double x = representative(sys, SymbolWord(a));
        const double u = representative(sys, SymbolWord(b));
        const double dw = std::abs(eval_W(sys, x, theta, 1e-13).value - eval_W(sys, u, theta, 1e-13).value);
        CHECK(dw <= s.second * std::pow(torus_distance(x, u), s.first - 0.02));
      }
    }
  }
}

TEST_CASE("property: smoothness off the repeller") {
  const auto m2 = reference_model("M2");
  const auto theta = ThetaSequence::iid_uniform(9);
  for (int k = 0; k < 100; ++k) {
    const double x = 0.36 + 0.28 * (k + 0.5) / 100.0;
    auto dq = [&](double h) {
      return (eval_W(m2, x + h, theta, 1e-14).value - eval_W(m2, x - h, theta, 1e-14).value) / (2 * h);
    };
    CHECK(std::abs(dq(1e-5) - dq(1e-6)) <= 1e-4);
  }
}

TEST_CASE("detect_degenerate") {
  const auto z = ThetaSequence::zeros();
  const auto flat = validate_system(zero_forcing("M1"));
  CHECK(detect_degenerate(flat, z, {2, 12}).verdict == DegeneracyVerdict::degenerate);

  const auto m1 = detect_degenerate(reference_model("M1"), z, {2, 12});
  CHECK(m1.verdict == DegeneracyVerdict::non_degenerate);
  CHECK(m1.c_hat > 0.0);
  CHECK(detect_degenerate(reference_model("M2"), z, {2, 12}).verdict == DegeneracyVerdict::non_degenerate);

  CHECK_THROWS_AS(detect_degenerate(flat, z, {5, 4}), Error);
}
