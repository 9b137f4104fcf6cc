#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "wtf/fractal_metrics.hpp"
#include "wtf/models.hpp"
#include "wtf/rng.hpp"

using namespace wtf;

namespace {

std::vector<double> ladder(int coarse, int fine) {
  std::vector<double> s;
  for (int k = coarse; k <= fine; ++k) s.push_back(std::ldexp(1.0, -k));
  return s;
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

GraphCloud uniform_line(std::size_t n, std::uint64_t seed) {
  GraphCloud c;
  SplitMix64 g(seed);
  for (std::size_t i = 0; i < n; ++i) c.points.push_back({g.uniform(), 0.0});
  return c;
}

// Words with iid uniform digits.
std::vector<SymbolWord> random_words(int alphabet, int length, int count, std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<SymbolWord> out;
  for (int k = 0; k < count; ++k) {
    std::vector<Digit> d(static_cast<std::size_t>(length));
    for (auto& v : d) v = static_cast<Digit>(g.below(static_cast<std::uint64_t>(alphabet)));
    out.emplace_back(std::move(d));
  }
  return out;
}

}  // namespace

TEST_CASE("sample_graph") {
  const auto m1 = reference_model("M1");
  const auto c = sample_graph(m1, ThetaSequence::zeros(), 18, 4, 1e-12, false);
  CHECK(c.points.size() == (std::size_t{1} << 20));
  bool finite = true;
  for (const auto& p : c.points) finite = finite && std::isfinite(p.y) && p.x >= 0.0 && p.x < 1.0;
  CHECK(finite);
  CHECK(c.provenance.model_id == "M1");
  CHECK(c.provenance.depth == 18);
  CHECK(c.provenance.sampling == "grid");
  // W(0) = sum 0.7^n
  CHECK(c.points[0].y == doctest::Approx(1.0 / 0.3).epsilon(1e-10));

  const auto m2 = reference_model("M2");
  const auto r = sample_graph(m2, ThetaSequence::zeros(), 10, 2, 1e-12, true);
  CHECK(r.points.size() == 2048);
  for (const auto& p : r.points) {
    const auto w = code_of(m2, p.x, 10);
    CHECK(cylinder_of(m2, w).interval.contains(p.x));
  }
  CHECK(kind_of([&] { sample_graph(m1, ThetaSequence::zeros(), 20, 64, 1e-12, false); }) ==
        ErrorKind::budget_exceeded);
}

TEST_CASE("cloud CSV round trip") {
  const auto m2 = reference_model("M2");
  auto c = sample_graph(m2, ThetaSequence::iid_uniform(42), 6, 3, 1e-10, true);
  c.points.push_back({0.1, -1e-300});
  c.points.push_back({0.3, 5e-324});
  const auto path = (std::filesystem::temp_directory_path() / "wtf_cloud_roundtrip.csv").string();
  write_cloud_csv(c, path);
  const auto back = read_cloud_csv(path);
  CHECK(back.points == c.points);
  CHECK(back.provenance == c.provenance);
  CHECK(back.provenance.theta == "iid_uniform(seed=42)");
  std::FILE* f = std::fopen(path.c_str(), "rb");
  char head[5] = {};
  REQUIRE(std::fread(head, 1, 4, f) == 4);
  std::fclose(f);
  CHECK(std::string(head) == "x,y\n");
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
  CHECK(kind_of([&] { read_cloud_csv(path); }) == ErrorKind::io_error);
}

TEST_CASE("box dimension of a smooth curve") {
  GraphCloud line;
  for (int k = 0; k < 1000000; ++k) {
    const double x = k / 1e6;
    line.points.push_back({x, x});
  }
  for (auto fill : {FillPolicy::segments, FillPolicy::points}) {
    const auto r = box_dimension(line, ladder(4, 14), {.fill = fill});
    CHECK(std::abs(r.slope - 1.0) <= 0.02);
    CHECK(r.window_lo == 2);
    CHECK(r.window_hi == 8);
    CHECK(r.r2 > 0.999);
  }
  CHECK(kind_of([&] { box_dimension(line, ladder(4, 8)); }) == ErrorKind::invalid_argument);

  // a cloud with no scaling range
  GraphCloud few;
  for (int k = 0; k < 50; ++k) few.points.push_back({k / 50.0, 0.0});
  CHECK(kind_of([&] { box_dimension(few, ladder(1, 12), {.fill = FillPolicy::points}); }) ==
        ErrorKind::degenerate_fit);
}

TEST_CASE("box dimension of reference graphs") {
  const auto m1 = reference_model("M1");
  const auto c = sample_graph(m1, ThetaSequence::zeros(), 20, 1, 1e-12, false);
  const auto r = box_dimension(c, ladder(6, 14));
  CHECK(std::abs(r.slope - 1.4854) <= 0.05);
  CHECK(r.stderr_slope < 0.02);

  const auto m2 = reference_model("M2");
  const auto c2 = sample_graph(m2, ThetaSequence::zeros(), 16, 1, 1e-12, true);
  const auto r2 = box_dimension(c2, ladder(6, 14));
  CHECK(std::abs(r2.slope - 0.8996) <= 0.07);
}

TEST_CASE("property: box counts are monotone in the scale") {
  for (const char* id : {"M1", "M2", "M5"}) {
    const auto sys = reference_model(id);
    for (bool restrict : {false, true}) {
      const auto c = sample_graph(sys, ThetaSequence::iid_uniform(3), 14, 2, 1e-10, restrict);
      for (auto fill : {FillPolicy::segments, FillPolicy::points}) {
        BoxCountOptions o{.fill = fill, .min_r2 = 0.0};
        const auto r = box_dimension(c, ladder(2, 16), o);
        for (std::size_t k = 1; k < r.counts.size(); ++k) CHECK(r.counts[k - 1] <= r.counts[k]);
      }
    }
  }
}

TEST_CASE("holder_birkhoff") {
  const auto m1 = reference_model("M1");
  for (double x : {0.1, 0.37, 0.9}) {
    for (int n : {1, 7, 30}) CHECK(holder_birkhoff(m1, x, n) == doctest::Approx(0.5145732).epsilon(1e-7));
  }
  const auto m3 = reference_model("M3");
  // the fixed point of the second branch is x = 1, outside [0, 1); use its code
  const SymbolWord ones(std::vector<Digit>(40, 1));
  CHECK(std::abs(holder_birkhoff_word(m3, ones) - 0.4466766) <= 1e-6);
  CHECK(holder_birkhoff_word(m3, ones) == doctest::Approx(std::log(0.7) / std::log(0.45)).epsilon(1e-12));
  // x = 0 is the fixed point of the first branch
  CHECK(holder_birkhoff(m3, 0.0, 40) == doctest::Approx(std::log(0.4) / std::log(0.3)).epsilon(1e-12));
  // period-two point with code (0,1,0,1,...): x = 0.3 * (0.55 + 0.45 x)
  const double x01 = 0.3 * 0.55 / (1.0 - 0.3 * 0.45);
  CHECK(std::abs(holder_birkhoff(m3, x01, 20) - 0.6356944) <= 1e-6);
  std::vector<Digit> alt(40);
  for (std::size_t k = 0; k < alt.size(); ++k) alt[k] = static_cast<Digit>(k % 2);
  CHECK(std::abs(holder_birkhoff_word(m3, SymbolWord(alt)) - 0.6356944) <= 1e-6);

  const auto m2 = reference_model("M2");
  CHECK(kind_of([&] { holder_birkhoff(m2, 0.5, 3); }) == ErrorKind::not_in_partition);
}

TEST_CASE("property: Birkhoff estimates stay in the spectrum range") {
  for (const char* id : {"M1", "M2", "M3", "M4"}) {
    const auto sys = reference_model(id);
    const auto curve = spectrum(PressureEvaluator(sys), uniform_grid(-30.0, 30.0, 61));
    const MoranOracle oracle(sys);
    const double lo = std::min(curve.alpha_min, oracle.alpha_min());
    const double hi = std::max(curve.alpha_max, oracle.alpha_max());
    for (const auto& w : random_words(2, 60, 200, 17)) {
      for (std::size_t n : {10, 25, 60}) {
        const double a = holder_birkhoff_word(sys, w.prefix(n));
        CHECK(a >= lo - 1e-6);
        CHECK(a <= hi + 1e-6);
      }
    }
  }
}

TEST_CASE("holder_oscillation examples") {
  HolderOscillationOptions o{.depth_lo = 8, .depth_hi = 20};
  const auto m1 = reference_model("M1");
  CHECK(std::abs(holder_oscillation(m1, 1.0 / 3.0, ThetaSequence::zeros(), o) - 0.5146) <= 0.02);
  o.reduction = HolderReduction::min;
  const double literal_min = holder_oscillation(m1, 1.0 / 3.0, ThetaSequence::zeros(), o);
  CHECK(literal_min > 0.0);
  CHECK(literal_min <= holder_oscillation(m1, 1.0 / 3.0, ThetaSequence::zeros(),
                                          {.depth_lo = 8, .depth_hi = 20}) + 1e-12);
  o.reduction = HolderReduction::deepest;

  const auto m4 = reference_model("M4");
  const double x01 = 0.35 * 0.65 / (1.0 - 0.35 * 0.35);
  for (double x : {0.0, x01}) CHECK(std::abs(holder_oscillation(m4, x, ThetaSequence::zeros()) - 0.5) <= 0.02);

  // W = x stub: Lipschitz, clamped to 1
  CHECK(holder_oscillation_curve(m1, [](double x) { return x; }, 0.3, o) == 1.0);
  CHECK(holder_oscillation_curve(m4, [](double x) { return 3.0 * x; }, x01, o) == 1.0);

  // g = 0 gives W = 0
  auto spec = reference_spec("M1");
  spec.forcing = Forcing::zero();
  const auto flat = validate_system(spec);
  CHECK(kind_of([&] { holder_oscillation(flat, 0.3, ThetaSequence::zeros(), o); }) ==
        ErrorKind::oscillation_underflow);
  // probes too coarse for the default tolerance at extreme depth
  CHECK(kind_of([&] {
          holder_oscillation(reference_model("M3"), 0.0, ThetaSequence::zeros(),
                             {.depth_lo = 40, .depth_hi = 45, .tol = 1e-12});
        }) == ErrorKind::oscillation_underflow);
}

TEST_CASE("holder estimates agree on non-degenerate reference models") {
  // The agreement check over all models at 100 points is part of the acceptance
  // run; here a smaller sample on models where the two estimators are close.
  for (const char* id : {"M3", "M4"}) {
    const auto sys = reference_model(id);
    const auto words = random_words(2, 40, 20, 99);
    const auto est = holder_estimates(sys, words, ThetaSequence::zeros(), 30);
    for (const auto& e : est) {
      CHECK(std::abs(e.birkhoff_value - e.oscillation_value) <= 0.03);
      CHECK(e.birkhoff_value > 0.0);
      CHECK(e.oscillation_value <= 1.0);
      CHECK(e.depth == 30);
    }
  }
}

TEST_CASE("empirical spectrum") {
  PressureEvaluator m3(reference_model("M3"));
  const MoranOracle oracle(m3.system());
  const std::vector<double> qs{0.0, 3.0};
  const auto pts = empirical_spectrum(m3, qs, 10000, 2000, 7);
  REQUIRE(pts.size() == 2);
  CHECK(std::abs(pts[0].alpha_hat - 0.6137) <= 0.005);
  CHECK(std::abs(pts[0].alpha_predicted - 0.6137) <= 1e-3);
  CHECK(std::abs(pts[1].alpha_hat - oracle.alpha_of_q(3.0)) <= 0.01);
  CHECK(pts[1].alpha_hat < pts[0].alpha_hat);
  CHECK(pts[0].stderr_mean < 1e-3);

  PressureEvaluator m4(reference_model("M4"));
  for (const auto& p : empirical_spectrum(m4, std::vector<double>{-5.0, 0.0, 5.0}, 200, 100, 3)) {
    CHECK(std::abs(p.alpha_hat - 0.5) <= 1e-6);
  }
}

TEST_CASE("property: empirical exponents decrease in q") {
  PressureEvaluator m3(reference_model("M3"));
  const auto qs = uniform_grid(-4.0, 4.0, 9);
  const auto pts = empirical_spectrum(m3, qs, 2000, 500, 21);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(pts[i].alpha_hat >= pts[j].alpha_hat - 0.01);
  }
}

TEST_CASE("correlation dimension") {
  GraphCloud square;
  SplitMix64 g(7);
  for (int i = 0; i < 100000; ++i) square.points.push_back({g.uniform(), g.uniform()});
  const auto r = correlation_dimension(square, ladder(2, 8));
  CHECK(std::abs(r.slope - 2.0) <= 0.1);
  CHECK(r.pairs == 1000000);

  PressureEvaluator m2(reference_model("M2"));
  const auto base = gibbs_sample(m2, spectrum_potential(0.0, A_of_q(m2, 0.0)), 40, 100000, 11);
  GraphCloud cloud;
  for (const auto& s : base) cloud.points.push_back({s.x, 0.0});
  const auto rb = correlation_dimension(cloud, ladder(4, 14));
  CHECK(std::abs(rb.slope - std::log(2.0) / std::log(1.0 / 0.35)) <= 0.05);

  PressureEvaluator m1(reference_model("M1"));
  const double s1 = graph_dimension_prediction(m1).s1;
  const auto nu1 = gibbs_sample(m1, PotentialFamily::s1().at(s1), 60, 100000, 13);
  const auto lift = lift_samples(m1.system(), ThetaSequence::iid_uniform(1), nu1, 1e-12);
  CHECK(lift.provenance.sampling == "lift");
  const auto rl = correlation_dimension(lift, ladder(2, 8));
  CHECK(rl.slope >= 1.37);
  CHECK(rl.slope <= 1.60);

  CHECK(kind_of([&] { correlation_dimension(uniform_line(500, 1), ladder(2, 8)); }) ==
        ErrorKind::invalid_argument);
  CHECK(kind_of([&] { correlation_dimension(square, ladder(2, 5)); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { correlation_dimension(square, ladder(20, 26)); }) == ErrorKind::degenerate_fit);
  // same seed, same pairs
  CHECK(correlation_dimension(square, ladder(2, 8)).fractions == r.fractions);
}

TEST_CASE("s-energy") {
  const auto line = uniform_line(10000, 3);
  const auto e = s_energy(line, 0.5, 1000000, 1);
  CHECK_FALSE(e.diverged);
  // E d^{-1/2} for the circle distance of two uniform points is 2 sqrt 2
  CHECK(std::abs(e.value - 8.0 / 3.0) <= 0.2);
  CHECK(std::abs(e.value - 2.0 * std::sqrt(2.0)) <= 0.02);
  CHECK(s_energy(line, 1.5, 1000000, 1).diverged);

  PressureEvaluator m1(reference_model("M1"));
  const double s1 = graph_dimension_prediction(m1).s1;
  const auto nu1 = gibbs_sample(m1, PotentialFamily::s1().at(s1), 60, 100000, 13);
  const auto lift = lift_samples(m1.system(), ThetaSequence::iid_uniform(1), nu1, 1e-12);
  const auto el = s_energy(lift, 1.3, 1000000, 1);
  CHECK_FALSE(el.diverged);
  CHECK(std::isfinite(el.value));

  CHECK_THROWS_AS(s_energy(line, 0.0, 100, 1), Error);
}
