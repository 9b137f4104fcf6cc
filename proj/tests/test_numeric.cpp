#include <cmath>
#include <vector>

#include "doctest.h"
#include "wtf/numeric.hpp"
#include "wtf/rng.hpp"

using namespace wtf;

TEST_CASE("compensated sum recovers small addends") {
  std::vector<double> v{1.0, 1e-16, 1e-16, 1e-16, 1e-16, -1.0};
  CHECK(compensated_sum(v) == doctest::Approx(4e-16).epsilon(1e-6));
}

TEST_CASE("log_sum_exp") {
  std::vector<double> v{std::log(0.25), std::log(0.75)};
  CHECK(log_sum_exp(v) == doctest::Approx(0.0).epsilon(1e-15));
  std::vector<double> big{1000.0, 1000.0};
  CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
}

TEST_CASE("fit_line exact line") {
  std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y{1, 3, 5, 7, 9};
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.slope_stderr == doctest::Approx(0.0));
}

TEST_CASE("spearman") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> up{2, 4, 8, 16, 32};
  std::vector<double> down{5, 4, 3, 2, 1};
  std::vector<double> flat{7, 7, 7, 7, 7};
  CHECK(spearman(x, up) == doctest::Approx(1.0));
  CHECK(spearman(x, down) == doctest::Approx(-1.0));
  CHECK(spearman(x, flat) == 0.0);
  // relative ties
  std::vector<double> near{1.0, 1.0 + 1e-13, 1.0 - 1e-13, 1.0, 1.0};
  CHECK(spearman(x, near) == 0.0);
}

TEST_CASE("dyadic ladder") {
  const auto l = dyadic_ladder(2, 5);
  REQUIRE(l.size() == 4);
  CHECK(l.front() == 0.25);
  CHECK(l.back() == 1.0 / 32.0);
}

TEST_CASE("counter rng is reproducible and roughly uniform") {
  CHECK(hash_key(7, 3) == hash_key(7, 3));
  CHECK(hash_key(7, 3) != hash_key(7, 4));
  SplitMix64 a(42), b(42);
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = a.uniform();
    CHECK_EQ(u, b.uniform());
    mean += u;
  }
  CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
