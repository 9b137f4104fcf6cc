#include "wtf/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wtf {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs two or more paired samples");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx.add(dx * dx);
    sxy.add(dx * dy);
    syy.add(dy * dy);
  }
  LinearFit fit;
  if (sxx.value() <= 0.0) return fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  const double ss_res = std::max(0.0, syy.value() - fit.slope * sxy.value());
  fit.r2 = syy.value() > 0.0 ? 1.0 - ss_res / syy.value() : 1.0;
  if (x.size() > 2) {
    fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / sxx.value());
  }
  return fit;
}

namespace {

std::vector<double> ranks(std::span<const double> v, double tie_tolerance) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size()) {
      const double a = v[order[j - 1]];
      const double b = v[order[j]];
      const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
      if (std::abs(b - a) > tie_tolerance * scale) break;
      ++j;
    }
    const double avg = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t k = i; k < j; ++k) r[order[k]] = avg;
    i = j;
  }
  return r;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y,
                double tie_tolerance) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman needs two or more paired samples");
  }
  const auto rx = ranks(x, tie_tolerance);
  const auto ry = ranks(y, tie_tolerance);
  const auto n = static_cast<double>(x.size());
  const double mx = compensated_sum(rx) / n;
  const double my = compensated_sum(ry) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> dyadic_ladder(int coarse_exponent, int fine_exponent) {
  std::vector<double> out;
  for (int k = coarse_exponent; k <= fine_exponent; ++k) {
    out.push_back(std::ldexp(1.0, -k));
  }
  return out;
}

}  // namespace wtf
