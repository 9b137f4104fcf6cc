#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace wtf {

// Neumaier-compensated accumulator. Summation order is the caller's order,
// so results are reproducible for a fixed input sequence.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

// log(sum(exp(v))) with a max shift and compensated accumulation.
inline double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  CompensatedSum acc;
  for (double v : values) acc.add(std::exp(v - peak));
  return peak + std::log(acc.value());
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation. Values whose relative difference is below
// tie_tolerance share an averaged rank; a constant series has correlation 0.
double spearman(std::span<const double> x, std::span<const double> y,
                double tie_tolerance = 1e-9);

// Geometric ladder from `coarse` down to `fine` (both included) with ratio 1/2.
std::vector<double> dyadic_ladder(int coarse_exponent, int fine_exponent);

}  // namespace wtf
