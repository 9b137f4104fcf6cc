#include "wtf/graph_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wtf/numeric.hpp"
#include "wtf/parallel.hpp"

namespace wtf {

namespace {

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::invalid_tolerance, "tolerance must be positive and finite");
  }
}

// Signed rho_i(x0 + dx) - rho_i(x0).
double inverse_increment(const CookieCutterSystem& sys, int i, double y0, double dy) {
  if (dy == 0.0) return 0.0;
  if (sys.affine()) return dy / sys.branch_derivative(i, 0.0);
  if (std::abs(dy) > 1e-6) return sys.inverse(i, y0 + dy) - sys.inverse(i, y0);
  return sys.inverse_derivative(i, y0 + 0.5 * dy) * dy;
}

double lambda_increment(const CookieCutterSystem& sys, int i, double x0, double dx) {
  if (sys.lambda_branch_constant() || dx == 0.0) return 0.0;
  if (std::abs(dx) > 1e-6) return sys.lambda_on_branch(i, x0 + dx) - sys.lambda_on_branch(i, x0);
  return sys.lambda_derivative(x0 + 0.5 * dx) * dx;
}

}  // namespace

double tail_bound(const CookieCutterSystem& sys, int terms) {
  const double s = sys.sup_lambda();
  return std::pow(s, terms) * sys.forcing().sup_abs() / (1.0 - s);
}

int truncation_terms(const CookieCutterSystem& sys, double tol) {
  check_tolerance(tol);
  const double s = sys.sup_lambda();
  double bound = sys.forcing().sup_abs() / (1.0 - s) * s;
  int n = 1;
  while (bound > tol) {
    bound *= s;
    ++n;
    if (n > 100000) throw Error(ErrorKind::no_convergence, "tail bound does not reach tolerance");
  }
  return n;
}

EvalResult eval_W(const CookieCutterSystem& sys, double x, const ThetaSequence& theta, double tol) {
  const int terms = truncation_terms(sys, tol);
  CompensatedSum sum;
  double weight = 1.0;
  double y = x;
  for (int n = 0; n < terms; ++n) {
    sum.add(weight * sys.g(y + theta.at(static_cast<std::size_t>(n))));
    weight *= sys.lambda(y);
    y = sys.tau(y);
  }
  return EvalResult{sum.value(), terms, tail_bound(sys, terms)};
}

std::vector<double> eval_W_batch(const CookieCutterSystem& sys, std::span<const double> xs,
                                 const ThetaSequence& theta, double tol) {
  check_tolerance(tol);
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = eval_W(sys, xs[i], theta, tol).value; });
  return out;
}

double eval_W_skew(const CookieCutterSystem& sys, double x, const ThetaSequence& theta, int n,
                   double tol) {
  check_tolerance(tol);
  if (n < 0) throw Error(ErrorKind::invalid_argument, "negative skew depth");
  if (n == 0) return eval_W(sys, x, theta, tol).value;
  const SymbolWord code = code_of(sys, x, n);
  double z = x;
  for (int k = 0; k < n; ++k) z = sys.tau(z);
  double y = eval_W(sys, z, theta.shifted(static_cast<std::size_t>(n)), tol).value;
  for (int k = n; k-- > 0;) {
    const int i = code[static_cast<std::size_t>(k)];
    z = sys.inverse(i, z);
    y = sys.lambda_on_branch(i, z) * y + sys.g(z + theta.at(static_cast<std::size_t>(k)));
  }
  return y;
}

Oscillation oscillation_over(const CookieCutterSystem& sys, const SymbolWord& word,
                             const ThetaSequence& theta, int probes, double tol) {
  check_tolerance(tol);
  check_word(sys, word);
  if (probes < 2) throw Error(ErrorKind::invalid_argument, "oscillation needs at least 2 probes");
  int m = 0;
  std::size_t count = 1;
  while (count < static_cast<std::size_t>(probes)) {
    count *= static_cast<std::size_t>(sys.alphabet_size());
    ++m;
  }
  checked_word_count(sys, m);
  const int n = static_cast<int>(word.size());
  const auto base_theta = theta.shifted(static_cast<std::size_t>(n));

  // Reference chain through probe 0, level n down to level 0.
  std::vector<double> ref_x(static_cast<std::size_t>(n) + 1);
  std::vector<double> ref_y(static_cast<std::size_t>(n) + 1);
  std::vector<double> t(count);
  for (std::size_t j = 0; j < count; ++j) {
    t[j] = representative(sys, word_from_index(j, m, sys.alphabet_size()), 0.5);
  }
  ref_x[static_cast<std::size_t>(n)] = t[0];
  ref_y[static_cast<std::size_t>(n)] = eval_W(sys, t[0], base_theta, tol).value;
  for (int k = n; k-- > 0;) {
    const auto ku = static_cast<std::size_t>(k);
    const int i = word[ku];
    ref_x[ku] = sys.inverse(i, ref_x[ku + 1]);
    ref_y[ku] = sys.lambda_on_branch(i, ref_x[ku]) * ref_y[ku + 1] + sys.g(ref_x[ku] + theta.at(ku));
  }

  std::vector<double> diff(count, 0.0);
  parallel_for(count, [&](std::size_t j) {
    if (j == 0) return;
    double dx = t[j] - t[0];
    double d = eval_W(sys, t[j], base_theta, tol).value - ref_y[static_cast<std::size_t>(n)];
    for (int k = n; k-- > 0;) {
      const auto ku = static_cast<std::size_t>(k);
      const int i = word[ku];
      dx = inverse_increment(sys, i, ref_x[ku + 1], dx);
      const double x0 = ref_x[ku];
      const double dl = lambda_increment(sys, i, x0, dx);
      d = sys.lambda_on_branch(i, x0) * d + dl * (ref_y[ku + 1] + d) +
          sys.forcing().difference(x0 + theta.at(ku), dx);
    }
    diff[j] = d;
  });
  const auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
  return Oscillation{word, *hi - *lo, static_cast<int>(count)};
}

const char* verdict_name(DegeneracyVerdict v) noexcept {
  switch (v) {
    case DegeneracyVerdict::degenerate: return "degenerate";
    case DegeneracyVerdict::non_degenerate: return "non_degenerate";
    case DegeneracyVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DegeneracyReport detect_degenerate(const CookieCutterSystem& sys, const ThetaSequence& theta,
                                   DepthRange range, const DegeneracyOptions& options) {
  if (range.lo < 0 || range.hi < range.lo) throw Error(ErrorKind::invalid_argument, "empty depth range");
  if (options.cylinders_per_depth < 1) {
    throw Error(ErrorKind::invalid_argument, "cylinders_per_depth must be positive");
  }
  DegeneracyReport rep;
  double peak_osc = 0.0;
  const auto l = static_cast<std::uint64_t>(sys.alphabet_size());
  for (int n = range.lo; n <= range.hi; ++n) {
    SplitMix64 rng(hash_key(options.seed, static_cast<std::uint64_t>(n)));
    double lam_ratio = 0.0;
    double lip_ratio = 0.0;
    for (int c = 0; c < options.cylinders_per_depth; ++c) {
      std::vector<Digit> digits(static_cast<std::size_t>(n));
      for (auto& d : digits) d = static_cast<Digit>(rng.below(l));
      const SymbolWord w(std::move(digits));
      const double osc = oscillation_over(sys, w, theta, options.probes, options.tol).osc;
      peak_osc = std::max(peak_osc, osc);
      const double log_lam = birkhoff_sum_word(sys, Observable::log_lambda, w);
      lam_ratio = std::max(lam_ratio, osc * std::exp(-log_lam));
      lip_ratio = std::max(lip_ratio, osc / cylinder_length(sys, w));
    }
    rep.depths.push_back(n);
    rep.lambda_ratio.push_back(lam_ratio);
    rep.lipschitz_ratio.push_back(lip_ratio);
  }
  rep.c_hat = *std::min_element(rep.lambda_ratio.begin(), rep.lambda_ratio.end());
  if (peak_osc <= 1e3 * options.tol) {
    rep.verdict = DegeneracyVerdict::degenerate;
    rep.c_hat = 0.0;
    return rep;
  }
  if (rep.depths.size() < 3) return rep;
  std::vector<double> ns, log_lam, log_lip;
  for (std::size_t k = 0; k < rep.depths.size(); ++k) {
    if (!(rep.lambda_ratio[k] > 0.0)) return rep;
    ns.push_back(rep.depths[k]);
    log_lam.push_back(std::log(rep.lambda_ratio[k]));
    log_lip.push_back(std::log(rep.lipschitz_ratio[k]));
  }
  // Per-level log growth rates; a band shows up as a slope near zero.
  constexpr double kTrend = 0.05;
  const double lam_slope = fit_line(ns, log_lam).slope;
  const double lip_slope = fit_line(ns, log_lip).slope;
  const bool lip_bounded = lip_slope <= kTrend;
  const bool lam_vanishes = lam_slope < -kTrend;
  if (lip_bounded && lam_vanishes) {
    rep.verdict = DegeneracyVerdict::degenerate;
  } else if (!lip_bounded && !lam_vanishes && lam_slope <= kTrend) {
    rep.verdict = DegeneracyVerdict::non_degenerate;
  }
  return rep;
}

}  // namespace wtf
