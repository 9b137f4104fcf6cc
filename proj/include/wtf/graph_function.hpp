#pragma once

#include <span>
#include <vector>

#include "wtf/cookie_dynamics.hpp"
#include "wtf/theta.hpp"

namespace wtf {

struct EvalResult {
  double value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;
};

// Smallest N >= 1 with (sup lambda)^N sup|g| / (1 - sup lambda) <= tol.
int truncation_terms(const CookieCutterSystem& sys, double tol);
double tail_bound(const CookieCutterSystem& sys, int terms);

// W_theta(x) = sum_n lambda(x)...lambda(tau^{n-1}x) g(tau^n x + theta_n).
EvalResult eval_W(const CookieCutterSystem& sys, double x, const ThetaSequence& theta, double tol);

std::vector<double> eval_W_batch(const CookieCutterSystem& sys, std::span<const double> xs,
                                 const ThetaSequence& theta, double tol);

// Second coordinate of F_{theta_0, i_0} o ... o F_{theta_{n-1}, i_{n-1}}(tau^n x, W_{sigma^n theta}(tau^n x)),
// where F_{t,i}(x, y) = (rho_i(x), lambda(rho_i x) y + g(rho_i x + t)).
double eval_W_skew(const CookieCutterSystem& sys, double x, const ThetaSequence& theta, int n,
                   double tol);

struct Oscillation {
  SymbolWord word;
  double osc = 0.0;
  int probes = 0;
};

// max - min of W over rho_word(t_j), t_j the midpoints of all depth-m
// sub-cylinders with l^m >= probes. Differences to a reference probe are
// carried through the skew product, so osc stays accurate far below the
// spacing of doubles near W.
Oscillation oscillation_over(const CookieCutterSystem& sys, const SymbolWord& word,
                             const ThetaSequence& theta, int probes, double tol);

struct DepthRange {
  int lo = 1;
  int hi = 12;
};

enum class DegeneracyVerdict { degenerate, non_degenerate, inconclusive };

const char* verdict_name(DegeneracyVerdict v) noexcept;

struct DegeneracyReport {
  DegeneracyVerdict verdict = DegeneracyVerdict::inconclusive;
  double c_hat = 0.0;                  // min_n of lambda_ratio
  std::vector<int> depths;
  std::vector<double> lambda_ratio;    // max osc / lambda^n over sampled cylinders
  std::vector<double> lipschitz_ratio; // max osc / |I_n|
};

struct DegeneracyOptions {
  int probes = 64;
  int cylinders_per_depth = 16;
  std::uint64_t seed = 1;
  double tol = 1e-12;
};

DegeneracyReport detect_degenerate(const CookieCutterSystem& sys, const ThetaSequence& theta,
                                   DepthRange range, const DegeneracyOptions& options = {});

}  // namespace wtf
