#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wtf/cookie_dynamics.hpp"

namespace wtf {

// phi = a log|tau'| + b log(lambda) + c
struct PotentialSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  PotentialSpec operator+(const PotentialSpec& o) const { return {a + o.a, b + o.b, c + o.c}; }
  PotentialSpec operator*(double s) const { return {a * s, b * s, c * s}; }
  bool operator==(const PotentialSpec&) const = default;
};

std::string to_string(const PotentialSpec& pot);

// The three Bowen families, as s -> base + s * slope.
struct PotentialFamily {
  PotentialSpec base;
  PotentialSpec slope;
  PotentialSpec at(double s) const { return base + slope * s; }

  static PotentialFamily s1();  // (1 - s) log|tau'| + log lambda
  static PotentialFamily s2();  // s log lambda
  static PotentialFamily a_of_q(double q);  // -A log|tau'| + q log lambda
};

// -A_q log|tau'| + q log lambda
PotentialSpec spectrum_potential(double q, double a_q);

bool branch_constant(const CookieCutterSystem& sys, const PotentialSpec& pot);
double potential_on_branch(const CookieCutterSystem& sys, const PotentialSpec& pot, int i, double x);

struct PressureEstimate {
  double value = 0.0;
  int depth = 0;
  double error_bound = 0.0;
  bool exact = false;
};

// Birkhoff sums of log|tau'| and log(lambda) at rho_w(1/2) for every word of
// depth lo..depth, built once so that any PotentialSpec costs one pass.
class CylinderTable {
 public:
  CylinderTable(const CookieCutterSystem& sys, int depth, std::size_t budget = kDefaultCylinderBudget);

  int depth() const noexcept { return depth_; }
  int first_level() const noexcept { return first_level_; }
  // log sum_w exp(S_m phi(x_w)) for m in [first_level, depth].
  double log_partition(const PotentialSpec& pot, int m) const;
  // Weights exp(S_m phi(x_w)) / Z over depth-m words in lexicographic order.
  std::vector<double> weights(const PotentialSpec& pot, int m) const;
  const std::vector<double>& sum_log_derivative(int m) const;
  const std::vector<double>& sum_log_lambda(int m) const;

 private:
  int depth_;
  int first_level_;
  std::vector<std::vector<double>> s_tau_;
  std::vector<std::vector<double>> s_lambda_;
};

struct ThermoOptions {
  int depth = 14;                     // cylinder depth for non-constant potentials
  std::size_t budget = kDefaultCylinderBudget;
  double q_max = 30.0;
  double root_tol_exact = 1e-8;
  double root_tol_approx = 1e-4;
  double fd_step = 1e-3;
  double degenerate_threshold = 1e-4;
};

// Pressure queries on one system. Branch-constant potentials are closed form
// (log sum_i e^{phi_i}); the rest use a lazily built CylinderTable with Aitken
// extrapolation of the two-step increments of the log partition sums.
class PressureEvaluator {
 public:
  explicit PressureEvaluator(const CookieCutterSystem& sys, ThermoOptions options = {});

  const CookieCutterSystem& system() const noexcept { return *sys_; }
  const ThermoOptions& options() const noexcept { return options_; }
  PressureEstimate operator()(const PotentialSpec& pot) const;
  const CylinderTable& table() const;

 private:
  std::shared_ptr<const CookieCutterSystem> sys_;
  ThermoOptions options_;
  mutable std::shared_ptr<const CylinderTable> table_;
};

PressureEstimate pressure(const CookieCutterSystem& sys, const PotentialSpec& pot, int depth,
                          std::size_t budget = kDefaultCylinderBudget);

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
};

// Root of s -> P(family(s)); pressure must be strictly monotone in s.
// Throws NoSignChange, TooFlat, NoConvergence.
double bowen_root(const PressureEvaluator& eval, const PotentialFamily& family, Bracket bracket,
                  std::optional<double> tol = std::nullopt);

// Widens [lo, hi] geometrically until the pressure changes sign, then solves.
double bowen_root_auto(const PressureEvaluator& eval, const PotentialFamily& family, Bracket start,
                       std::optional<double> tol = std::nullopt);

struct GraphDimensionPrediction {
  double s1 = 0.0;
  double s2 = 0.0;
  double box_dim = 0.0;          // = s1
  double hausdorff_upper = 0.0;  // = min(s1, s2)
  bool min_is_s1 = true;
};

GraphDimensionPrediction graph_dimension_prediction(const PressureEvaluator& eval);

double A_of_q(const PressureEvaluator& eval, double q, std::optional<double> tol = std::nullopt);

struct SpectrumSample {
  double q = 0.0;
  double a_q = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  double fd_discrepancy = 0.0;  // |alpha_h - alpha_{h/2}|
};

struct SpectrumCurve {
  std::vector<SpectrumSample> samples;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  double alpha_c = 0.0;
  double a0 = 0.0;                  // = max D, attained at alpha_c
  bool degenerate_flag = false;     // alpha_max - alpha_min below threshold
  bool exact_endpoints = false;     // endpoints from branch ratios
  // P(q (alpha_c log|tau'| + log lambda)) at q = -1, +1; both vanish when the
  // exponent is cohomologically constant.
  double cohomology_residual_minus = 0.0;
  double cohomology_residual_plus = 0.0;
};

// alpha(q) = -A'(q): central differences at h and h/2 combined by Richardson.
double alpha_of_q(const PressureEvaluator& eval, double q, double* discrepancy = nullptr);

SpectrumCurve spectrum(const PressureEvaluator& eval, const std::vector<double>& q_grid);

std::vector<double> uniform_grid(double lo, double hi, int count);

// Word weights at the given depth, lexicographic order. Throws NotNormalised
// when |P(pot)| > 1e-6.
std::vector<double> gibbs_weights(const PressureEvaluator& eval, const PotentialSpec& pot, int depth);

// pot - P(pot)
PotentialSpec normalised(const PressureEvaluator& eval, const PotentialSpec& pot);

struct GibbsSampleOptions {
  int markov_order = 8;  // block length k for non-constant potentials
  int point_depth = 0;   // digits used for x; 0 means the system's resolution depth
};

// iid draws of depth-`depth` words; digit stream per (seed, sample index).
std::vector<RepellerSample> gibbs_sample(const PressureEvaluator& eval, const PotentialSpec& pot,
                                         int depth, std::size_t count, std::uint64_t seed,
                                         const GibbsSampleOptions& options = {});

struct MeasureStats {
  double entropy = 0.0;
  double lyapunov = 0.0;
  double mean_log_lambda = 0.0;
  double dim = 0.0;
  double alpha = 0.0;
  bool exact = false;
};

MeasureStats measure_stats(const PressureEvaluator& eval, const PotentialSpec& pot, int depth);

// min{dim + 1 + mean_log_lambda / chi, h / (-mean_log_lambda)}
double lifted_dim_prediction(const MeasureStats& stats);

// min{D + 1 - alpha, D / alpha}
double jin_upper(double d, double alpha);

// Closed forms for affine systems with branch-constant lambda, computed from
// the branch ratios only.
class MoranOracle {
 public:
  explicit MoranOracle(const CookieCutterSystem& sys);
  MoranOracle(std::vector<double> ratios, std::vector<double> lambdas);

  double pressure(const PotentialSpec& pot) const;
  double A_of_q(double q) const;
  double s1() const;
  double s2() const;
  double alpha_of_q(double q) const;
  double alpha_min() const;
  double alpha_max() const;

 private:
  std::vector<double> r_;
  std::vector<double> lam_;
};

}  // namespace wtf
