#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wtf/cookie_dynamics.hpp"
#include "wtf/graph_function.hpp"
#include "wtf/thermo.hpp"

namespace wtf {

struct GraphPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const GraphPoint&) const = default;
};

struct CloudProvenance {
  std::string model_id;
  std::string theta = "zeros";
  std::string sampling = "grid";  // grid | repeller | lift | custom
  int depth = 0;
  double tol = 0.0;
  bool operator==(const CloudProvenance&) const = default;
};

struct GraphCloud {
  std::vector<GraphPoint> points;
  CloudProvenance provenance;
};

std::string provenance_to_json(const CloudProvenance& p);
CloudProvenance provenance_from_json(const std::string& text);

// CSV "x,y" with 17 significant digits and LF endings; provenance goes to
// `<path>.json` next to it and is read back when present.
void write_cloud_csv(const GraphCloud& cloud, const std::string& path);
GraphCloud read_cloud_csv(const std::string& path);

// restrict_to_repeller: per_cylinder stratified points (inner coordinates
// (j + 1/2) / per_cylinder) in every depth-n cylinder. Otherwise a uniform
// grid of l^depth * per_cylinder points on [0, 1).
GraphCloud sample_graph(const CookieCutterSystem& sys, const ThetaSequence& theta, int depth,
                        int per_cylinder, double tol, bool restrict_to_repeller,
                        std::size_t budget = kDefaultCylinderBudget);

// Points (x, W(x)) over given base samples.
GraphCloud lift_samples(const CookieCutterSystem& sys, const ThetaSequence& theta,
                        std::span<const RepellerSample> samples, double tol);

enum class FillPolicy {
  // Consecutive points (in x order) closer than the finest scale are joined by
  // line segments and every box a segment crosses counts. On a dyadic ladder
  // the occupied set at 2r is the parent set of the one at r.
  segments,
  points,
};

struct BoxCountOptions {
  FillPolicy fill = FillPolicy::segments;
  int drop_coarse = 2;
  int drop_fine = 2;
  double min_r2 = 0.95;
};

struct BoxCountResult {
  std::vector<double> scales;  // as given, coarse to fine
  std::vector<std::size_t> counts;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  int window_lo = 0;  // indices into scales, inclusive
  int window_hi = 0;
  std::vector<std::string> warnings;
};

// Throws InvalidArgument (fewer than 6 scales, window too small) and
// DegenerateFit (r2 below min_r2; the result is attached to the message).
BoxCountResult box_dimension(const GraphCloud& cloud, std::span<const double> scales,
                             const BoxCountOptions& options = {});

// -S_n log(lambda) / S_n log|tau'| along the forward orbit of x.
double holder_birkhoff(const CookieCutterSystem& sys, double x, int n);
// Same quotient on the inverse-branch chain of the word.
double holder_birkhoff_word(const CookieCutterSystem& sys, const SymbolWord& word);

enum class HolderReduction {
  deepest,  // value at the deepest level of the range
  min,      // min over the range
};

struct HolderOscillationOptions {
  int depth_lo = 8;
  int depth_hi = 30;
  int probes = 64;
  int global_probes = 4096;
  double tol = 1e-15;
  HolderReduction reduction = HolderReduction::deepest;
};

struct HolderOscillationResult {
  double value = 0.0;
  std::vector<int> depths;
  std::vector<double> ratios;  // log(osc_n / osc_0) / log|I_n|, unclamped
  double global_osc = 0.0;
};

// Ratios are taken relative to the oscillation over the whole interval, which
// removes the log C / n bias of log osc_n / log|I_n| at finite depth. The
// reduced value is clamped to (0, 1]. Throws OscillationUnderflow when some
// osc_n falls below 10 tol.
HolderOscillationResult holder_oscillation_word(const CookieCutterSystem& sys, const SymbolWord& word,
                                                const ThetaSequence& theta,
                                                const HolderOscillationOptions& options = {});
double holder_oscillation(const CookieCutterSystem& sys, double x, const ThetaSequence& theta,
                          const HolderOscillationOptions& options = {});

// Same estimator for an arbitrary function over the cylinders of sys, with
// plain sampling at the probes.
double holder_oscillation_curve(const CookieCutterSystem& sys, const std::function<double(double)>& f,
                                double x, const HolderOscillationOptions& options = {});

struct HolderEstimate {
  double x = 0.0;
  double birkhoff_value = 0.0;
  double oscillation_value = 0.0;
  int depth = 0;
};

// Both estimators on each word (length >= depth and >= options.depth_hi).
std::vector<HolderEstimate> holder_estimates(const CookieCutterSystem& sys,
                                             std::span<const SymbolWord> words,
                                             const ThetaSequence& theta, int depth,
                                             const HolderOscillationOptions& options = {});

struct EmpiricalSpectrumPoint {
  double q = 0.0;
  double alpha_hat = 0.0;
  double alpha_predicted = 0.0;
  double stderr_mean = 0.0;
};

std::vector<EmpiricalSpectrumPoint> empirical_spectrum(const PressureEvaluator& eval,
                                                       std::span<const double> q_grid,
                                                       std::size_t samples_per_q, int birkhoff_depth,
                                                       std::uint64_t seed);

struct CorrelationOptions {
  std::size_t max_pairs = 1000000;
  std::uint64_t seed = 1;
  double min_r2 = 0.95;
};

struct CorrelationResult {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  std::vector<double> radii;
  std::vector<double> fractions;  // share of sampled pairs closer than r
  std::size_t pairs = 0;
};

// Planar distance with the first coordinate on the circle.
double cloud_distance(const GraphPoint& a, const GraphPoint& b) noexcept;

// Throws InvalidArgument (< 1000 points, < 5 radii) and DegenerateFit.
CorrelationResult correlation_dimension(const GraphCloud& cloud, std::span<const double> radii,
                                        const CorrelationOptions& options = {});

struct EnergyResult {
  double value = 0.0;
  bool diverged = false;
  std::size_t pairs = 0;
  double last_relative_change = 0.0;
};

// Monte Carlo mean of d^-s over seeded pairs; diverged when the running mean
// moves by more than 10% over the last doubling of the pair count.
EnergyResult s_energy(const GraphCloud& cloud, double s, std::size_t max_pairs, std::uint64_t seed);

// Seeded pair (i, j), i != j, for draw k.
std::pair<std::size_t, std::size_t> pair_draw(std::size_t n, std::uint64_t seed, std::uint64_t k) noexcept;

}  // namespace wtf
