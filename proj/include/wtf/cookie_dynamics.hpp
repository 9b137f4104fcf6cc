#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wtf/errors.hpp"

namespace wtf {

using Digit = std::uint8_t;

inline constexpr std::size_t kDefaultCylinderBudget = std::size_t{1} << 24;
inline constexpr int kMaxAlphabet = 256;

enum class TorusMetric { min, max };

// d(x, u) on the circle [0, 1). `max` reproduces the literal
// max{|x-u|, 1-|x-u|} form and exists only for sensitivity checks.
double torus_distance(double x, double u, TorusMetric metric = TorusMetric::min) noexcept;

class SymbolWord {
 public:
  SymbolWord() = default;
  explicit SymbolWord(std::vector<Digit> digits) : digits_(std::move(digits)) {}
  SymbolWord(std::initializer_list<int> digits);

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<Digit>& digits() const noexcept { return digits_; }

  SymbolWord prefix(std::size_t n) const;
  SymbolWord suffix_from(std::size_t k) const;
  SymbolWord extended(Digit d) const;
  std::string to_string() const;

  auto operator<=>(const SymbolWord&) const = default;

 private:
  std::vector<Digit> digits_;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

struct AffineMap {
  double slope = 1.0;   // tau(x) = slope * x + offset on the branch
  double offset = 0.0;
};

struct AnalyticMap {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct BranchSpec {
  Interval domain;
  std::variant<AffineMap, AnalyticMap> map;

  // Domain is the preimage of [0, 1] under x -> slope * x + offset.
  static BranchSpec affine(double slope, double offset);
  static BranchSpec analytic(Interval domain, AnalyticMap map);
};

struct ConstantScale {
  double value = 0.5;
};
// One value per branch; gaps interpolate linearly between neighbours.
struct BranchScale {
  std::vector<double> values;
};
struct AnalyticScale {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};
using ScaleSpec = std::variant<ConstantScale, BranchScale, AnalyticScale>;

// Trigonometric polynomial g(x) = sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x).
struct Forcing {
  std::string name = "cos";
  std::vector<double> cos_coeffs{0.0, 1.0};
  std::vector<double> sin_coeffs;

  static Forcing cosine();
  static Forcing zero();
  static Forcing trig(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  double value(double x) const noexcept;
  double derivative(double x) const noexcept;
  // g(a + delta) - g(a) without cancellation for tiny delta.
  double difference(double a, double delta) const noexcept;
  double sup_abs() const noexcept;
  bool identically_zero() const noexcept;
};

struct SystemSpec {
  std::string id = "custom";
  std::vector<BranchSpec> branches;
  ScaleSpec lambda = ConstantScale{0.5};
  Forcing forcing = Forcing::cosine();
  TorusMetric metric = TorusMetric::min;
};

struct ValidationOptions {
  int probes_per_branch = 10000;
  double onto_tolerance = 1e-9;
};

enum class Observable { log_abs_tau_prime, log_lambda };

const char* observable_name(Observable obs) noexcept;

// A validated cookie-cutter system (tau, lambda, g). Immutable; every member
// function is safe to call concurrently.
class CookieCutterSystem {
 public:
  const std::string& id() const noexcept { return spec_.id; }
  const SystemSpec& spec() const noexcept { return spec_; }
  int alphabet_size() const noexcept { return static_cast<int>(spec_.branches.size()); }
  const Interval& domain(int i) const { return spec_.branches.at(i).domain; }
  int orientation(int i) const { return orientation_.at(i); }

  // Half-open membership [lo, hi); nullopt for gap points.
  std::optional<int> branch_of(double x) const noexcept;

  double branch_map(int i, double x) const;
  double branch_derivative(int i, double x) const;
  double tau(double x) const;
  double inverse(int i, double y) const;
  double inverse_derivative(int i, double y) const;

  double lambda(double x) const;
  double lambda_on_branch(int i, double x) const;
  double lambda_derivative(double x) const;
  double g(double x) const noexcept { return spec_.forcing.value(x); }
  const Forcing& forcing() const noexcept { return spec_.forcing; }

  double observable_on_branch(Observable obs, int i, double x) const;

  bool affine() const noexcept { return affine_; }
  bool lambda_branch_constant() const noexcept { return lambda_branch_constant_; }
  bool branch_constant(Observable obs) const noexcept {
    return obs == Observable::log_abs_tau_prime ? affine_ : lambda_branch_constant_;
  }
  // Branch value of an observable; requires branch_constant(obs).
  double branch_value(Observable obs, int i) const;

  double hyperbolicity_margin() const noexcept { return margin_; }
  double margin_slack() const noexcept { return margin_slack_; }
  double sup_lambda() const noexcept { return sup_lambda_; }
  double inf_abs_derivative() const noexcept { return inf_abs_derivative_; }
  double sup_abs_derivative() const noexcept { return sup_abs_derivative_; }
  TorusMetric metric() const noexcept { return spec_.metric; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // Number of inverse-branch steps after which further digits cannot move a
  // point by more than double precision.
  int resolution_depth() const noexcept { return resolution_depth_; }

 private:
  friend CookieCutterSystem validate_system(SystemSpec spec, const ValidationOptions& options);
  CookieCutterSystem() = default;

  SystemSpec spec_;
  std::vector<int> orientation_;
  bool affine_ = false;
  bool lambda_branch_constant_ = false;
  double margin_ = 0.0;
  double margin_slack_ = 0.0;
  double sup_lambda_ = 0.0;
  double inf_abs_derivative_ = 0.0;
  double sup_abs_derivative_ = 0.0;
  int resolution_depth_ = 64;
  std::vector<std::string> warnings_;
};

// Throws OverlappingBranches, NotOnto, HyperbolicityViolated, LambdaOutOfRange
// or ConfigError.
CookieCutterSystem validate_system(SystemSpec spec, const ValidationOptions& options = {});

struct Cylinder {
  SymbolWord word;
  Interval interval;
  double length = 1.0;  // computed multiplicatively, accurate below the spacing of doubles
};

double apply_tau(const CookieCutterSystem& sys, double x);
Cylinder cylinder_of(const CookieCutterSystem& sys, const SymbolWord& word);
double cylinder_length(const CookieCutterSystem& sys, const SymbolWord& word);
// rho_{w_1} o ... o rho_{w_n}(t): the point of the cylinder with inner coordinate t.
double representative(const CookieCutterSystem& sys, const SymbolWord& word, double t = 0.5);
SymbolWord code_of(const CookieCutterSystem& sys, double x, int n);

void check_word(const CookieCutterSystem& sys, const SymbolWord& word);
std::size_t checked_word_count(const CookieCutterSystem& sys, int depth,
                               std::size_t budget = kDefaultCylinderBudget);
SymbolWord word_from_index(std::size_t index, int depth, int alphabet);

struct SampleStrategy {
  enum class Kind { midpoints, random };
  Kind kind = Kind::midpoints;
  std::uint64_t seed = 0;
  static SampleStrategy midpoints() { return {}; }
  static SampleStrategy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

struct RepellerSample {
  SymbolWord word;
  double x = 0.0;
};

// One representative per depth-n cylinder, in lexicographic word order.
std::vector<RepellerSample> sample_repeller(const CookieCutterSystem& sys, int depth,
                                            SampleStrategy strategy,
                                            std::size_t budget = kDefaultCylinderBudget);

// Forward-orbit Birkhoff sum; throws NotInPartition when the orbit leaves the partition.
double birkhoff_sum(const CookieCutterSystem& sys, Observable obs, double x, int n);

// Birkhoff sum over |word| steps at representative(word, t), accumulated along
// the inverse-branch chain. Stays exact at depths where forward orbits of
// doubles no longer shadow the word.
double birkhoff_sum_word(const CookieCutterSystem& sys, Observable obs, const SymbolWord& word,
                         double t = 0.5);

// Empirical constants of bounded distortion, one entry per depth n = 1..max_depth:
//   derivative_ratio:        max |(tau^n)'(x) / (tau^n)'(u)|, u in I_n(x)
//   derivative_times_length: max of v and 1/v for v = |(tau^n)'(x)| |I_n(x)|
//   geometry_ratio:          max of v and 1/v for v = |I_{n+1}(x)| / |I_n(x)|
struct DistortionProfile {
  std::vector<int> depths;
  std::vector<double> derivative_ratio;
  std::vector<double> derivative_times_length;
  std::vector<double> geometry_ratio;
};

DistortionProfile distortion_profile(const CookieCutterSystem& sys, int max_depth, int samples,
                                     std::uint64_t seed);

}  // namespace wtf
