#include "wtf/cookie_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wtf/numeric.hpp"
#include "wtf/rng.hpp"

namespace wtf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInversionTolerance = 1e-12;
constexpr double kSnap = 1e-12;

double snap_unit(double v) {
  if (std::abs(v) < kSnap) return 0.0;
  if (std::abs(v - 1.0) < kSnap) return 1.0;
  return v;
}

// Bracketed safeguarded Newton for value(x) = y on a monotone branch.
double invert_monotone(const AnalyticMap& map, const Interval& dom, int orientation, double y) {
  if (y <= 0.0) return orientation > 0 ? dom.lo : dom.hi;
  if (y >= 1.0) return orientation > 0 ? dom.hi : dom.lo;
  double a = dom.lo;
  double b = dom.hi;
  const bool lo_below = (map.value(a) - y) < 0.0;
  double x = orientation > 0 ? a + y * (b - a) : b - y * (b - a);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = map.value(x) - y;
    if (fx == 0.0) return x;
    if ((fx < 0.0) == lo_below) {
      a = x;
    } else {
      b = x;
    }
    const double d = map.derivative(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
        b - a <= 4.0 * std::numeric_limits<double>::epsilon()) {
      return x;
    }
  }
  if (std::abs(map.value(x) - y) > kInversionTolerance) {
    throw Error(ErrorKind::inversion_failed,
                "branch '" + map.name + "' did not invert at y=" + std::to_string(y));
  }
  return x;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double torus_distance(double x, double u, TorusMetric metric) noexcept {
  double d = std::abs(x - u);
  d -= std::floor(d);
  return metric == TorusMetric::min ? std::min(d, 1.0 - d) : std::max(d, 1.0 - d);
}

SymbolWord::SymbolWord(std::initializer_list<int> digits) {
  digits_.reserve(digits.size());
  for (int d : digits) {
    if (d < 0 || d >= kMaxAlphabet) {
      throw Error(ErrorKind::invalid_argument, "digit out of range: " + std::to_string(d));
    }
    digits_.push_back(static_cast<Digit>(d));
  }
}

SymbolWord SymbolWord::prefix(std::size_t n) const {
  n = std::min(n, digits_.size());
  return SymbolWord(std::vector<Digit>(digits_.begin(), digits_.begin() + static_cast<long>(n)));
}

SymbolWord SymbolWord::suffix_from(std::size_t k) const {
  k = std::min(k, digits_.size());
  return SymbolWord(std::vector<Digit>(digits_.begin() + static_cast<long>(k), digits_.end()));
}

SymbolWord SymbolWord::extended(Digit d) const {
  auto out = digits_;
  out.push_back(d);
  return SymbolWord(std::move(out));
}

std::string SymbolWord::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(static_cast<int>(digits_[i]));
  }
  return "(" + s + ")";
}

BranchSpec BranchSpec::affine(double slope, double offset) {
  if (slope == 0.0 || !std::isfinite(slope) || !std::isfinite(offset)) {
    throw Error(ErrorKind::config_error, "affine branch needs a finite nonzero slope");
  }
  const double x0 = snap_unit(-offset / slope);
  const double x1 = snap_unit((1.0 - offset) / slope);
  return BranchSpec{Interval{std::min(x0, x1), std::max(x0, x1)}, AffineMap{slope, offset}};
}

BranchSpec BranchSpec::analytic(Interval domain, AnalyticMap map) {
  return BranchSpec{domain, std::move(map)};
}

Forcing Forcing::cosine() { return Forcing{}; }

Forcing Forcing::zero() { return Forcing{"zero", {}, {}}; }

Forcing Forcing::trig(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  return Forcing{"trig", std::move(cos_coeffs), std::move(sin_coeffs)};
}

double Forcing::value(double x) const noexcept {
  double v = 0.0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
    if (cos_coeffs[k] != 0.0) v += cos_coeffs[k] * std::cos(kTwoPi * static_cast<double>(k) * x);
  }
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
    if (sin_coeffs[k] != 0.0) v += sin_coeffs[k] * std::sin(kTwoPi * static_cast<double>(k) * x);
  }
  return v;
}

double Forcing::derivative(double x) const noexcept {
  double v = 0.0;
  for (std::size_t k = 1; k < cos_coeffs.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k);
    v -= cos_coeffs[k] * w * std::sin(w * x);
  }
  for (std::size_t k = 1; k < sin_coeffs.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k);
    v += sin_coeffs[k] * w * std::cos(w * x);
  }
  return v;
}

double Forcing::difference(double a, double delta) const noexcept {
  // cos(w(a+d)) - cos(wa) = -2 sin(w(a+d/2)) sin(wd/2), likewise for sin.
  double v = 0.0;
  const double mid = a + 0.5 * delta;
  for (std::size_t k = 1; k < cos_coeffs.size(); ++k) {
    if (cos_coeffs[k] == 0.0) continue;
    const double w = kTwoPi * static_cast<double>(k);
    v -= 2.0 * cos_coeffs[k] * std::sin(w * mid) * std::sin(0.5 * w * delta);
  }
  for (std::size_t k = 1; k < sin_coeffs.size(); ++k) {
    if (sin_coeffs[k] == 0.0) continue;
    const double w = kTwoPi * static_cast<double>(k);
    v += 2.0 * sin_coeffs[k] * std::cos(w * mid) * std::sin(0.5 * w * delta);
  }
  return v;
}

double Forcing::sup_abs() const noexcept {
  double s = 0.0;
  for (double c : cos_coeffs) s += std::abs(c);
  for (double c : sin_coeffs) s += std::abs(c);
  return s;
}

bool Forcing::identically_zero() const noexcept { return sup_abs() == 0.0; }

const char* observable_name(Observable obs) noexcept {
  return obs == Observable::log_abs_tau_prime ? "log_abs_tau_prime" : "log_lambda";
}

std::optional<int> CookieCutterSystem::branch_of(double x) const noexcept {
  const auto& b = spec_.branches;
  // Branches are sorted by domain; find the last with lo <= x.
  auto it = std::upper_bound(b.begin(), b.end(), x,
                             [](double v, const BranchSpec& s) { return v < s.domain.lo; });
  if (it == b.begin()) return std::nullopt;
  --it;
  if (x >= it->domain.lo && x < it->domain.hi) return static_cast<int>(it - b.begin());
  return std::nullopt;
}

double CookieCutterSystem::branch_map(int i, double x) const {
  const auto& br = spec_.branches.at(i);
  if (const auto* a = std::get_if<AffineMap>(&br.map)) return a->slope * x + a->offset;
  return std::get<AnalyticMap>(br.map).value(x);
}

double CookieCutterSystem::branch_derivative(int i, double x) const {
  const auto& br = spec_.branches.at(i);
  if (const auto* a = std::get_if<AffineMap>(&br.map)) return a->slope;
  return std::get<AnalyticMap>(br.map).derivative(x);
}

double CookieCutterSystem::tau(double x) const {
  const auto i = branch_of(x);
  if (!i) return 0.0;
  double v = branch_map(*i, x);
  if (v >= 1.0) v -= 1.0;
  if (v < 0.0 || v >= 1.0) v = 0.0;
  return v;
}

double CookieCutterSystem::inverse(int i, double y) const {
  const auto& br = spec_.branches.at(i);
  if (const auto* a = std::get_if<AffineMap>(&br.map)) {
    return std::clamp((y - a->offset) / a->slope, br.domain.lo, br.domain.hi);
  }
  return invert_monotone(std::get<AnalyticMap>(br.map), br.domain, orientation_[i], y);
}

double CookieCutterSystem::inverse_derivative(int i, double y) const {
  const auto& br = spec_.branches.at(i);
  if (const auto* a = std::get_if<AffineMap>(&br.map)) return 1.0 / a->slope;
  return 1.0 / std::get<AnalyticMap>(br.map).derivative(inverse(i, y));
}

double CookieCutterSystem::lambda_on_branch(int i, double x) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantScale>) {
          return s.value;
        } else if constexpr (std::is_same_v<T, BranchScale>) {
          return s.values.at(i);
        } else {
          return s.value(x);
        }
      },
      spec_.lambda);
}

double CookieCutterSystem::lambda(double x) const {
  if (const auto* c = std::get_if<ConstantScale>(&spec_.lambda)) return c->value;
  if (const auto* a = std::get_if<AnalyticScale>(&spec_.lambda)) return a->value(x);
  const auto& values = std::get<BranchScale>(spec_.lambda).values;
  if (const auto i = branch_of(x)) return values[*i];
  // Gap: interpolate between the right end of the branch on the left and the
  // left end of the branch on the right, cyclically.
  const auto& b = spec_.branches;
  const int n = alphabet_size();
  int left = n - 1;
  for (int i = 0; i < n; ++i) {
    if (b[i].domain.hi <= x) left = i;
  }
  const int right = (left + 1) % n;
  double x0 = b[left].domain.hi;
  double x1 = b[right].domain.lo;
  double xx = x;
  if (x1 <= x0) x1 += 1.0;
  if (xx < x0) xx += 1.0;
  const double w = x1 > x0 ? (xx - x0) / (x1 - x0) : 0.0;
  return (1.0 - w) * values[left] + w * values[right];
}

double CookieCutterSystem::lambda_derivative(double x) const {
  if (const auto* a = std::get_if<AnalyticScale>(&spec_.lambda)) return a->derivative(x);
  return 0.0;
}

double CookieCutterSystem::observable_on_branch(Observable obs, int i, double x) const {
  if (obs == Observable::log_abs_tau_prime) return std::log(std::abs(branch_derivative(i, x)));
  return std::log(lambda_on_branch(i, x));
}

double CookieCutterSystem::branch_value(Observable obs, int i) const {
  if (!branch_constant(obs)) {
    throw Error(ErrorKind::not_branch_constant,
                std::string(observable_name(obs)) + " varies within branches");
  }
  return observable_on_branch(obs, i, 0.5 * (domain(i).lo + domain(i).hi));
}

CookieCutterSystem validate_system(SystemSpec spec, const ValidationOptions& options) {
  const auto n = spec.branches.size();
  if (n < 2) throw Error(ErrorKind::config_error, "a cookie cutter needs at least two branches");
  if (n > static_cast<std::size_t>(kMaxAlphabet)) {
    throw Error(ErrorKind::config_error, "too many branches");
  }
  if (options.probes_per_branch < 2) {
    throw Error(ErrorKind::invalid_argument, "probes_per_branch must be at least 2");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = spec.branches[i].domain;
    if (!(d.lo >= 0.0 && d.hi <= 1.0 && d.lo < d.hi)) {
      throw Error(ErrorKind::not_onto, "branch " + std::to_string(i) + " domain [" + fmt(d.lo) +
                                           ", " + fmt(d.hi) + "] is not inside [0, 1]");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = spec.branches[i].domain;
      const auto& b = spec.branches[j].domain;
      if (a.lo < b.hi && b.lo < a.hi) {
        throw Error(ErrorKind::overlapping_branches,
                    "branches " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (spec.branches[i].domain.lo < spec.branches[i - 1].domain.lo) {
      throw Error(ErrorKind::config_error, "branches must be listed from left to right");
    }
  }
  if (const auto* bs = std::get_if<BranchScale>(&spec.lambda); bs && bs->values.size() != n) {
    throw Error(ErrorKind::config_error, "branch lambda needs one value per branch");
  }

  CookieCutterSystem sys;
  sys.spec_ = std::move(spec);
  sys.affine_ = std::all_of(sys.spec_.branches.begin(), sys.spec_.branches.end(),
                            [](const BranchSpec& b) { return std::holds_alternative<AffineMap>(b.map); });
  sys.lambda_branch_constant_ = !std::holds_alternative<AnalyticScale>(sys.spec_.lambda);

  const int probes = options.probes_per_branch;
  double margin_min = std::numeric_limits<double>::infinity();
  double slack = 0.0;
  double sup_lambda = 0.0;
  double inf_deriv = std::numeric_limits<double>::infinity();
  double sup_deriv = 0.0;
  int positive = 0;
  sys.orientation_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int bi = static_cast<int>(i);
    const auto& d = sys.spec_.branches[i].domain;
    const double v0 = sys.branch_map(bi, d.lo);
    const double v1 = sys.branch_map(bi, d.hi);
    const bool up = std::abs(v0) <= options.onto_tolerance &&
                    std::abs(v1 - 1.0) <= options.onto_tolerance;
    const bool down = std::abs(v1) <= options.onto_tolerance &&
                      std::abs(v0 - 1.0) <= options.onto_tolerance;
    if (!up && !down) {
      throw Error(ErrorKind::not_onto, "branch " + std::to_string(i) + " maps its domain onto [" +
                                           fmt(std::min(v0, v1)) + ", " + fmt(std::max(v0, v1)) +
                                           "], not [0, 1]");
    }
    sys.orientation_[i] = up ? 1 : -1;
    positive += up ? 1 : 0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int j = 0; j < probes; ++j) {
      const double x = d.lo + (j + 0.5) / probes * (d.hi - d.lo);
      const double deriv = sys.branch_derivative(bi, x);
      if (!std::isfinite(deriv) || deriv * sys.orientation_[i] <= 0.0) {
        throw Error(ErrorKind::not_onto,
                    "branch " + std::to_string(i) + " is not strictly monotone near x=" + fmt(x));
      }
      const double lam = sys.lambda_on_branch(bi, x);
      if (!(lam > 0.0 && lam < 1.0)) {
        throw Error(ErrorKind::lambda_out_of_range, "lambda(" + fmt(x) + ") = " + fmt(lam));
      }
      const double m = std::abs(deriv) * lam;
      margin_min = std::min(margin_min, m);
      if (!std::isnan(prev)) slack = std::max(slack, std::abs(m - prev));
      prev = m;
      sup_lambda = std::max(sup_lambda, lam);
      inf_deriv = std::min(inf_deriv, std::abs(deriv));
      sup_deriv = std::max(sup_deriv, std::abs(deriv));
    }
  }
  // Gaps carry interpolated lambda; they still enter the tail bound.
  for (int j = 0; j < probes; ++j) {
    const double x = (j + 0.5) / probes;
    if (!sys.branch_of(x)) {
      const double lam = sys.lambda(x);
      if (!(lam > 0.0 && lam < 1.0)) {
        throw Error(ErrorKind::lambda_out_of_range, "lambda(" + fmt(x) + ") = " + fmt(lam));
      }
      sup_lambda = std::max(sup_lambda, lam);
    }
  }
  if (!sys.lambda_branch_constant_) {
    // Probe-grid maxima can miss the true supremum by the grid variation.
    double grid_var = 0.0;
    double prev = sys.lambda(0.5 / probes);
    for (int j = 1; j < probes; ++j) {
      const double cur = sys.lambda((j + 0.5) / probes);
      grid_var = std::max(grid_var, std::abs(cur - prev));
      prev = cur;
    }
    sup_lambda += grid_var;
  }
  sys.margin_slack_ = slack;
  sys.margin_ = margin_min - slack;
  sys.sup_lambda_ = std::min(sup_lambda, std::nextafter(1.0, 0.0));
  sys.inf_abs_derivative_ = inf_deriv;
  sys.sup_abs_derivative_ = sup_deriv;
  if (sys.margin_ <= 1.0) {
    throw Error(ErrorKind::hyperbolicity_violated,
                "inf |tau'| lambda = " + fmt(sys.margin_) + " (slack " + fmt(slack) + ") <= 1");
  }
  if (positive != 0 && positive != static_cast<int>(n)) {
    sys.warnings_.push_back("mixed branch orientations; expansivity of tau on the repeller is not checked");
  }
  sys.resolution_depth_ = std::max(
      1, static_cast<int>(std::ceil(60.0 * std::log(2.0) / std::log(inf_deriv))));
  return sys;
}

double apply_tau(const CookieCutterSystem& sys, double x) { return sys.tau(x); }

void check_word(const CookieCutterSystem& sys, const SymbolWord& word) {
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k] >= sys.alphabet_size()) {
      throw Error(ErrorKind::invalid_argument,
                  "digit " + std::to_string(word[k]) + " at position " + std::to_string(k) +
                      " exceeds alphabet size " + std::to_string(sys.alphabet_size()));
    }
  }
}

double representative(const CookieCutterSystem& sys, const SymbolWord& word, double t) {
  check_word(sys, word);
  double y = t;
  for (std::size_t k = word.size(); k-- > 0;) y = sys.inverse(word[k], y);
  return y;
}

double cylinder_length(const CookieCutterSystem& sys, const SymbolWord& word) {
  check_word(sys, word);
  double a = 0.0, b = 1.0, len = 1.0;
  for (std::size_t k = word.size(); k-- > 0;) {
    const int i = word[k];
    const double na = sys.inverse(i, a);
    const double nb = sys.inverse(i, b);
    if (sys.affine()) {
      len /= std::abs(sys.branch_derivative(i, 0.0));
    } else if (len > 1e-4) {
      len = std::abs(nb - na);
    } else {
      // Mean value form; the midpoint rule error is O(len^2) relative.
      len *= std::abs(sys.inverse_derivative(i, 0.5 * (a + b)));
    }
    a = na;
    b = nb;
  }
  return len;
}

Cylinder cylinder_of(const CookieCutterSystem& sys, const SymbolWord& word) {
  const double a = representative(sys, word, 0.0);
  const double b = representative(sys, word, 1.0);
  return Cylinder{word, Interval{std::min(a, b), std::max(a, b)}, cylinder_length(sys, word)};
}

SymbolWord code_of(const CookieCutterSystem& sys, double x, int n) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "negative coding depth");
  std::vector<Digit> digits;
  digits.reserve(static_cast<std::size_t>(n));
  double y = x;
  for (int k = 0; k < n; ++k) {
    const auto i = sys.branch_of(y);
    if (!i) {
      throw Error(ErrorKind::not_in_partition,
                  "iterate " + std::to_string(k) + " = " + fmt(y) + " lies outside the partition", k);
    }
    digits.push_back(static_cast<Digit>(*i));
    y = sys.tau(y);
  }
  return SymbolWord(std::move(digits));
}

std::size_t checked_word_count(const CookieCutterSystem& sys, int depth, std::size_t budget) {
  if (depth < 0) throw Error(ErrorKind::invalid_argument, "negative depth");
  std::size_t count = 1;
  const auto l = static_cast<std::size_t>(sys.alphabet_size());
  for (int k = 0; k < depth; ++k) {
    if (count > budget / l) {
      throw Error(ErrorKind::budget_exceeded,
                  std::to_string(l) + "^" + std::to_string(depth) + " cylinders exceed budget " +
                      std::to_string(budget));
    }
    count *= l;
  }
  if (count > budget) throw Error(ErrorKind::budget_exceeded, "cylinder budget exceeded");
  return count;
}

SymbolWord word_from_index(std::size_t index, int depth, int alphabet) {
  std::vector<Digit> digits(static_cast<std::size_t>(depth));
  const auto l = static_cast<std::size_t>(alphabet);
  for (int k = depth; k-- > 0;) {
    digits[static_cast<std::size_t>(k)] = static_cast<Digit>(index % l);
    index /= l;
  }
  return SymbolWord(std::move(digits));
}

std::vector<RepellerSample> sample_repeller(const CookieCutterSystem& sys, int depth,
                                            SampleStrategy strategy, std::size_t budget) {
  const std::size_t count = checked_word_count(sys, depth, budget);
  std::vector<RepellerSample> out(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    auto word = word_from_index(idx, depth, sys.alphabet_size());
    double t = 0.5;
    if (strategy.kind == SampleStrategy::Kind::random) {
      t = to_unit(hash_key(strategy.seed, static_cast<std::uint64_t>(depth), idx));
    }
    out[idx].x = representative(sys, word, t);
    out[idx].word = std::move(word);
  }
  return out;
}

double birkhoff_sum(const CookieCutterSystem& sys, Observable obs, double x, int n) {
  const SymbolWord code = code_of(sys, x, n);
  CompensatedSum sum;
  double y = x;
  for (int k = 0; k < n; ++k) {
    sum.add(sys.observable_on_branch(obs, code[static_cast<std::size_t>(k)], y));
    y = sys.tau(y);
  }
  return sum.value();
}

double birkhoff_sum_word(const CookieCutterSystem& sys, Observable obs, const SymbolWord& word,
                         double t) {
  check_word(sys, word);
  if (sys.branch_constant(obs)) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(sys.alphabet_size()), 0);
    for (Digit d : word.digits()) ++counts[d];
    CompensatedSum sum;
    for (int i = 0; i < sys.alphabet_size(); ++i) {
      sum.add(static_cast<double>(counts[static_cast<std::size_t>(i)]) * sys.branch_value(obs, i));
    }
    return sum.value();
  }
  CompensatedSum sum;
  double y = t;
  for (std::size_t k = word.size(); k-- > 0;) {
    y = sys.inverse(word[k], y);
    sum.add(sys.observable_on_branch(obs, word[k], y));
  }
  return sum.value();
}

DistortionProfile distortion_profile(const CookieCutterSystem& sys, int max_depth, int samples,
                                     std::uint64_t seed) {
  if (max_depth < 1 || samples < 1) {
    throw Error(ErrorKind::invalid_argument, "distortion profile needs depth and samples >= 1");
  }
  DistortionProfile prof;
  const auto l = static_cast<std::uint64_t>(sys.alphabet_size());
  std::vector<SymbolWord> words;
  std::vector<double> tx, tu;
  for (int s = 0; s < samples; ++s) {
    SplitMix64 rng(hash_key(seed, static_cast<std::uint64_t>(s)));
    std::vector<Digit> digits(static_cast<std::size_t>(max_depth + 1));
    for (auto& d : digits) d = static_cast<Digit>(rng.below(l));
    words.emplace_back(std::move(digits));
    tx.push_back(rng.uniform());
    tu.push_back(rng.uniform());
  }
  for (int n = 1; n <= max_depth; ++n) {
    double ratio = 1.0, dl = 1.0, geo = 1.0;
    for (int s = 0; s < samples; ++s) {
      const auto& w = words[static_cast<std::size_t>(s)];
      const SymbolWord head = w.prefix(static_cast<std::size_t>(n));
      // x sits in the deeper cylinder of w, u anywhere in I_n(x).
      const double inner_x = representative(sys, w.suffix_from(static_cast<std::size_t>(n)), tx[s]);
      const double sx = birkhoff_sum_word(sys, Observable::log_abs_tau_prime, head, inner_x);
      const double su = birkhoff_sum_word(sys, Observable::log_abs_tau_prime, head, tu[s]);
      const double r = std::exp(sx - su);
      ratio = std::max({ratio, r, 1.0 / r});
      const double len_n = cylinder_length(sys, head);
      const double v = std::exp(sx) * len_n;
      dl = std::max({dl, v, 1.0 / v});
      const double g = cylinder_length(sys, w.prefix(static_cast<std::size_t>(n + 1))) / len_n;
      geo = std::max({geo, g, 1.0 / g});
    }
    prof.depths.push_back(n);
    prof.derivative_ratio.push_back(ratio);
    prof.derivative_times_length.push_back(dl);
    prof.geometry_ratio.push_back(geo);
  }
  return prof;
}

}  // namespace wtf
