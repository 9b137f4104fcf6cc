#include "wtf/models.hpp"

#include <cmath>
#include <numbers>

namespace wtf {

std::vector<BranchSpec> l_adic_branches(int l) {
  if (l < 2 || l > kMaxAlphabet) throw Error(ErrorKind::config_error, "l_adic needs 2 <= l <= 256");
  std::vector<BranchSpec> out;
  for (int i = 0; i < l; ++i) {
    auto b = BranchSpec::affine(static_cast<double>(l), -static_cast<double>(i));
    // Snap endpoints onto the exact partition i/l.
    b.domain = Interval{static_cast<double>(i) / l, static_cast<double>(i + 1) / l};
    out.push_back(b);
  }
  return out;
}

std::vector<BranchSpec> doubling_sine_branches(double epsilon) {
  if (!std::isfinite(epsilon)) throw Error(ErrorKind::config_error, "epsilon must be finite");
  constexpr double w = 2.0 * std::numbers::pi;
  std::vector<BranchSpec> out;
  for (int i = 0; i < 2; ++i) {
    const double shift = static_cast<double>(i);
    AnalyticMap map{"doubling_sine",
                    [epsilon, shift](double x) { return 2.0 * x + epsilon * std::sin(w * x) - shift; },
                    [epsilon](double x) { return 2.0 + epsilon * w * std::cos(w * x); }};
    out.push_back(BranchSpec::analytic(Interval{0.5 * shift, 0.5 * shift + 0.5}, std::move(map)));
  }
  return out;
}

SystemSpec reference_spec(std::string_view id) {
  SystemSpec s;
  s.id = std::string(id);
  if (id == "M1") {
    s.branches = l_adic_branches(2);
    s.lambda = ConstantScale{0.7};
  } else if (id == "M2" || id == "M2-lambda0.3" || id == "M4") {
    const double r = 0.35;
    s.branches = {BranchSpec::affine(1.0 / r, 0.0), BranchSpec::affine(1.0 / r, -(1.0 - r) / r)};
    s.lambda = ConstantScale{id == "M2" ? 0.45 : id == "M4" ? std::sqrt(r) : 0.3};
  } else if (id == "M3") {
    s.branches = {BranchSpec::affine(1.0 / 0.3, 0.0), BranchSpec::affine(1.0 / 0.45, -0.55 / 0.45)};
    s.lambda = BranchScale{{0.4, 0.7}};
  } else if (id == "M5") {
    s.branches = doubling_sine_branches(0.05);
    s.lambda = ConstantScale{0.7};
  } else {
    throw Error(ErrorKind::config_error, "unknown reference model '" + std::string(id) + "'");
  }
  return s;
}

CookieCutterSystem reference_model(std::string_view id) { return validate_system(reference_spec(id)); }

const std::vector<std::string>& reference_ids() {
  static const std::vector<std::string> ids{"M1", "M2", "M3", "M4", "M5"};
  return ids;
}

}  // namespace wtf
