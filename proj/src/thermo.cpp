#include "wtf/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>

#include "wtf/numeric.hpp"
#include "wtf/parallel.hpp"
#include "wtf/rng.hpp"

namespace wtf {

namespace {

std::mutex g_table_mutex;

bool fully_branch_constant(const CookieCutterSystem& sys) {
  return sys.affine() && sys.lambda_branch_constant();
}

double branch_mid(const CookieCutterSystem& sys, int i) {
  return 0.5 * (sys.domain(i).lo + sys.domain(i).hi);
}

// Root of a continuous f with f(a) f(b) < 0: Illinois steps with a bisection
// fallback whenever the bracket fails to halve.
double solve_bracketed(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  int side = 0;
  double width = std::abs(b - a);
  int slow = 0;
  for (int iter = 0; iter < 400; ++iter) {
    double c;
    if (slow >= 2) {
      c = 0.5 * (a + b);
      slow = 0;
    } else {
      c = (a * fb - b * fa) / (fb - fa);
      if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    }
    const double fc = f(c);
    if (fc == 0.0) return c;
    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    const double w = std::abs(b - a);
    if (w <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c))) {
      return std::abs(fa) < std::abs(fb) ? a : b;
    }
    slow = (w > 0.5 * width) ? slow + 1 : 0;
    width = std::min(width, w);
  }
  return std::abs(fa) < std::abs(fb) ? a : b;
}

double default_tol(bool exact, const ThermoOptions& o, std::optional<double> tol) {
  if (tol) {
    if (!(*tol > 0.0)) throw Error(ErrorKind::invalid_tolerance, "root tolerance must be positive");
    return *tol;
  }
  return exact ? o.root_tol_exact : o.root_tol_approx;
}

}  // namespace

std::string to_string(const PotentialSpec& pot) {
  std::ostringstream os;
  os.precision(17);
  os << pot.a << "*log|tau'| + " << pot.b << "*log(lambda) + " << pot.c;
  return os.str();
}

PotentialFamily PotentialFamily::s1() { return {{1.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}}; }
PotentialFamily PotentialFamily::s2() { return {{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}; }
PotentialFamily PotentialFamily::a_of_q(double q) { return {{0.0, q, 0.0}, {-1.0, 0.0, 0.0}}; }

PotentialSpec spectrum_potential(double q, double a_q) { return {-a_q, q, 0.0}; }

bool branch_constant(const CookieCutterSystem& sys, const PotentialSpec& pot) {
  return (pot.a == 0.0 || sys.affine()) && (pot.b == 0.0 || sys.lambda_branch_constant());
}

double potential_on_branch(const CookieCutterSystem& sys, const PotentialSpec& pot, int i, double x) {
  double v = pot.c;
  if (pot.a != 0.0) v += pot.a * sys.observable_on_branch(Observable::log_abs_tau_prime, i, x);
  if (pot.b != 0.0) v += pot.b * sys.observable_on_branch(Observable::log_lambda, i, x);
  return v;
}

CylinderTable::CylinderTable(const CookieCutterSystem& sys, int depth, std::size_t budget)
    : depth_(depth), first_level_(std::max(1, depth - 6)) {
  if (depth < 1) throw Error(ErrorKind::invalid_argument, "pressure depth must be at least 1");
  checked_word_count(sys, depth, budget);
  const auto l = static_cast<std::size_t>(sys.alphabet_size());
  std::vector<double> y{0.5}, sa{0.0}, sb{0.0};
  for (int m = 1; m <= depth; ++m) {
    const std::size_t prev = y.size();
    std::vector<double> ny(prev * l), na(prev * l), nb(prev * l);
    parallel_for(prev * l, [&](std::size_t j) {
      const int i = static_cast<int>(j / prev);
      const std::size_t w = j % prev;
      const double x = sys.inverse(i, y[w]);
      ny[j] = x;
      na[j] = sa[w] + sys.observable_on_branch(Observable::log_abs_tau_prime, i, x);
      nb[j] = sb[w] + sys.observable_on_branch(Observable::log_lambda, i, x);
    });
    y.swap(ny);
    sa.swap(na);
    sb.swap(nb);
    if (m >= first_level_) {
      s_tau_.push_back(sa);
      s_lambda_.push_back(sb);
    }
  }
}

const std::vector<double>& CylinderTable::sum_log_derivative(int m) const {
  if (m < first_level_ || m > depth_) throw Error(ErrorKind::invalid_argument, "level not stored");
  return s_tau_[static_cast<std::size_t>(m - first_level_)];
}

const std::vector<double>& CylinderTable::sum_log_lambda(int m) const {
  if (m < first_level_ || m > depth_) throw Error(ErrorKind::invalid_argument, "level not stored");
  return s_lambda_[static_cast<std::size_t>(m - first_level_)];
}

double CylinderTable::log_partition(const PotentialSpec& pot, int m) const {
  const auto& sa = sum_log_derivative(m);
  const auto& sb = sum_log_lambda(m);
  std::vector<double> v(sa.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = pot.a * sa[j] + pot.b * sb[j] + pot.c * m;
  return log_sum_exp(v);
}

std::vector<double> CylinderTable::weights(const PotentialSpec& pot, int m) const {
  const auto& sa = sum_log_derivative(m);
  const auto& sb = sum_log_lambda(m);
  std::vector<double> v(sa.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = pot.a * sa[j] + pot.b * sb[j] + pot.c * m;
  const double z = log_sum_exp(v);
  for (auto& e : v) e = std::exp(e - z);
  return v;
}

PressureEvaluator::PressureEvaluator(const CookieCutterSystem& sys, ThermoOptions options)
    : sys_(std::make_shared<const CookieCutterSystem>(sys)), options_(options) {
  if (options_.depth < 1) throw Error(ErrorKind::invalid_argument, "pressure depth must be at least 1");
}

const CylinderTable& PressureEvaluator::table() const {
  std::lock_guard lock(g_table_mutex);
  if (!table_) table_ = std::make_shared<const CylinderTable>(*sys_, options_.depth, options_.budget);
  return *table_;
}

PressureEstimate PressureEvaluator::operator()(const PotentialSpec& pot) const {
  const int n = options_.depth;
  if (branch_constant(*sys_, pot)) {
    std::vector<double> phi;
    for (int i = 0; i < sys_->alphabet_size(); ++i) {
      phi.push_back(potential_on_branch(*sys_, pot, i, branch_mid(*sys_, i)));
    }
    return PressureEstimate{log_sum_exp(phi), n, 0.0, true};
  }
  const auto& t = table();
  std::vector<double> logz;
  for (int m = t.first_level(); m <= n; ++m) logz.push_back(t.log_partition(pot, m));
  auto at = [&](int m) { return logz[static_cast<std::size_t>(m - t.first_level())]; };
  double p;
  if (n - 6 >= t.first_level()) {
    const double d0 = 0.5 * (at(n - 4) - at(n - 6));
    const double d1 = 0.5 * (at(n - 2) - at(n - 4));
    const double d2 = 0.5 * (at(n) - at(n - 2));
    const double step1 = d2 - d1;
    const double step0 = d1 - d0;
    const double denom = step1 - step0;
    p = d2;
    if (std::abs(step0) > 0.0 && denom != 0.0 && std::abs(step1 / step0) < 1.0) {
      const double corr = step1 * step1 / denom;
      if (std::isfinite(corr)) p = d2 - corr;
    }
  } else {
    p = at(n) / n;
  }
  double err = 0.0;
  for (int m = t.first_level(); m <= n; ++m) err = std::max(err, std::abs(at(m) - m * p));
  return PressureEstimate{p, n, err / n, false};
}

PressureEstimate pressure(const CookieCutterSystem& sys, const PotentialSpec& pot, int depth,
                          std::size_t budget) {
  ThermoOptions o;
  o.depth = depth;
  o.budget = budget;
  if (!branch_constant(sys, pot)) checked_word_count(sys, depth, budget);
  return PressureEvaluator(sys, o)(pot);
}

double bowen_root(const PressureEvaluator& eval, const PotentialFamily& family, Bracket bracket,
                  std::optional<double> tol) {
  if (!(bracket.lo < bracket.hi)) throw Error(ErrorKind::invalid_argument, "bracket must satisfy lo < hi");
  const auto plo = eval(family.at(bracket.lo));
  const auto phi = eval(family.at(bracket.hi));
  const bool exact = plo.exact && phi.exact;
  const double t = default_tol(exact, eval.options(), tol);
  if (std::abs(phi.value - plo.value) < 1e-12 * (bracket.hi - bracket.lo)) {
    throw Error(ErrorKind::too_flat, "pressure does not vary along the family");
  }
  if ((plo.value > 0.0) == (phi.value > 0.0) && plo.value != 0.0 && phi.value != 0.0) {
    throw Error(ErrorKind::no_sign_change, "P = " + std::to_string(plo.value) + " and " +
                                               std::to_string(phi.value) + " on [" +
                                               std::to_string(bracket.lo) + ", " +
                                               std::to_string(bracket.hi) + "]");
  }
  auto f = [&](double s) { return eval(family.at(s)).value; };
  const double root = solve_bracketed(f, bracket.lo, bracket.hi, plo.value, phi.value);
  const double residual = f(root);
  if (!(std::abs(residual) <= t)) {
    throw Error(ErrorKind::no_convergence, "residual pressure " + std::to_string(residual) +
                                               " exceeds tolerance");
  }
  return root;
}

double bowen_root_auto(const PressureEvaluator& eval, const PotentialFamily& family, Bracket start,
                       std::optional<double> tol) {
  double lo = start.lo, hi = start.hi;
  double flo = eval(family.at(lo)).value;
  double fhi = eval(family.at(hi)).value;
  double width = hi - lo;
  for (int k = 0; k < 60 && (flo > 0.0) == (fhi > 0.0) && flo != 0.0; ++k) {
    if (std::abs(fhi - flo) < 1e-12 * (hi - lo)) break;
    const bool decreasing = fhi < flo;
    // Move the end that points towards the root.
    if ((flo > 0.0) == decreasing) {
      lo = hi;
      flo = fhi;
      hi += width;
      fhi = eval(family.at(hi)).value;
    } else {
      hi = lo;
      fhi = flo;
      lo -= width;
      flo = eval(family.at(lo)).value;
    }
    width *= 2.0;
  }
  return bowen_root(eval, family, {lo, hi}, tol);
}

GraphDimensionPrediction graph_dimension_prediction(const PressureEvaluator& eval) {
  GraphDimensionPrediction p;
  p.s1 = bowen_root_auto(eval, PotentialFamily::s1(), {0.0, 2.0});
  p.s2 = bowen_root_auto(eval, PotentialFamily::s2(), {0.0, 2.0});
  p.box_dim = p.s1;
  p.min_is_s1 = p.s1 <= p.s2;
  p.hausdorff_upper = std::min(p.s1, p.s2);
  return p;
}

namespace {

double solve_A(const PressureEvaluator& eval, double q, std::optional<double> tol) {
  return bowen_root_auto(eval, PotentialFamily::a_of_q(q), {0.0, 1.0}, tol);
}

}  // namespace

double A_of_q(const PressureEvaluator& eval, double q, std::optional<double> tol) {
  if (!(std::abs(q) <= eval.options().q_max)) {
    throw Error(ErrorKind::invalid_argument, "|q| exceeds q_max = " + std::to_string(eval.options().q_max));
  }
  return solve_A(eval, q, tol);
}

double alpha_of_q(const PressureEvaluator& eval, double q, double* discrepancy) {
  const double h = eval.options().fd_step;
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "fd_step must be positive");
  auto central = [&](double step) {
    return -(solve_A(eval, q + step, std::nullopt) - solve_A(eval, q - step, std::nullopt)) / (2.0 * step);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  if (discrepancy) *discrepancy = std::abs(coarse - fine);
  return (4.0 * fine - coarse) / 3.0;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2) return {lo};
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  return g;
}

SpectrumCurve spectrum(const PressureEvaluator& eval, const std::vector<double>& q_grid) {
  if (q_grid.empty()) throw Error(ErrorKind::invalid_argument, "empty q grid");
  if (!std::is_sorted(q_grid.begin(), q_grid.end())) {
    throw Error(ErrorKind::invalid_argument, "q grid must be sorted");
  }
  for (double q : q_grid) {
    if (!(std::abs(q) <= eval.options().q_max)) {
      throw Error(ErrorKind::invalid_argument, "|q| exceeds q_max");
    }
  }
  const auto& sys = eval.system();
  if (!fully_branch_constant(sys)) eval.table();
  SpectrumCurve c;
  c.samples.resize(q_grid.size());
  parallel_for(q_grid.size(), [&](std::size_t k) {
    auto& s = c.samples[k];
    s.q = q_grid[k];
    s.a_q = solve_A(eval, s.q, std::nullopt);
    s.alpha = alpha_of_q(eval, s.q, &s.fd_discrepancy);
    s.d = s.q * s.alpha + s.a_q;
  });
  c.alpha_c = alpha_of_q(eval, 0.0);
  c.a0 = solve_A(eval, 0.0, std::nullopt);
  c.alpha_min = std::numeric_limits<double>::infinity();
  c.alpha_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : c.samples) {
    c.alpha_min = std::min(c.alpha_min, s.alpha);
    c.alpha_max = std::max(c.alpha_max, s.alpha);
  }
  if (fully_branch_constant(sys)) {
    c.exact_endpoints = true;
    c.alpha_min = std::numeric_limits<double>::infinity();
    c.alpha_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < sys.alphabet_size(); ++i) {
      const double r = -sys.branch_value(Observable::log_lambda, i) /
                       sys.branch_value(Observable::log_abs_tau_prime, i);
      c.alpha_min = std::min(c.alpha_min, r);
      c.alpha_max = std::max(c.alpha_max, r);
    }
  }
  c.degenerate_flag = c.alpha_max - c.alpha_min < eval.options().degenerate_threshold;
  // A_q = A_0 - q alpha_c for all q iff alpha_c log|tau'| + log lambda is a coboundary.
  for (double q : {-1.0, 1.0}) {
    const double r = eval(PotentialSpec{-c.a0 + q * c.alpha_c, q, 0.0}).value;
    (q < 0 ? c.cohomology_residual_minus : c.cohomology_residual_plus) = r;
  }
  return c;
}

PotentialSpec normalised(const PressureEvaluator& eval, const PotentialSpec& pot) {
  PotentialSpec out = pot;
  out.c -= eval(pot).value;
  return out;
}

namespace {

void require_normalised(const PressureEvaluator& eval, const PotentialSpec& pot) {
  const double p = eval(pot).value;
  if (!(std::abs(p) <= 1e-6)) {
    throw Error(ErrorKind::not_normalised, "pressure " + std::to_string(p) + " is not zero");
  }
}

std::vector<double> branch_probabilities(const CookieCutterSystem& sys, const PotentialSpec& pot) {
  std::vector<double> phi;
  for (int i = 0; i < sys.alphabet_size(); ++i) phi.push_back(potential_on_branch(sys, pot, i, branch_mid(sys, i)));
  const double z = log_sum_exp(phi);
  for (auto& v : phi) v = std::exp(v - z);
  return phi;
}

std::vector<double> cumulative(const std::vector<double>& p, std::size_t begin, std::size_t count) {
  std::vector<double> c(count);
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    acc += p[begin + i];
    c[i] = acc;
  }
  for (auto& v : c) v /= acc;
  c.back() = 1.0;
  return c;
}

std::size_t draw(const std::vector<double>& cum, double u) {
  return static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

}  // namespace

std::vector<double> gibbs_weights(const PressureEvaluator& eval, const PotentialSpec& pot, int depth) {
  require_normalised(eval, pot);
  const auto& sys = eval.system();
  const std::size_t count = checked_word_count(sys, depth, eval.options().budget);
  if (branch_constant(sys, pot)) {
    const auto p = branch_probabilities(sys, pot);
    std::vector<double> w(count, 1.0);
    parallel_for(count, [&](std::size_t j) {
      const auto word = word_from_index(j, depth, sys.alphabet_size());
      double v = 1.0;
      for (Digit d : word.digits()) v *= p[d];
      w[j] = v;
    });
    return w;
  }
  return CylinderTable(sys, depth, eval.options().budget).weights(pot, depth);
}

std::vector<RepellerSample> gibbs_sample(const PressureEvaluator& eval, const PotentialSpec& pot,
                                         int depth, std::size_t count, std::uint64_t seed,
                                         const GibbsSampleOptions& options) {
  if (depth < 1) throw Error(ErrorKind::invalid_argument, "sample depth must be at least 1");
  require_normalised(eval, pot);
  const auto& sys = eval.system();
  const auto l = static_cast<std::size_t>(sys.alphabet_size());
  const int point_depth =
      std::min(depth, options.point_depth > 0 ? options.point_depth : sys.resolution_depth());

  std::vector<double> first;                 // cumulative over the first block
  std::vector<std::vector<double>> next;     // cumulative of the next digit given a suffix
  int k = 1;
  if (branch_constant(sys, pot)) {
    first = cumulative(branch_probabilities(sys, pot), 0, l);
  } else {
    k = std::max(1, std::min(options.markov_order, depth));
    const auto w = CylinderTable(sys, k, eval.options().budget).weights(pot, k);
    first = cumulative(w, 0, w.size());
    const std::size_t suffixes = w.size() / l;
    next.resize(suffixes);
    for (std::size_t u = 0; u < suffixes; ++u) next[u] = cumulative(w, u * l, l);
  }

  std::vector<RepellerSample> out(count);
  parallel_for(count, [&](std::size_t s) {
    SplitMix64 rng(hash_key(seed, static_cast<std::uint64_t>(s)));
    std::vector<Digit> digits(static_cast<std::size_t>(depth));
    if (next.empty()) {
      for (auto& d : digits) d = static_cast<Digit>(draw(first, rng.uniform()));
    } else {
      std::size_t block = draw(first, rng.uniform());
      const std::size_t modulus = first.size() / l;  // l^(k-1)
      for (int j = k; j-- > 0;) {
        digits[static_cast<std::size_t>(j)] = static_cast<Digit>(block % l);
        block /= l;
      }
      std::size_t suffix = 0;
      for (int j = 1; j < k; ++j) suffix = suffix * l + digits[static_cast<std::size_t>(j)];
      for (int j = k; j < depth; ++j) {
        const auto d = draw(next[suffix], rng.uniform());
        digits[static_cast<std::size_t>(j)] = static_cast<Digit>(d);
        suffix = (suffix * l + d) % modulus;
      }
    }
    SymbolWord word(std::move(digits));
    out[s].x = representative(sys, word.prefix(static_cast<std::size_t>(point_depth)), 0.5);
    out[s].word = std::move(word);
  });
  return out;
}

MeasureStats measure_stats(const PressureEvaluator& eval, const PotentialSpec& pot, int depth) {
  require_normalised(eval, pot);
  const auto& sys = eval.system();
  MeasureStats st;
  if (fully_branch_constant(sys)) {
    const auto p = branch_probabilities(sys, pot);
    CompensatedSum h, chi, mll;
    for (int i = 0; i < sys.alphabet_size(); ++i) {
      const double pi = p[static_cast<std::size_t>(i)];
      if (pi > 0.0) h.add(-pi * std::log(pi));
      chi.add(pi * sys.branch_value(Observable::log_abs_tau_prime, i));
      mll.add(pi * sys.branch_value(Observable::log_lambda, i));
    }
    st.entropy = h.value();
    st.lyapunov = chi.value();
    st.mean_log_lambda = mll.value();
    st.exact = true;
  } else {
    const CylinderTable table(sys, depth, eval.options().budget);
    const auto w = table.weights(pot, depth);
    const auto& sa = table.sum_log_derivative(depth);
    const auto& sb = table.sum_log_lambda(depth);
    CompensatedSum h, chi, mll;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] > 0.0) h.add(-w[j] * std::log(w[j]));
      chi.add(w[j] * sa[j]);
      mll.add(w[j] * sb[j]);
    }
    st.entropy = h.value() / depth;
    st.lyapunov = chi.value() / depth;
    st.mean_log_lambda = mll.value() / depth;
  }
  st.dim = st.entropy / st.lyapunov;
  st.alpha = -st.mean_log_lambda / st.lyapunov;
  return st;
}

double lifted_dim_prediction(const MeasureStats& s) {
  return std::min(s.dim + 1.0 + s.mean_log_lambda / s.lyapunov, s.entropy / (-s.mean_log_lambda));
}

double jin_upper(double d, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::invalid_argument, "alpha must be positive");
  return std::min(d + 1.0 - alpha, d / alpha);
}

MoranOracle::MoranOracle(const CookieCutterSystem& sys) {
  if (!fully_branch_constant(sys)) {
    throw Error(ErrorKind::not_branch_constant, "Moran oracle needs affine branches and branch-constant lambda");
  }
  for (int i = 0; i < sys.alphabet_size(); ++i) {
    r_.push_back(1.0 / std::abs(sys.branch_derivative(i, 0.0)));
    lam_.push_back(sys.lambda_on_branch(i, branch_mid(sys, i)));
  }
}

MoranOracle::MoranOracle(std::vector<double> ratios, std::vector<double> lambdas)
    : r_(std::move(ratios)), lam_(std::move(lambdas)) {
  if (r_.size() != lam_.size() || r_.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "Moran oracle needs matching ratio and lambda lists");
  }
}

double MoranOracle::pressure(const PotentialSpec& pot) const {
  double z = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    z += std::exp(pot.a * std::log(1.0 / r_[i]) + pot.b * std::log(lam_[i]) + pot.c);
  }
  return std::log(z);
}

namespace {

// Root of a decreasing function by plain bisection.
double bisect_decreasing(const std::function<double(double)>& f) {
  double lo = -1.0, hi = 1.0;
  while (f(lo) < 0.0) lo *= 2.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int k = 0; k < 200 && hi - lo > 1e-13; ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double MoranOracle::A_of_q(double q) const {
  return bisect_decreasing([&](double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) s += std::pow(r_[i], a) * std::pow(lam_[i], q);
    return s - 1.0;
  });
}

double MoranOracle::s1() const {
  return bisect_decreasing([&](double s) {
    double v = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) v += std::pow(r_[i], s - 1.0) * lam_[i];
    return v - 1.0;
  });
}

double MoranOracle::s2() const {
  return bisect_decreasing([&](double s) {
    double v = 0.0;
    for (double l : lam_) v += std::pow(l, s);
    return v - 1.0;
  });
}

double MoranOracle::alpha_of_q(double q) const {
  const double a = A_of_q(q);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const double p = std::pow(r_[i], a) * std::pow(lam_[i], q);
    num += p * -std::log(lam_[i]);
    den += p * std::log(1.0 / r_[i]);
  }
  return num / den;
}

double MoranOracle::alpha_min() const {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r_.size(); ++i) v = std::min(v, std::log(lam_[i]) / std::log(r_[i]));
  return v;
}

double MoranOracle::alpha_max() const {
  double v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r_.size(); ++i) v = std::max(v, std::log(lam_[i]) / std::log(r_[i]));
  return v;
}

}  // namespace wtf
