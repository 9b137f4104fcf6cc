#include "wtf/fractal_metrics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "wtf/numeric.hpp"
#include "wtf/parallel.hpp"
#include "wtf/rng.hpp"

namespace wtf {

using nlohmann::json;

std::string provenance_to_json(const CloudProvenance& p) {
  json j;
  j["model_id"] = p.model_id;
  j["theta"] = p.theta;
  j["sampling"] = p.sampling;
  j["depth"] = p.depth;
  j["tol"] = p.tol;
  return j.dump(2);
}

CloudProvenance provenance_from_json(const std::string& text) {
  try {
    const auto j = json::parse(text);
    CloudProvenance p;
    p.model_id = j.at("model_id").get<std::string>();
    p.theta = j.at("theta").get<std::string>();
    p.sampling = j.at("sampling").get<std::string>();
    p.depth = j.at("depth").get<int>();
    p.tol = j.at("tol").get<double>();
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::io_error, std::string("bad provenance: ") + e.what());
  }
}

void write_cloud_csv(const GraphCloud& cloud, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error(ErrorKind::io_error, "cannot write " + path);
  std::fputs("x,y\n", f);
  for (const auto& p : cloud.points) std::fprintf(f, "%.17g,%.17g\n", p.x, p.y);
  const bool ok = std::fclose(f) == 0;
  if (!ok) throw Error(ErrorKind::io_error, "write failed: " + path);
  std::ofstream side(path + ".json", std::ios::binary);
  side << provenance_to_json(cloud.provenance) << '\n';
  if (!side) throw Error(ErrorKind::io_error, "cannot write " + path + ".json");
}

GraphCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot read " + path);
  GraphCloud cloud;
  std::string line;
  if (!std::getline(in, line) || line != "x,y") throw Error(ErrorKind::io_error, "missing x,y header in " + path);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    char* end = nullptr;
    GraphPoint p;
    p.x = std::strtod(line.c_str(), &end);
    if (comma == std::string::npos || end != line.c_str() + comma) {
      throw Error(ErrorKind::io_error, path + ": bad row " + std::to_string(row));
    }
    p.y = std::strtod(line.c_str() + comma + 1, &end);
    if (*end != '\0') throw Error(ErrorKind::io_error, path + ": bad row " + std::to_string(row));
    cloud.points.push_back(p);
  }
  std::ifstream side(path + ".json", std::ios::binary);
  if (side) {
    std::stringstream ss;
    ss << side.rdbuf();
    cloud.provenance = provenance_from_json(ss.str());
  }
  return cloud;
}

GraphCloud sample_graph(const CookieCutterSystem& sys, const ThetaSequence& theta, int depth,
                        int per_cylinder, double tol, bool restrict_to_repeller, std::size_t budget) {
  if (per_cylinder < 1) throw Error(ErrorKind::invalid_argument, "per_cylinder must be positive");
  const std::size_t words = checked_word_count(sys, depth, budget);
  const auto per = static_cast<std::size_t>(per_cylinder);
  if (words > budget / per) {
    throw Error(ErrorKind::budget_exceeded, "graph sample of " + std::to_string(words) + " x " +
                                                std::to_string(per) + " points exceeds budget");
  }
  const std::size_t total = words * per;
  std::vector<double> xs(total);
  if (restrict_to_repeller) {
    parallel_for(words, [&](std::size_t w) {
      const SymbolWord word = word_from_index(w, depth, sys.alphabet_size());
      for (std::size_t j = 0; j < per; ++j) {
        xs[w * per + j] = representative(sys, word, (static_cast<double>(j) + 0.5) / static_cast<double>(per));
      }
    });
    std::sort(xs.begin(), xs.end());
  } else {
    for (std::size_t k = 0; k < total; ++k) xs[k] = static_cast<double>(k) / static_cast<double>(total);
  }
  const auto ys = eval_W_batch(sys, xs, theta, tol);
  GraphCloud cloud;
  cloud.points.resize(total);
  for (std::size_t k = 0; k < total; ++k) cloud.points[k] = {xs[k], ys[k]};
  cloud.provenance = {sys.id(), theta.describe(), restrict_to_repeller ? "repeller" : "grid", depth, tol};
  return cloud;
}

GraphCloud lift_samples(const CookieCutterSystem& sys, const ThetaSequence& theta,
                        std::span<const RepellerSample> samples, double tol) {
  std::vector<double> xs(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) xs[k] = samples[k].x;
  const auto ys = eval_W_batch(sys, xs, theta, tol);
  GraphCloud cloud;
  cloud.points.resize(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) cloud.points[k] = {xs[k], ys[k]};
  const int depth = samples.empty() ? 0 : static_cast<int>(samples.front().word.size());
  cloud.provenance = {sys.id(), theta.describe(), "lift", depth, tol};
  return cloud;
}

namespace {

struct ColumnRun {
  std::int64_t col;
  std::int64_t lo;
  std::int64_t hi;
  bool operator<(const ColumnRun& o) const { return col != o.col ? col < o.col : lo < o.lo; }
};

std::int64_t cell(double v, double r) { return static_cast<std::int64_t>(std::floor(v / r)); }

void push_run(std::vector<ColumnRun>& runs, std::int64_t col, double ya, double yb, double r) {
  const auto a = cell(ya, r);
  const auto b = cell(yb, r);
  runs.push_back({col, std::min(a, b), std::max(a, b)});
}

std::size_t count_boxes(const std::vector<GraphPoint>& pts, double y0, double r, double join,
                        FillPolicy fill) {
  std::vector<ColumnRun> runs;
  runs.reserve(pts.size() * 2);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& p = pts[k];
    const auto col = cell(p.x, r);
    push_run(runs, col, p.y - y0, p.y - y0, r);
    if (fill != FillPolicy::segments || k + 1 == pts.size()) continue;
    const auto& q = pts[k + 1];
    const double dx = q.x - p.x;
    if (!(dx < join)) continue;
    const auto col_q = cell(q.x, r);
    if (col_q == col) {
      push_run(runs, col, p.y - y0, q.y - y0, r);
    } else {
      // crosses one column boundary
      const double xb = static_cast<double>(col_q) * r;
      const double ym = p.y + (q.y - p.y) * (xb - p.x) / dx;
      push_run(runs, col, p.y - y0, ym - y0, r);
      push_run(runs, col_q, ym - y0, q.y - y0, r);
    }
  }
  std::sort(runs.begin(), runs.end());
  std::size_t count = 0;
  std::size_t k = 0;
  while (k < runs.size()) {
    const auto col = runs[k].col;
    auto lo = runs[k].lo;
    auto hi = runs[k].hi;
    ++k;
    for (; k < runs.size() && runs[k].col == col; ++k) {
      if (runs[k].lo > hi) {
        count += static_cast<std::size_t>(hi - lo + 1);
        lo = runs[k].lo;
        hi = runs[k].hi;
      } else {
        hi = std::max(hi, runs[k].hi);
      }
    }
    count += static_cast<std::size_t>(hi - lo + 1);
  }
  return count;
}

}  // namespace

BoxCountResult box_dimension(const GraphCloud& cloud, std::span<const double> scales,
                             const BoxCountOptions& options) {
  if (scales.size() < 6) throw Error(ErrorKind::invalid_argument, "box counting needs at least 6 scales");
  if (cloud.points.empty()) throw Error(ErrorKind::invalid_argument, "empty cloud");
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (!(scales[k] > 0.0) || (k > 0 && !(scales[k] < scales[k - 1]))) {
      throw Error(ErrorKind::invalid_argument, "scales must be positive and strictly decreasing");
    }
  }
  const int lo = options.drop_coarse;
  const int hi = static_cast<int>(scales.size()) - 1 - options.drop_fine;
  if (lo < 0 || options.drop_fine < 0 || hi - lo + 1 < 3) {
    throw Error(ErrorKind::invalid_argument, "fit window keeps fewer than 3 scales");
  }
  std::vector<GraphPoint> pts = cloud.points;
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorKind::invalid_argument, "non-finite point");
  }
  std::sort(pts.begin(), pts.end(), [](const GraphPoint& a, const GraphPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  double y0 = pts.front().y;
  for (const auto& p : pts) y0 = std::min(y0, p.y);

  BoxCountResult res;
  res.scales.assign(scales.begin(), scales.end());
  res.counts.resize(scales.size());
  const double join = scales.back();
  for (std::size_t k = 0; k < scales.size(); ++k) {
    res.counts[k] = count_boxes(pts, y0, scales[k], join, options.fill);
  }
  res.window_lo = lo;
  res.window_hi = hi;
  std::vector<double> lx, ly;
  for (int k = lo; k <= hi; ++k) {
    lx.push_back(-std::log(scales[static_cast<std::size_t>(k)]));
    ly.push_back(std::log(static_cast<double>(res.counts[static_cast<std::size_t>(k)])));
  }
  const auto fit = fit_line(lx, ly);
  res.slope = fit.slope;
  res.stderr_slope = fit.slope_stderr;
  res.r2 = fit.r2;
  const double finest = static_cast<double>(res.counts[static_cast<std::size_t>(hi)]);
  if (static_cast<double>(pts.size()) < 10.0 * finest) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "sparse cloud: %zu points for %.0f occupied boxes at the finest fitted scale",
                  pts.size(), finest);
    res.warnings.emplace_back(buf);
  }
  if (!(fit.r2 >= options.min_r2) || !std::isfinite(fit.slope)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "box-count fit r2 = %.4f, slope = %.4f", fit.r2, fit.slope);
    throw Error(ErrorKind::degenerate_fit, buf);
  }
  return res;
}

double holder_birkhoff(const CookieCutterSystem& sys, double x, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "holder_birkhoff needs n >= 1");
  code_of(sys, x, n);
  return -birkhoff_sum(sys, Observable::log_lambda, x, n) /
         birkhoff_sum(sys, Observable::log_abs_tau_prime, x, n);
}

double holder_birkhoff_word(const CookieCutterSystem& sys, const SymbolWord& word) {
  if (word.empty()) throw Error(ErrorKind::invalid_argument, "holder_birkhoff needs a non-empty word");
  return -birkhoff_sum_word(sys, Observable::log_lambda, word) /
         birkhoff_sum_word(sys, Observable::log_abs_tau_prime, word);
}

namespace {

void check_holder_options(const HolderOscillationOptions& o) {
  if (o.depth_lo < 1 || o.depth_hi < o.depth_lo) throw Error(ErrorKind::invalid_argument, "bad depth range");
  if (!(o.tol > 0.0)) throw Error(ErrorKind::invalid_tolerance, "tolerance must be positive");
}

void check_osc(double osc, double tol, int n) {
  if (!(osc >= 10.0 * tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "osc = %.3g below 10 tol at depth %d; raise probes or use shallower depths",
                  osc, n);
    throw Error(ErrorKind::oscillation_underflow, buf);
  }
}

double reduce(const std::vector<double>& ratios, HolderReduction how) {
  double v = how == HolderReduction::deepest ? ratios.back() : *std::min_element(ratios.begin(), ratios.end());
  if (!(v > 0.0)) v = std::numeric_limits<double>::min();
  return std::min(v, 1.0);
}

HolderOscillationResult holder_with_global(const CookieCutterSystem& sys, const SymbolWord& word,
                                           const ThetaSequence& theta, const HolderOscillationOptions& o,
                                           double osc0) {
  if (word.size() < static_cast<std::size_t>(o.depth_hi)) {
    throw Error(ErrorKind::invalid_argument, "word shorter than the deepest level");
  }
  HolderOscillationResult res;
  res.global_osc = osc0;
  for (int n = o.depth_lo; n <= o.depth_hi; ++n) {
    const SymbolWord w = word.prefix(static_cast<std::size_t>(n));
    const double osc = oscillation_over(sys, w, theta, o.probes, o.tol).osc;
    check_osc(osc, o.tol, n);
    res.depths.push_back(n);
    res.ratios.push_back(std::log(osc / osc0) / std::log(cylinder_length(sys, w)));
  }
  res.value = reduce(res.ratios, o.reduction);
  return res;
}

double global_oscillation(const CookieCutterSystem& sys, const ThetaSequence& theta,
                          const HolderOscillationOptions& o) {
  const double osc0 = oscillation_over(sys, SymbolWord{}, theta, std::max(o.probes, o.global_probes), o.tol).osc;
  check_osc(osc0, o.tol, 0);
  return osc0;
}

}  // namespace

HolderOscillationResult holder_oscillation_word(const CookieCutterSystem& sys, const SymbolWord& word,
                                                const ThetaSequence& theta,
                                                const HolderOscillationOptions& options) {
  check_holder_options(options);
  return holder_with_global(sys, word, theta, options, global_oscillation(sys, theta, options));
}

double holder_oscillation(const CookieCutterSystem& sys, double x, const ThetaSequence& theta,
                          const HolderOscillationOptions& options) {
  check_holder_options(options);
  return holder_oscillation_word(sys, code_of(sys, x, options.depth_hi), theta, options).value;
}

double holder_oscillation_curve(const CookieCutterSystem& sys, const std::function<double(double)>& f,
                                double x, const HolderOscillationOptions& options) {
  check_holder_options(options);
  const SymbolWord word = code_of(sys, x, options.depth_hi);
  const auto osc_over = [&](const SymbolWord& w, int probes) {
    int m = 0;
    std::size_t count = 1;
    while (count < static_cast<std::size_t>(probes)) {
      count *= static_cast<std::size_t>(sys.alphabet_size());
      ++m;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t j = 0; j < count; ++j) {
      auto digits = w.digits();
      const auto tail = word_from_index(j, m, sys.alphabet_size()).digits();
      digits.insert(digits.end(), tail.begin(), tail.end());
      const double v = f(representative(sys, SymbolWord(std::move(digits)), 0.5));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };
  const double osc0 = osc_over(SymbolWord{}, std::max(options.probes, options.global_probes));
  check_osc(osc0, options.tol, 0);
  std::vector<double> ratios;
  for (int n = options.depth_lo; n <= options.depth_hi; ++n) {
    const SymbolWord w = word.prefix(static_cast<std::size_t>(n));
    const double osc = osc_over(w, options.probes);
    check_osc(osc, options.tol, n);
    ratios.push_back(std::log(osc / osc0) / std::log(cylinder_length(sys, w)));
  }
  return reduce(ratios, options.reduction);
}

std::vector<HolderEstimate> holder_estimates(const CookieCutterSystem& sys,
                                             std::span<const SymbolWord> words,
                                             const ThetaSequence& theta, int depth,
                                             const HolderOscillationOptions& options) {
  check_holder_options(options);
  if (depth < 1) throw Error(ErrorKind::invalid_argument, "depth must be positive");
  const double osc0 = global_oscillation(sys, theta, options);
  std::vector<HolderEstimate> out(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto& w = words[k];
    if (w.size() < static_cast<std::size_t>(depth)) throw Error(ErrorKind::invalid_argument, "word too short");
    out[k].x = representative(sys, w.prefix(std::min<std::size_t>(w.size(), static_cast<std::size_t>(sys.resolution_depth()))));
    out[k].depth = depth;
    out[k].birkhoff_value = holder_birkhoff_word(sys, w.prefix(static_cast<std::size_t>(depth)));
    out[k].oscillation_value = holder_with_global(sys, w, theta, options, osc0).value;
  }
  return out;
}

std::vector<EmpiricalSpectrumPoint> empirical_spectrum(const PressureEvaluator& eval,
                                                       std::span<const double> q_grid,
                                                       std::size_t samples_per_q, int birkhoff_depth,
                                                       std::uint64_t seed) {
  if (samples_per_q < 2) throw Error(ErrorKind::invalid_argument, "need at least 2 samples per q");
  if (birkhoff_depth < 1) throw Error(ErrorKind::invalid_argument, "birkhoff depth must be positive");
  const auto& sys = eval.system();
  std::vector<EmpiricalSpectrumPoint> out;
  for (std::size_t k = 0; k < q_grid.size(); ++k) {
    const double q = q_grid[k];
    const double a = A_of_q(eval, q);
    const auto samples = gibbs_sample(eval, spectrum_potential(q, a), birkhoff_depth, samples_per_q,
                                      hash_key(seed, k), GibbsSampleOptions{.point_depth = 1});
    std::vector<double> vals(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) { vals[i] = holder_birkhoff_word(sys, samples[i].word); });
    const double mean = compensated_sum(vals) / static_cast<double>(vals.size());
    CompensatedSum var;
    for (double v : vals) var.add((v - mean) * (v - mean));
    const double n = static_cast<double>(vals.size());
    out.push_back({q, mean, alpha_of_q(eval, q), std::sqrt(var.value() / (n - 1.0) / n)});
  }
  return out;
}

double cloud_distance(const GraphPoint& a, const GraphPoint& b) noexcept {
  return std::hypot(torus_distance(a.x, b.x), a.y - b.y);
}

std::pair<std::size_t, std::size_t> pair_draw(std::size_t n, std::uint64_t seed, std::uint64_t k) noexcept {
  const auto i = static_cast<std::size_t>(hash_key(seed, k, 0) % n);
  auto j = static_cast<std::size_t>(hash_key(seed, k, 1) % (n - 1));
  if (j >= i) ++j;
  return {i, j};
}

CorrelationResult correlation_dimension(const GraphCloud& cloud, std::span<const double> radii,
                                        const CorrelationOptions& options) {
  const std::size_t n = cloud.points.size();
  if (n < 1000) throw Error(ErrorKind::invalid_argument, "correlation dimension needs at least 1000 points");
  if (radii.size() < 5) throw Error(ErrorKind::invalid_argument, "correlation dimension needs at least 5 radii");
  for (double r : radii) {
    if (!(r > 0.0)) throw Error(ErrorKind::invalid_argument, "radii must be positive");
  }
  if (options.max_pairs < 1) throw Error(ErrorKind::invalid_argument, "max_pairs must be positive");
  std::vector<double> dist(options.max_pairs);
  parallel_for(dist.size(), [&](std::size_t k) {
    const auto [i, j] = pair_draw(n, options.seed, k);
    dist[k] = cloud_distance(cloud.points[i], cloud.points[j]);
  });
  std::sort(dist.begin(), dist.end());
  CorrelationResult res;
  res.pairs = dist.size();
  res.radii.assign(radii.begin(), radii.end());
  std::vector<double> lx, ly;
  for (double r : radii) {
    const auto c = static_cast<double>(std::lower_bound(dist.begin(), dist.end(), r) - dist.begin());
    const double frac = c / static_cast<double>(dist.size());
    res.fractions.push_back(frac);
    if (c == 0.0) {
      throw Error(ErrorKind::degenerate_fit, "no sampled pair closer than r = " + std::to_string(r));
    }
    lx.push_back(std::log(r));
    ly.push_back(std::log(frac));
  }
  const auto fit = fit_line(lx, ly);
  res.slope = fit.slope;
  res.stderr_slope = fit.slope_stderr;
  res.r2 = fit.r2;
  if (!(fit.r2 >= options.min_r2)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "correlation fit r2 = %.4f, slope = %.4f", fit.r2, fit.slope);
    throw Error(ErrorKind::degenerate_fit, buf);
  }
  return res;
}

EnergyResult s_energy(const GraphCloud& cloud, double s, std::size_t max_pairs, std::uint64_t seed) {
  if (!(s > 0.0)) throw Error(ErrorKind::invalid_argument, "s must be positive");
  const std::size_t n = cloud.points.size();
  if (n < 2 || max_pairs < 2) throw Error(ErrorKind::invalid_argument, "s_energy needs at least 2 points and 2 pairs");
  std::vector<double> v(max_pairs);
  parallel_for(max_pairs, [&](std::size_t k) {
    const auto [i, j] = pair_draw(n, seed, k);
    v[k] = std::pow(cloud_distance(cloud.points[i], cloud.points[j]), -s);
  });
  const std::size_t half = max_pairs / 2;
  CompensatedSum first;
  for (std::size_t k = 0; k < half; ++k) first.add(v[k]);
  CompensatedSum all = first;
  for (std::size_t k = half; k < max_pairs; ++k) all.add(v[k]);
  EnergyResult res;
  res.pairs = max_pairs;
  res.value = all.value() / static_cast<double>(max_pairs);
  const double prev = first.value() / static_cast<double>(half);
  res.last_relative_change = std::abs(res.value - prev) / std::abs(res.value);
  res.diverged = !std::isfinite(res.value) || !(res.last_relative_change <= 0.1);
  return res;
}

}  // namespace wtf
