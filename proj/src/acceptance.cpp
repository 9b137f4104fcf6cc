#include "wtf/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "wtf/cookie_dynamics.hpp"
#include "wtf/fractal_metrics.hpp"
#include "wtf/graph_function.hpp"
#include "wtf/models.hpp"
#include "wtf/numeric.hpp"
#include "wtf/rng.hpp"
#include "wtf/thermo.hpp"

namespace wtf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Collects checks of one criterion.
class Ledger {
 public:
  explicit Ledger(CriterionResult& r) : r_(r) {}

  void near(const std::string& what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s = %.9g, want %.9g +- %.3g", what.c_str(), got, want, tol);
      r_.failures.emplace_back(buf);
    }
  }
  void at_most(const std::string& what, double got, double bound) {
    if (!(got <= bound)) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s = %.6g exceeds %.6g", what.c_str(), got, bound);
      r_.failures.emplace_back(buf);
    }
  }
  void within(const std::string& what, double got, double lo, double hi) {
    if (!(got >= lo && got <= hi)) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s = %.6g outside [%.6g, %.6g]", what.c_str(), got, lo, hi);
      r_.failures.emplace_back(buf);
    }
  }
  void truth(const std::string& what, bool ok) {
    if (!ok) r_.failures.push_back(what);
  }
  void note(const std::string& s) {
    if (!r_.summary.empty()) r_.summary += "; ";
    r_.summary += s;
  }

 private:
  CriterionResult& r_;
};

SymbolWord random_word(std::uint64_t seed, int n, int alphabet) {
  SplitMix64 rng(seed);
  std::vector<Digit> d(static_cast<std::size_t>(n));
  for (auto& v : d) v = static_cast<Digit>(rng.below(static_cast<std::uint64_t>(alphabet)));
  return SymbolWord(std::move(d));
}

std::vector<double> ladder(int coarse, int fine) {
  std::vector<double> s;
  for (int k = coarse; k <= fine; ++k) s.push_back(std::ldexp(1.0, -k));
  return s;
}

void pressure_oracle(Ledger& c) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const char* id : {"M1", "M2", "M3", "M4"}) {
    const auto sys = reference_model(id);
    const PressureEvaluator eval(sys);
    const MoranOracle oracle(sys);
    const auto pred = graph_dimension_prediction(eval);
    const std::string m(id);
    c.near(m + " s1", pred.s1, oracle.s1(), 1e-6);
    c.near(m + " s2", pred.s2, oracle.s2(), 1e-6);
    worst = std::max({worst, std::abs(pred.s1 - oracle.s1()), std::abs(pred.s2 - oracle.s2())});
    for (int q = -10; q <= 10; ++q) {
      const double a = A_of_q(eval, q);
      const double a_ref = oracle.A_of_q(q);
      c.near(m + " A_" + std::to_string(q), a, a_ref, 1e-6);
      const PotentialSpec pots[] = {spectrum_potential(q, a_ref), {-0.4, static_cast<double>(q), 0.2}};
      for (const auto& pot : pots) {
        const double p = eval(pot).value;
        c.near(m + " P(" + to_string(pot) + ")", p, oracle.pressure(pot), 1e-6);
        worst = std::max(worst, std::abs(p - oracle.pressure(pot)));
      }
      worst = std::max(worst, std::abs(a - a_ref));
    }
  }
  const double t = seconds_since(t0);
  c.at_most("runtime [s]", t, 1.0);
  c.note("max deviation " + fmt("%.2e", worst));
}

void bowen_roots(Ledger& c) {
  const auto p1 = graph_dimension_prediction(PressureEvaluator(reference_model("M1")));
  const auto p2 = graph_dimension_prediction(PressureEvaluator(reference_model("M2")));
  const auto p4 = graph_dimension_prediction(PressureEvaluator(reference_model("M4")));
  c.near("M1 s1", p1.s1, 1.4854268, 1e-6);
  c.near("M1 s2", p1.s2, 1.9433575, 1e-6);
  c.near("M2 s1", p2.s1, 0.8996390, 1e-6);
  c.near("M2 s2", p2.s2, 0.8680528, 1e-6);
  c.truth("M2 min is s2", !p2.min_is_s1 && p2.hausdorff_upper == p2.s2 && p2.s2 < p2.s1);
  c.near("M4 s1", p4.s1, 1.1602518, 1e-6);
  c.note("M1 " + fmt("%.7f", p1.s1) + "/" + fmt("%.7f", p1.s2) + ", M2 " + fmt("%.7f", p2.s1) + "/" +
         fmt("%.7f", p2.s2) + ", M4 " + fmt("%.7f", p4.s1));
}

void nonlinear_pressure(Ledger& c) {
  const auto t0 = Clock::now();
  const auto m5 = reference_model("M5");
  const auto p = pressure(m5, {-1.0, 0.0, 0.0}, 14);
  const double t = seconds_since(t0);
  c.at_most("|P(-log|tau'|)|", std::abs(p.value), 2e-3);
  c.truth("extrapolated estimate", !p.exact && p.depth == 14);
  c.at_most("runtime [s]", t, 30.0);
  c.note("P = " + fmt("%.3e", p.value) + " (bound " + fmt("%.1e", p.error_bound) + ")");
}

void box_dimensions(Ledger& c) {
  const auto scales = ladder(6, 14);
  const auto m1 = reference_model("M1");
  const auto t0 = Clock::now();
  const auto r1 = box_dimension(sample_graph(m1, ThetaSequence::zeros(), 20, 1, 1e-12, false), scales);
  c.at_most("M1 runtime [s]", seconds_since(t0), 120.0);
  c.near("M1 slope", r1.slope, 1.4854, 0.05);

  const auto m2 = reference_model("M2");
  const auto r2 = box_dimension(sample_graph(m2, ThetaSequence::zeros(), 16, 1, 1e-12, true), scales);
  c.near("M2 restricted slope", r2.slope, 0.8996, 0.07);

  std::vector<double> seeded;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto r = box_dimension(sample_graph(m1, ThetaSequence::iid_uniform(seed), 20, 1, 1e-12, false), scales);
    c.near("M1 seed " + std::to_string(seed) + " slope", r.slope, 1.4854, 0.05);
    seeded.push_back(r.slope);
  }
  for (std::size_t i = 0; i < seeded.size(); ++i) {
    for (std::size_t j = i + 1; j < seeded.size(); ++j) {
      c.at_most("|slope(seed " + std::to_string(i + 1) + ") - slope(seed " + std::to_string(j + 1) + ")|",
                std::abs(seeded[i] - seeded[j]), 0.03);
    }
  }
  c.note("M1 " + fmt("%.4f", r1.slope) + ", M2 " + fmt("%.4f", r2.slope) + ", seeds " + fmt("%.4f", seeded[0]) +
         " " + fmt("%.4f", seeded[1]) + " " + fmt("%.4f", seeded[2]));
}

void spectrum_identities(Ledger& c) {
  const auto grid = uniform_grid(-10.0, 10.0, 81);
  const PressureEvaluator m3(reference_model("M3"));
  const auto s = spectrum(m3, grid);
  c.near("M3 alpha_min", s.alpha_min, 0.4466766, 1e-4);
  c.near("M3 alpha_max", s.alpha_max, 0.7610569, 1e-4);
  c.near("M3 alpha_c", s.alpha_c, 0.6137, 1e-3);
  c.truth("M3 not degenerate", !s.degenerate_flag);
  // q = 0 is grid point 40
  const auto& mid = s.samples[40];
  c.near("D(alpha_c) - A_0", mid.d, s.a0, 1e-3);
  const auto& lo = s.samples[39];
  const auto& hi = s.samples[41];
  const double dprime = (hi.d - lo.d) / (hi.alpha - lo.alpha);
  c.at_most("|D'(alpha_c)|", std::abs(dprime), 1e-2);
  int concavity_violations = 0;
  for (std::size_t k = 1; k + 1 < s.samples.size(); ++k) {
    const auto& a = s.samples[k - 1];
    const auto& b = s.samples[k];
    const auto& e = s.samples[k + 1];
    if (e.a_q - 2 * b.a_q + a.a_q < -1e-6) ++concavity_violations;
    const double d0 = a.alpha - b.alpha;
    const double d1 = b.alpha - e.alpha;
    if (d0 > 1e-9 && d1 > 1e-9 && (a.d - b.d) / d0 - (b.d - e.d) / d1 > 1e-6) ++concavity_violations;
  }
  c.truth("concavity second differences", concavity_violations == 0);

  const auto s4 = spectrum(PressureEvaluator(reference_model("M4")), grid);
  c.truth("M4 degenerate", s4.degenerate_flag);
  c.near("M4 alpha_c", s4.alpha_c, 0.5, 1e-6);
  const auto s1 = spectrum(PressureEvaluator(reference_model("M1")), grid);
  c.truth("M1 degenerate", s1.degenerate_flag);
  c.near("M1 alpha_c", s1.alpha_c, 0.5145732, 1e-6);
  c.note("M3 [" + fmt("%.7f", s.alpha_min) + ", " + fmt("%.7f", s.alpha_max) + "], alpha_c " +
         fmt("%.5f", s.alpha_c) + ", D'(alpha_c) " + fmt("%.1e", dprime));
}

void gibbs_chain(Ledger& c) {
  const auto t0 = Clock::now();
  const PressureEvaluator m3(reference_model("M3"));
  const std::vector<double> qs{-2.0, -1.0, 0.0, 1.0, 2.0};
  double worst_dim = 0.0, worst_alpha = 0.0, worst_hat = 0.0;
  for (double q : qs) {
    const double a = A_of_q(m3, q);
    const double alpha = alpha_of_q(m3, q);
    const auto st = measure_stats(m3, spectrum_potential(q, a), 12);
    const std::string tag = "q=" + fmt("%g", q);
    c.near(tag + " dim", st.dim, q * alpha + a, 2e-3);
    c.near(tag + " alpha", st.alpha, alpha, 1e-3);
    worst_dim = std::max(worst_dim, std::abs(st.dim - (q * alpha + a)));
    worst_alpha = std::max(worst_alpha, std::abs(st.alpha - alpha));
  }
  const auto emp = empirical_spectrum(m3, qs, 10000, 2000, 2024);
  for (const auto& p : emp) {
    c.near("alpha_hat(" + fmt("%g", p.q) + ")", p.alpha_hat, p.alpha_predicted, 0.01);
    worst_hat = std::max(worst_hat, std::abs(p.alpha_hat - p.alpha_predicted));
  }
  c.at_most("runtime [s]", seconds_since(t0), 60.0);
  c.note("max |dim - D| " + fmt("%.1e", worst_dim) + ", max |alpha - alpha(q)| " + fmt("%.1e", worst_alpha) +
         ", max |alpha_hat - alpha(q)| " + fmt("%.4f", worst_hat));
}

void lifted_predictor(Ledger& c) {
  const PressureEvaluator m1(reference_model("M1"));
  const auto p1 = graph_dimension_prediction(m1);
  const double l1 = lifted_dim_prediction(measure_stats(m1, PotentialFamily::s1().at(p1.s1), 10));
  c.near("M1 nu_1 lift", l1, 1.4854268, 1e-6);
  const PressureEvaluator m2(reference_model("M2"));
  const auto p2 = graph_dimension_prediction(m2);
  const double l2 = lifted_dim_prediction(measure_stats(m2, PotentialFamily::s2().at(p2.s2), 10));
  c.near("M2 nu_2 lift", l2, 0.8680528, 1e-6);
  double worst = 0.0;
  for (const char* id : {"M2", "M3"}) {
    const PressureEvaluator eval(reference_model(id));
    for (double q : uniform_grid(-10.0, 10.0, 21)) {
      const double a = A_of_q(eval, q);
      const double alpha = alpha_of_q(eval, q);
      const double lift = lifted_dim_prediction(measure_stats(eval, spectrum_potential(q, a), 10));
      const double jin = jin_upper(q * alpha + a, alpha);
      c.near(std::string(id) + " lift vs jin at q=" + fmt("%g", q), lift, jin, 1e-6);
      worst = std::max(worst, std::abs(lift - jin));
    }
  }
  c.note("M1 " + fmt("%.7f", l1) + ", M2 " + fmt("%.7f", l2) + ", max |lift - jin| " + fmt("%.1e", worst));
}

void lifted_probe(Ledger& c) {
  const PressureEvaluator m1(reference_model("M1"));
  const double s1 = graph_dimension_prediction(m1).s1;
  const auto nu1 = gibbs_sample(m1, PotentialFamily::s1().at(s1), 60, 100000, 13);
  const auto lift = lift_samples(m1.system(), ThetaSequence::iid_uniform(1), nu1, 1e-12);
  const auto r1 = correlation_dimension(lift, ladder(2, 8));
  c.within("M1 lifted correlation dimension", r1.slope, 1.37, 1.60);

  const PressureEvaluator m2(reference_model("M2"));
  const auto base = gibbs_sample(m2, spectrum_potential(0.0, A_of_q(m2, 0.0)), 40, 100000, 11);
  GraphCloud cloud;
  for (const auto& s : base) cloud.points.push_back({s.x, 0.0});
  const auto r2 = correlation_dimension(cloud, ladder(4, 14));
  c.within("M2 base correlation dimension", r2.slope, 0.61, 0.71);
  c.note("M1 lift " + fmt("%.4f", r1.slope) + ", M2 base " + fmt("%.4f", r2.slope));
}

void oscillation_suites(Ledger& c) {
  // band [c_hat, C_hat] of osc / lambda^n, n <= 16
  const std::map<std::string, std::pair<double, double>> band{
      {"M1", {1.0, 16.0}}, {"M2", {0.5, 18.0}}, {"M3", {0.7, 14.0}}};
  for (const auto& [id, b] : band) {
    const auto sys = reference_model(id);
    double lo = 1e300, hi = 0.0;
    for (int th = 0; th < 4; ++th) {
      const auto theta = th == 0 ? ThetaSequence::zeros() : ThetaSequence::iid_uniform(300 + th);
      for (int p = 0; p < 10; ++p) {
        const auto w = random_word(hash_key(43, p), 16, sys.alphabet_size());
        for (int n = 1; n <= 16; ++n) {
          const auto head = w.prefix(static_cast<std::size_t>(n));
          const double osc = oscillation_over(sys, head, theta, 64, 1e-12).osc;
          const double r = osc * std::exp(-birkhoff_sum_word(sys, Observable::log_lambda, head));
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
      }
    }
    c.within(id + " band low", lo, b.first, b.second);
    c.within(id + " band high", hi, b.first, b.second);
  }

  const double tol = 1e-12;
  double worst_skew = 0.0;
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    for (int s = 0; s < 20; ++s) {
      const double x = representative(sys, random_word(hash_key(19, s), 24, sys.alphabet_size()));
      const auto theta = s % 2 ? ThetaSequence::iid_uniform(s) : ThetaSequence::zeros();
      const double direct = eval_W(sys, x, theta, tol).value;
      for (int n : {1, 5, 12, 20}) worst_skew = std::max(worst_skew, std::abs(eval_W_skew(sys, x, theta, n, tol) - direct));
    }
  }
  c.at_most("skew-product invariance", worst_skew, 10 * tol);

  std::string agreement;
  for (const auto& id : reference_ids()) {
    const auto sys = reference_model(id);
    const auto theta = ThetaSequence::zeros();
    const auto verdict = detect_degenerate(sys, theta, {2, 12}).verdict;
    if (verdict == DegeneracyVerdict::degenerate) {
      agreement += " " + id + ":skipped(degenerate)";
      continue;
    }
    std::vector<SymbolWord> words;
    for (int k = 0; k < 100; ++k) words.push_back(random_word(hash_key(2024, k), 40, sys.alphabet_size()));
    const auto est = holder_estimates(sys, words, theta, 30);
    double worst = 0.0;
    int over = 0;
    for (const auto& e : est) {
      const double d = std::abs(e.birkhoff_value - e.oscillation_value);
      worst = std::max(worst, d);
      over += d > 0.03;
    }
    c.at_most(id + " max |birkhoff - oscillation| (" + std::to_string(over) + "/100 over)", worst, 0.03);
    agreement += " " + id + ":" + fmt("%.4f", worst);
  }

  const auto m2 = reference_model("M2");
  const auto theta = ThetaSequence::iid_uniform(9);
  double worst_dq = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = 0.36 + 0.28 * (k + 0.5) / 100.0;
    auto dq = [&](double h) {
      return (eval_W(m2, x + h, theta, 1e-14).value - eval_W(m2, x - h, theta, 1e-14).value) / (2 * h);
    };
    worst_dq = std::max(worst_dq, std::abs(dq(1e-5) - dq(1e-6)));
  }
  c.at_most("M2 gap difference-quotient Cauchy gap", worst_dq, 1e-4);
  c.note("skew " + fmt("%.1e", worst_skew) + ", agreement" + agreement + ", gap dq " + fmt("%.1e", worst_dq));
}

void distortion_suite(Ledger& c) {
  std::string notes;
  for (const char* id : {"M1", "M2", "M5"}) {
    const auto sys = reference_model(id);
    const auto p = distortion_profile(sys, 20, 64, 99);
    std::vector<double> depths(p.depths.begin(), p.depths.end());
    const std::pair<const char*, const std::vector<double>*> families[] = {
        {"derivative_ratio", &p.derivative_ratio},
        {"derivative_times_length", &p.derivative_times_length},
        {"geometry_ratio", &p.geometry_ratio}};
    const double bounds[] = {2.0, 2.0, 4.0};
    notes += std::string(" ") + id + ":";
    for (int f = 0; f < 3; ++f) {
      const auto& v = *families[f].second;
      const double peak = *std::max_element(v.begin(), v.end());
      const double rho = spearman(depths, v);
      const std::string tag = std::string(id) + " " + families[f].first;
      c.at_most(tag + " max", peak, bounds[f]);
      c.at_most(tag + " spearman vs n", rho, 0.2);
      notes += fmt(" %.3f", rho);
    }
  }
  c.note("spearman" + notes);
}

struct Criterion {
  const char* name;
  void (*run)(Ledger&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"pressure_oracle", pressure_oracle},       {"bowen_roots", bowen_roots},
    {"nonlinear_pressure", nonlinear_pressure}, {"box_dimension", box_dimensions},
    {"spectrum_identities", spectrum_identities}, {"gibbs_identity_chain", gibbs_chain},
    {"lifted_predictor", lifted_predictor},     {"lifted_probe", lifted_probe},
    {"oscillation_holder", oscillation_suites}, {"distortion", distortion_suite},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw Error(ErrorKind::invalid_argument, "no criterion " + std::to_string(id));
  const auto& crit = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = crit.name;
  const auto t0 = Clock::now();
  Ledger ledger(r);
  try {
    crit.run(ledger);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("error: ") + e.what());
  }
  r.seconds = seconds_since(t0);
  r.pass = r.failures.empty();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& progress) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int k = 1; k <= kCriterionCount; ++k) todo.push_back(k);
  }
  std::vector<CriterionResult> out;
  for (int id : todo) {
    out.push_back(run_criterion(id));
    if (progress) progress(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool with_time) {
  std::string s = std::string(r.pass ? "PASS " : "FAIL ") + std::to_string(r.id) + " " + r.name + ": " + r.summary;
  if (with_time) s += fmt(" (%.2f s)", r.seconds);
  for (const auto& f : r.failures) s += "\n    " + f;
  return s;
}

}  // namespace wtf
