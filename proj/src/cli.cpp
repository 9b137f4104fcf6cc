#include "wtf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "wtf/acceptance.hpp"
#include "wtf/fractal_metrics.hpp"
#include "wtf/graph_function.hpp"
#include "wtf/models.hpp"
#include "wtf/parallel.hpp"
#include "wtf/thermo.hpp"

namespace wtf {

using nlohmann::json;

namespace {

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorKind::config_error, msg); }

double number_at(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number()) config_fail("'" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::vector<double> number_list(const json& j, const std::string& key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) config_fail("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) config_fail("'" + key + "' must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string type_of(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    config_fail("'" + where + "' needs a string 'type'");
  }
  return j.at("type").get<std::string>();
}

std::vector<BranchSpec> parse_branches(const json& j) {
  const auto type = type_of(j, "branches");
  if (type == "affine") {
    if (!j.contains("maps") || !j.at("maps").is_array()) config_fail("affine branches need a 'maps' array");
    std::vector<BranchSpec> out;
    for (const auto& m : j.at("maps")) out.push_back(BranchSpec::affine(number_at(m, "slope"), number_at(m, "offset")));
    return out;
  }
  if (type == "l_adic") {
    const double l = number_at(j, "l");
    if (l != std::floor(l)) config_fail("'l' must be an integer");
    return l_adic_branches(static_cast<int>(l));
  }
  if (type == "doubling_sine") return doubling_sine_branches(number_at(j, "epsilon"));
  config_fail("unknown branch type '" + type + "' (affine, l_adic, doubling_sine)");
}

ScaleSpec parse_lambda(const json& j) {
  if (j.is_number()) return ConstantScale{j.get<double>()};
  const auto type = type_of(j, "lambda");
  if (type == "constant") return ConstantScale{number_at(j, "value")};
  if (type == "branch") return BranchScale{number_list(j, "values")};
  if (type == "cosine") {
    const double base = number_at(j, "base");
    const double amp = number_at(j, "amplitude");
    constexpr double w = 2.0 * std::numbers::pi;
    return AnalyticScale{"cosine", [base, amp](double x) { return base + amp * std::cos(w * x); },
                         [amp](double x) { return -amp * w * std::sin(w * x); }};
  }
  config_fail("unknown lambda type '" + type + "' (constant, branch, cosine)");
}

Forcing parse_forcing(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "cos") return Forcing::cosine();
    if (s == "zero") return Forcing::zero();
    config_fail("unknown g '" + s + "' (cos, zero, or a trig object)");
  }
  const auto type = type_of(j, "g");
  if (type == "cos") return Forcing::cosine();
  if (type == "zero") return Forcing::zero();
  if (type == "trig") return Forcing::trig(number_list(j, "cos"), number_list(j, "sin"));
  config_fail("unknown g type '" + type + "' (cos, zero, trig)");
}

ThetaSequence parse_theta(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "zeros") return ThetaSequence::zeros();
    config_fail("theta must be \"zeros\" or {\"seed\": n}");
  }
  if (j.is_object() && j.contains("seed") && j.at("seed").is_number_unsigned()) {
    return ThetaSequence::iid_uniform(j.at("seed").get<std::uint64_t>());
  }
  config_fail("theta must be \"zeros\" or {\"seed\": n} with n a non-negative integer");
}

// Numeric parameters with documented ranges; unknown keys become warnings.
class Params {
 public:
  Params(const json& j, std::vector<std::string>& warnings) : j_(j), warnings_(warnings) {}
  ~Params() = default;

  double num(const std::string& key, double def, double lo, double hi) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_.at(key).is_number()) config_fail("params." + key + " must be a number");
    const double v = j_.at(key).get<double>();
    if (!(v >= lo && v <= hi)) {
      std::ostringstream os;
      os << "params." << key << " = " << v << " outside [" << lo << ", " << hi << "]";
      config_fail(os.str());
    }
    return v;
  }
  int integer(const std::string& key, int def, int lo, int hi) {
    const double v = num(key, def, lo, hi);
    if (v != std::floor(v)) config_fail("params." + key + " must be an integer");
    return static_cast<int>(v);
  }
  bool flag(const std::string& key, bool def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_.at(key).is_boolean()) config_fail("params." + key + " must be true or false");
    return j_.at(key).get<bool>();
  }
  std::string choice(const std::string& key, const std::string& def, const std::vector<std::string>& options) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_.at(key).is_string()) config_fail("params." + key + " must be a string");
    const auto v = j_.at(key).get<std::string>();
    if (std::find(options.begin(), options.end(), v) == options.end()) config_fail("params." + key + " = '" + v + "' not allowed");
    return v;
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }
  void finish() {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) warnings_.push_back("unused parameter params." + k);
    }
  }

 private:
  const json& j_;
  std::vector<std::string>& warnings_;
  std::set<std::string> used_;
};

std::size_t cylinder_budget() {
  const char* env = std::getenv("WTF_LAB_BUDGET");
  if (!env || !*env) return kDefaultCylinderBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) config_fail(std::string("WTF_LAB_BUDGET must be a positive integer, got '") + env + "'");
  return static_cast<std::size_t>(v);
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorKind::io_error, "cannot write " + path.string());
}

std::string csv(const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::string s = header + "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) s += ',';
      s += g17(r[k]);
    }
    s += '\n';
  }
  return s;
}

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultCylinderBudget;
  std::vector<std::string> warnings;
  json files = json::array();
};

CookieCutterSystem validated(Context& ctx) {
  auto sys = validate_system(ctx.config.model);
  for (const auto& w : sys.warnings()) ctx.warnings.push_back(w);
  return sys;
}

ThermoOptions thermo_options(Context& ctx, Params& p) {
  ThermoOptions o;
  o.depth = p.integer("thermo_depth", 14, 2, 24);
  o.budget = ctx.budget;
  return o;
}

std::vector<double> q_grid(Params& p) {
  const double lo = p.num("q_min", -10.0, -30.0, 30.0);
  const double hi = p.num("q_max", 10.0, -30.0, 30.0);
  const int count = p.integer("q_count", 41, 1, 100001);
  if (count > 1 && !(hi > lo)) config_fail("params.q_max must exceed params.q_min");
  return count == 1 ? std::vector<double>{lo} : uniform_grid(lo, hi, count);
}

void emit_file(Context& ctx, const std::string& name, const std::string& text) {
  write_text(ctx.out_dir / name, text);
  ctx.files.push_back(name);
}

GraphCloud graph_cloud(Context& ctx, const CookieCutterSystem& sys, Params& p) {
  const int depth = p.integer("depth", 14, 1, 40);
  const int per = p.integer("per_cylinder", 1, 1, 1 << 20);
  const double tol = p.num("tol", 1e-12, 1e-15, 1e-3);
  const bool restrict = p.flag("restrict", false);
  return sample_graph(sys, ctx.config.theta, depth, per, tol, restrict, ctx.budget);
}

json provenance_of(const GraphCloud& c) { return json::parse(provenance_to_json(c.provenance)); }

json cmd_validate(Context& ctx, Params&) {
  const auto sys = validated(ctx);
  json o;
  o["hyperbolicity_margin"] = sys.hyperbolicity_margin();
  o["margin_slack"] = sys.margin_slack();
  o["sup_lambda"] = sys.sup_lambda();
  o["inf_abs_derivative"] = sys.inf_abs_derivative();
  o["sup_abs_derivative"] = sys.sup_abs_derivative();
  o["branches"] = sys.alphabet_size();
  o["affine"] = sys.affine();
  o["lambda_branch_constant"] = sys.lambda_branch_constant();
  o["resolution_depth"] = sys.resolution_depth();
  json orient = json::array();
  for (int i = 0; i < sys.alphabet_size(); ++i) orient.push_back(sys.orientation(i));
  o["orientation"] = orient;
  o["valid"] = true;
  return o;
}

json cmd_predict(Context& ctx, Params& p) {
  const auto sys = validated(ctx);
  const PressureEvaluator eval(sys, thermo_options(ctx, p));
  const auto pred = graph_dimension_prediction(eval);
  json o;
  o["s1"] = pred.s1;
  o["s2"] = pred.s2;
  o["box_dim"] = pred.box_dim;
  o["hausdorff_upper"] = pred.hausdorff_upper;
  o["min"] = pred.hausdorff_upper;
  o["min_is_s1"] = pred.min_is_s1;
  o["exact"] = sys.affine() && sys.lambda_branch_constant();
  return o;
}

json cmd_sample(Context& ctx, Params& p) {
  const auto sys = validated(ctx);
  const auto cloud = graph_cloud(ctx, sys, p);
  write_cloud_csv(cloud, (ctx.out_dir / "graph.csv").string());
  ctx.files.push_back("graph.csv");
  ctx.files.push_back("graph.csv.json");
  json o;
  o["points"] = cloud.points.size();
  o["provenance"] = provenance_of(cloud);
  return o;
}

json cmd_boxdim(Context& ctx, Params& p) {
  GraphCloud cloud;
  if (p.has("cloud")) {
    const auto& c = p.raw("cloud");
    if (!c.is_string()) config_fail("params.cloud must be a path");
    cloud = read_cloud_csv(c.get<std::string>());
  } else {
    cloud = graph_cloud(ctx, validated(ctx), p);
  }
  const int coarse = p.integer("coarse", 6, 0, 40);
  const int fine = p.integer("fine", 14, 0, 40);
  if (fine < coarse) config_fail("params.fine must be at least params.coarse");
  BoxCountOptions bo;
  bo.fill = p.choice("fill", "segments", {"segments", "points"}) == "segments" ? FillPolicy::segments : FillPolicy::points;
  bo.drop_coarse = p.integer("drop_coarse", 2, 0, 40);
  bo.drop_fine = p.integer("drop_fine", 2, 0, 40);
  std::vector<double> scales;
  for (int k = coarse; k <= fine; ++k) scales.push_back(std::ldexp(1.0, -k));
  const auto r = box_dimension(cloud, scales, bo);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < r.scales.size(); ++k) rows.push_back({r.scales[k], static_cast<double>(r.counts[k])});
  emit_file(ctx, "boxcount.csv", csv("r,N_r", rows));
  for (const auto& w : r.warnings) ctx.warnings.push_back(w);
  json o;
  o["slope"] = r.slope;
  o["stderr"] = r.stderr_slope;
  o["r2"] = r.r2;
  o["scale_window"] = {r.window_lo, r.window_hi};
  o["scales"] = r.scales;
  o["counts"] = r.counts;
  o["points"] = cloud.points.size();
  o["provenance"] = provenance_of(cloud);
  return o;
}

json cmd_holder(Context& ctx, Params& p) {
  const auto sys = validated(ctx);
  const int points = p.integer("points", 100, 1, 100000);
  const int depth = p.integer("depth", 30, 1, 2000);
  HolderOscillationOptions ho;
  ho.depth_lo = p.integer("depth_lo", 8, 1, 200);
  ho.depth_hi = p.integer("depth_hi", 30, 1, 200);
  ho.probes = p.integer("probes", 64, 2, 1 << 16);
  ho.tol = p.num("tol", 1e-15, 1e-30, 1e-3);
  ho.reduction = p.choice("reduction", "deepest", {"deepest", "min"}) == "deepest" ? HolderReduction::deepest
                                                                                   : HolderReduction::min;
  const int length = std::max(depth, ho.depth_hi);
  std::vector<SymbolWord> words;
  for (int k = 0; k < points; ++k) {
    SplitMix64 rng(hash_key(ctx.seed, static_cast<std::uint64_t>(k)));
    std::vector<Digit> d(static_cast<std::size_t>(length));
    for (auto& v : d) v = static_cast<Digit>(rng.below(static_cast<std::uint64_t>(sys.alphabet_size())));
    words.emplace_back(std::move(d));
  }
  const auto est = holder_estimates(sys, words, ctx.config.theta, depth, ho);
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (const auto& e : est) {
    rows.push_back({e.x, e.birkhoff_value, e.oscillation_value, static_cast<double>(e.depth)});
    worst = std::max(worst, std::abs(e.birkhoff_value - e.oscillation_value));
  }
  emit_file(ctx, "holder.csv", csv("x,birkhoff,oscillation,depth", rows));
  json o;
  o["points"] = points;
  o["max_abs_difference"] = worst;
  o["oscillation_depths"] = {ho.depth_lo, ho.depth_hi};
  o["reduction"] = ho.reduction == HolderReduction::deepest ? "deepest" : "min";
  return o;
}

json cmd_spectrum(Context& ctx, Params& p) {
  const auto sys = validated(ctx);
  const PressureEvaluator eval(sys, thermo_options(ctx, p));
  const auto c = spectrum(eval, q_grid(p));
  std::vector<std::vector<double>> rows;
  for (const auto& s : c.samples) rows.push_back({s.q, s.a_q, s.alpha, s.d});
  emit_file(ctx, "spectrum.csv", csv("q,A_q,alpha,D", rows));
  json o;
  o["alpha_min"] = c.alpha_min;
  o["alpha_max"] = c.alpha_max;
  o["alpha_c"] = c.alpha_c;
  o["A_0"] = c.a0;
  o["degenerate"] = c.degenerate_flag;
  o["exact_endpoints"] = c.exact_endpoints;
  o["cohomology_residual"] = {c.cohomology_residual_minus, c.cohomology_residual_plus};
  return o;
}

json cmd_gibbs(Context& ctx, Params& p) {
  const auto sys = validated(ctx);
  const PressureEvaluator eval(sys, thermo_options(ctx, p));
  PotentialSpec pot;
  json o;
  if (p.has("potential")) {
    const auto& j = p.raw("potential");
    if (!j.is_object()) config_fail("params.potential must be {a, b, c}");
    pot = {j.value("a", 0.0), j.value("b", 0.0), j.value("c", 0.0)};
    pot = normalised(eval, pot);
  } else {
    const double q = p.num("q", 0.0, -30.0, 30.0);
    pot = spectrum_potential(q, A_of_q(eval, q));
    o["q"] = q;
  }
  const int depth = p.integer("depth", 40, 1, 100000);
  const auto count = static_cast<std::size_t>(p.integer("count", 10000, 1, 10000000));
  const int stats_depth = p.integer("stats_depth", 12, 1, 24);
  const auto samples = gibbs_sample(eval, pot, depth, count, ctx.seed);
  const auto st = measure_stats(eval, pot, stats_depth);
  std::string text = "x,word\n";
  for (const auto& s : samples) {
    text += g17(s.x) + ",";
    for (Digit d : s.word.digits()) text += static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10);
    text += '\n';
  }
  emit_file(ctx, "gibbs.csv", text);
  o["potential"] = {pot.a, pot.b, pot.c};
  o["samples"] = count;
  o["depth"] = depth;
  o["entropy"] = st.entropy;
  o["lyapunov"] = st.lyapunov;
  o["mean_log_lambda"] = st.mean_log_lambda;
  o["dim"] = st.dim;
  o["alpha"] = st.alpha;
  o["exact"] = st.exact;
  return o;
}

json cmd_lift(Context& ctx, Params& p) {
  const auto sys = validated(ctx);
  const PressureEvaluator eval(sys, thermo_options(ctx, p));
  const int stats_depth = p.integer("stats_depth", 12, 1, 24);
  const auto pred = graph_dimension_prediction(eval);
  std::vector<std::vector<double>> rows;
  for (double q : q_grid(p)) {
    const double a = A_of_q(eval, q);
    const double alpha = alpha_of_q(eval, q);
    const auto st = measure_stats(eval, spectrum_potential(q, a), stats_depth);
    rows.push_back({q, alpha, q * alpha + a, lifted_dim_prediction(st), jin_upper(q * alpha + a, alpha)});
  }
  emit_file(ctx, "lift.csv", csv("q,alpha,D,lifted,jin_upper", rows));
  json o;
  o["s1"] = pred.s1;
  o["s2"] = pred.s2;
  o["nu1_lift"] = lifted_dim_prediction(measure_stats(eval, PotentialFamily::s1().at(pred.s1), stats_depth));
  o["nu2_lift"] = lifted_dim_prediction(measure_stats(eval, PotentialFamily::s2().at(pred.s2), stats_depth));
  return o;
}

json cmd_verify(Context& ctx, Params& p, std::ostream& out, bool& all_pass, json& timings) {
  std::vector<int> ids;
  if (p.has("criteria")) {
    const auto& c = p.raw("criteria");
    if (!c.is_array()) config_fail("params.criteria must be an array of criterion numbers");
    for (const auto& v : c) {
      if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > kCriterionCount) {
        config_fail("params.criteria entries must be integers in [1, 10]");
      }
      ids.push_back(v.get<int>());
    }
  }
  json results = json::array();
  all_pass = true;
  run_acceptance(ids, [&](const CriterionResult& r) {
    out << format_result(r, false) << "\n" << std::flush;
    all_pass = all_pass && r.pass;
    results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"failures", r.failures}});
    timings["criterion_" + std::to_string(r.id) + "_s"] = r.seconds;
  });
  (void)ctx;
  return {{"criteria", results}, {"all_pass", all_pass}};
}

}  // namespace

SystemSpec parse_model(const json& j) {
  if (j.is_string()) return reference_spec(j.get<std::string>());
  if (!j.is_object()) config_fail("'model' must be a reference id or an object");
  SystemSpec s;
  if (j.contains("reference")) {
    if (!j.at("reference").is_string()) config_fail("'model.reference' must be a string");
    s = reference_spec(j.at("reference").get<std::string>());
  }
  if (j.contains("id")) {
    if (!j.at("id").is_string()) config_fail("'model.id' must be a string");
    s.id = j.at("id").get<std::string>();
  }
  if (j.contains("branches")) s.branches = parse_branches(j.at("branches"));
  if (s.branches.empty()) config_fail("'model.branches' missing");
  if (j.contains("lambda")) s.lambda = parse_lambda(j.at("lambda"));
  if (j.contains("g")) s.forcing = parse_forcing(j.at("g"));
  if (j.contains("metric")) {
    const auto m = j.at("metric").is_string() ? j.at("metric").get<std::string>() : "";
    if (m == "min") {
      s.metric = TorusMetric::min;
    } else if (m == "max") {
      s.metric = TorusMetric::max;
    } else {
      config_fail("'model.metric' must be \"min\" or \"max\"");
    }
  }
  return s;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_fail("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k != "model" && k != "theta" && k != "params") config_fail("unknown config key '" + k + "'");
  }
  if (!j.contains("model")) config_fail("config needs 'model'");
  RunConfig c;
  c.model = parse_model(j.at("model"));
  if (j.contains("theta")) c.theta = parse_theta(j.at("theta"));
  if (j.contains("params")) {
    if (!j.at("params").is_object()) config_fail("'params' must be an object");
    c.params = j.at("params");
  }
  c.echo = j;
  return c;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> commands{"validate", "predict", "sample", "boxdim", "holder",
                                                 "spectrum", "gibbs",   "lift",   "verify"};
  CLI::App app{"Weierstrass-type graph dimensions on cookie-cutter repellers", "wtf-lab"};
  std::string command, config_path, out_dir = ".";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  bool timings = false;
  app.add_option("command", command, "validate | predict | sample | boxdim | holder | spectrum | gibbs | lift | verify")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "JSON run config");
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--threads", threads, "worker cap; 0 = hardware concurrency");
  app.add_option("--seed", seed, "sampling seed");
  app.add_flag("--timings", timings, "record wall-clock timings in report.json");
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  set_max_threads(threads);

  const auto t0 = std::chrono::steady_clock::now();
  Context ctx;
  ctx.seed = seed;
  ctx.out_dir = out_dir;
  json report;
  report["tool"] = "wtf-lab";
  report["version"] = kToolVersion;
  report["command"] = command;
  report["seed"] = seed;
  json timing = json::object();
  int code = 0;
  try {
    std::filesystem::create_directories(ctx.out_dir);
    std::string text;
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      if (!f) config_fail("cannot read config " + config_path);
      std::stringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    } else if (command == "verify") {
      text = R"({"model": "M1"})";
    } else {
      config_fail("--config is required for " + command);
    }
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
    report["config_hash"] = hash;
    ctx.config = parse_config(text);
    report["inputs"] = ctx.config.echo;
    ctx.budget = cylinder_budget();
    report["budget"] = ctx.budget;

    Params params(ctx.config.params, ctx.warnings);
    json outputs;
    bool pass = true;
    if (command == "validate") outputs = cmd_validate(ctx, params);
    else if (command == "predict") outputs = cmd_predict(ctx, params);
    else if (command == "sample") outputs = cmd_sample(ctx, params);
    else if (command == "boxdim") outputs = cmd_boxdim(ctx, params);
    else if (command == "holder") outputs = cmd_holder(ctx, params);
    else if (command == "spectrum") outputs = cmd_spectrum(ctx, params);
    else if (command == "gibbs") outputs = cmd_gibbs(ctx, params);
    else if (command == "lift") outputs = cmd_lift(ctx, params);
    else outputs = cmd_verify(ctx, params, out, pass, timing);
    params.finish();
    report["outputs"] = outputs;
    report["errors"] = json::array();
    if (!pass) code = 1;
  } catch (const Error& e) {
    report["errors"] = json::array({{{"kind", error_name(e.kind())}, {"message", e.what()}}});
    code = exit_code_for(e.kind());
    err << e.what() << "\n";
  } catch (const std::exception& e) {
    report["errors"] = json::array({{{"kind", "Internal"}, {"message", e.what()}}});
    code = 1;
    err << e.what() << "\n";
  }
  report["warnings"] = ctx.warnings;
  report["files"] = ctx.files;
  report["exit_code"] = code;
  if (timings) {
    timing["total_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report["timings"] = timing;
  }
  try {
    write_text(ctx.out_dir / "report.json", report.dump(2) + "\n");
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (code == 0) code = 1;
  }
  if (command != "verify") out << report.dump(2) << "\n";
  return code;
}

}  // namespace wtf
