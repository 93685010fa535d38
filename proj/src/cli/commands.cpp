#include "qcopies/commands.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "qcopies/adaptive.hpp"
#include "qcopies/allocator.hpp"
#include "qcopies/errors.hpp"
#include "qcopies/hoeffding.hpp"
#include "qcopies/phaselift.hpp"
#include "qcopies/simulator.hpp"

namespace qcopies {
namespace {

// ---- config access -------------------------------------------------------

bool is_set(const Json& cfg, const char* key) {
  return cfg.contains(key) && !cfg.at(key).is_null() && !(cfg.at(key).is_string() && cfg.at(key).get<std::string>().empty());
}

double to_double(const Json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() && *end == '\0') return x;
  }
  throw ConfigError("'" + key + "' must be a number");
}

double get_double(const Json& cfg, const char* key) {
  if (!is_set(cfg, key)) throw ConfigError(std::string("missing required option --") + key);
  return to_double(cfg.at(key), key);
}

std::int64_t get_int(const Json& cfg, const char* key) {
  const double x = get_double(cfg, key);
  if (x != std::floor(x) || std::abs(x) > 9e15) throw ConfigError(std::string("'") + key + "' must be an integer");
  return static_cast<std::int64_t>(x);
}

bool get_bool(const Json& cfg, const char* key) {
  if (!is_set(cfg, key)) return false;
  const auto& v = cfg.at(key);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  throw ConfigError(std::string("'") + key + "' must be a boolean");
}

std::vector<double> get_list(const Json& cfg, const char* key) {
  if (!is_set(cfg, key)) return {};
  const auto& v = cfg.at(key);
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& e : v) out.push_back(to_double(e, key));
    return out;
  }
  if (v.is_number()) return {v.get<double>()};
  if (v.is_string()) return parse_number_list(v.get<std::string>());
  throw ConfigError(std::string("'") + key + "' must be a list of numbers");
}

std::vector<std::int64_t> get_int_list(const Json& cfg, const char* key) {
  std::vector<std::int64_t> out;
  for (double x : get_list(cfg, key)) {
    if (x != std::floor(x)) throw ConfigError(std::string("'") + key + "' must hold integers");
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

RngSeed get_seed(const Json& cfg) {
  return RngSeed{static_cast<std::uint64_t>(is_set(cfg, "seed") ? get_int(cfg, "seed") : 0), 0};
}

// --state file wins over --n/--fidelity.
DensityMatrix load_state(const Json& cfg) {
  if (is_set(cfg, "state")) {
    const auto path = cfg.at("state").get<std::string>();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open state file " + path);
    Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("state file " + path + ": " + e.what());
    }
    return density_from_json(j);
  }
  const int n = static_cast<int>(get_int(cfg, "n"));
  const double f = get_double(cfg, "fidelity");
  return depolarized_sc(n, f);
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---- commands ------------------------------------------------------------

CommandOutput cmd_allocate(const Json& cfg) {
  double epsilon;
  if (is_set(cfg, "epsilon")) {
    epsilon = get_double(cfg, "epsilon");
  } else {
    const double e0 = get_double(cfg, "epsilon0");
    epsilon = e0 * e0;
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");

  AllocatorOptions opts;
  opts.t_min = get_int(cfg, "t_min");
  CommandOutput out;
  std::vector<double> k;
  std::optional<SettingProbabilities> probs;
  if (is_set(cfg, "k")) {
    k = get_list(cfg, "k");
    for (double v : k)
      if (!(v >= 0.0)) throw ConfigError("every k must be >= 0");
  } else {
    SettingProbabilities p;
    if (is_set(cfg, "p")) {
      p.P = get_list(cfg, "p");
      if (p.P.size() < 2) throw ConfigError("--p needs n+1 >= 2 probabilities");
      p.n = static_cast<int>(p.P.size()) - 1;
      if (is_set(cfg, "n") && get_int(cfg, "n") != p.n) {
        throw ConfigError("--p has " + std::to_string(p.P.size()) + " entries but --n " +
                          std::to_string(get_int(cfg, "n")) + " needs " + std::to_string(get_int(cfg, "n") + 1));
      }
      for (double v : p.P)
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("every P_j must lie in [0, 1]");
    } else if (is_set(cfg, "fidelity") || is_set(cfg, "state")) {
      const auto rho = load_state(cfg);
      p = setting_probabilities(rho, build_settings(rho.qubits()));
    } else {
      throw ConfigError("allocate needs --p, --k, --state or --n with --fidelity");
    }
    k = variance_weights(p);
    probs = p;
  }

  const auto a = solve_budget({k, epsilon}, opts);
  out.report = to_json(a);
  out.report["epsilon"] = epsilon;
  out.report["k"] = k;
  const auto uni = best_uniform(k, epsilon);
  out.report["best_uniform_per_setting"] = uni.t.front();
  out.report["best_uniform_total"] = uni.total();

  CsvTable csv({"setting", "k", "real_t", "t"});
  for (std::size_t j = 0; j < a.size(); ++j) {
    csv.row({std::to_string(j + 1), csv_number(k[j]), csv_number(a.real_t[j]), csv_number(a.t[j])});
  }
  std::ostringstream s;
  s << "setting  t\n";
  for (std::size_t j = 0; j < a.size(); ++j) s << "  " << j + 1 << "      " << a.t[j] << "\n";
  s << "total " << a.total() << " (best uniform " << uni.total() << ")\n";
  if (probs) {
    const double df = delta_f(*probs, a);
    out.report["P"] = probs->P;
    out.report["delta_f"] = df;
    out.report["fidelity"] = fidelity_from_probabilities(*probs);
    s << "delta F " << fixed(df, 6) << "\n";
    if (probs->n == 8) {
      const std::vector<std::int64_t> exp_t(std::begin(table1::kExperiment), std::end(table1::kExperiment));
      const std::vector<std::int64_t> opt_t(std::begin(table1::kOptimized), std::end(table1::kOptimized));
      out.report["reference"] = {{"experiment_total", table1::kExperimentTotal},
                                 {"optimized_total", table1::kOptimizedTotal},
                                 {"experiment_delta_f", delta_f(*probs, exp_t)},
                                 {"optimized_delta_f", delta_f(*probs, opt_t)}};
      s << "reference: experiment " << table1::kExperimentTotal << " copies (" << join(exp_t) << "), optimized "
        << table1::kOptimizedTotal << " copies (" << join(opt_t) << ")\n";
    }
  }
  out.summary = s.str();
  out.files.emplace_back("allocation.csv", csv.str());
  out.files.emplace_back("allocation.json", out.report.dump(2) + "\n");
  return out;
}

CopyAllocation parse_compare(const std::string& spec, std::size_t settings) {
  if (spec.rfind("uniform:", 0) == 0) {
    const auto v = parse_number_list(spec.substr(8));
    if (v.size() != 1 || v[0] < 1 || v[0] != std::floor(v[0])) throw ConfigError("uniform:N needs a positive integer");
    return CopyAllocation::uniform(settings, static_cast<std::int64_t>(v[0]));
  }
  if (spec == "experiment") {
    if (settings != 9) throw ConfigError("the experiment distribution exists only for n = 8");
    return CopyAllocation::from_counts({std::begin(table1::kExperiment), std::end(table1::kExperiment)});
  }
  if (spec.rfind("counts:", 0) == 0) {
    std::vector<std::int64_t> t;
    for (double x : parse_number_list(spec.substr(7))) t.push_back(static_cast<std::int64_t>(x));
    if (t.size() != settings) throw ConfigError("counts: needs one entry per setting");
    return CopyAllocation::from_counts(std::move(t));
  }
  throw ConfigError("--compare must be uniform:N, experiment or counts:a,b,...");
}

CommandOutput cmd_simulate(const Json& cfg) {
  const auto rho = load_state(cfg);
  const auto wd = build_settings(rho.qubits());
  const auto p = setting_probabilities(rho, wd);
  const double e0 = get_double(cfg, "epsilon0");
  const auto trials = get_int(cfg, "trials");
  const int bins = static_cast<int>(get_int(cfg, "bins"));
  const auto seed = get_seed(cfg);

  std::vector<NamedAllocation> allocs;
  allocs.push_back({cfg.at("compare").get<std::string>(), parse_compare(cfg.at("compare").get<std::string>(), wd.size())});
  allocs.push_back({"optimized", allocate_sc(p, e0)});
  const auto rep = compare_distributions(rho, allocs, trials, seed);

  CommandOutput out;
  out.report = {{"true_fidelity", rep.true_fidelity}, {"P", p.P}, {"epsilon0", e0}, {"trials", trials}};
  std::ostringstream s;
  s << "true fidelity " << fixed(rep.true_fidelity, 4) << ", " << trials << " trials\n";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    out.report["allocations"].push_back({{"name", r.name},
                                         {"t", allocs[i].allocation.t},
                                         {"total", r.total},
                                         {"predicted_delta_f", r.predicted_delta_f},
                                         {"mean", r.mean},
                                         {"stddev", r.stddev},
                                         {"savings", r.savings}});
    s << "  " << r.name << ": total " << r.total << ", mean F " << fixed(r.mean, 4) << ", std " << fixed(r.stddev, 4)
      << ", predicted dF " << fixed(r.predicted_delta_f, 4) << ", savings " << fixed(100.0 * r.savings, 2) << "%\n";

    const auto h = run_histogram_experiment(rho, allocs[i].allocation, trials, HistogramSpec::with_bins(bins), seed);
    CsvTable csv({"bin_low", "bin_high", "events"});
    for (int b = 0; b < bins; ++b) {
      csv.row({csv_number(h.histogram.bin_low(b)), csv_number(h.histogram.bin_high(b)), csv_number(h.histogram.events[b])});
    }
    out.files.emplace_back("histogram_" + std::string(i == 0 ? "baseline" : "optimized") + ".csv", csv.str());
  }
  out.summary = s.str();
  out.files.emplace_back("comparison.json", out.report.dump(2) + "\n");
  return out;
}

CommandOutput cmd_adaptive(const Json& cfg) {
  const auto rho = load_state(cfg);
  const auto wd = build_settings(rho.qubits());
  AdaptiveConfig ac;
  ac.epsilon_schedule = parse_schedule(cfg.at("schedule").get<std::string>());
  const auto t0 = get_int(cfg, "t_initial");
  if (t0 < 0) throw ConfigError("t_initial must be >= 0");
  ac.t_initial.assign(wd.size(), t0);
  ac.initial_P = get_list(cfg, "initial_p");
  const auto st = run_adaptive(rho, wd, ac, get_seed(cfg));
  const auto tl = protocol_timeline(st, get_double(cfg, "switch_cost_hours"), get_double(cfg, "copy_rate"));

  CsvTable csv({"round", "epsilon", "setting", "increment", "cumulative", "P_hat"});
  for (const auto& r : st.history) {
    for (std::size_t j = 0; j < wd.size(); ++j) {
      csv.row({std::to_string(r.round), csv_number(r.epsilon), std::to_string(j + 1), csv_number(r.increments[j]),
               csv_number(r.cumulative[j]), csv_number(r.p_hat[j])});
    }
  }
  CommandOutput out;
  out.report = {{"true_fidelity", fidelity_pure(rho, sc_state(rho.qubits()))},
                {"fidelity", st.fidelity},
                {"delta_f", st.delta_f},
                {"P_hat", st.current_P.P},
                {"cumulative_t", st.cumulative_t},
                {"total_copies", st.total_copies()},
                {"rounds", st.feedback_rounds()},
                {"adaptive_hours", tl.adaptive_hours},
                {"adaptive_switches", tl.adaptive_switches},
                {"traditional_hours", tl.traditional_hours},
                {"traditional_switches", tl.traditional_switches}};
  std::ostringstream s;
  s << st.feedback_rounds() << " rounds, " << st.total_copies() << " copies, F = " << fixed(st.fidelity, 4)
    << " +- " << fixed(st.delta_f, 4) << "\nfinal P:";
  for (double v : st.current_P.P) s << " " << fixed(v, 4);
  s << "\nswitches " << tl.adaptive_switches << " (single pass " << tl.traditional_switches << ")\n";
  out.summary = s.str();
  out.files.emplace_back("rounds.csv", csv.str());
  out.files.emplace_back("adaptive.json", out.report.dump(2) + "\n");
  return out;
}

CommandOutput cmd_hoeffding(const Json& cfg) {
  const int n = static_cast<int>(get_int(cfg, "n"));
  check_qubit_count(n);
  const double h = get_double(cfg, "h");
  const double delta = get_double(cfg, "delta");
  if (!(h > 0.0 && h < 1.0)) throw ConfigError("--h must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("--delta must lie in (0, 1)");
  auto t = get_int_list(cfg, "t");
  if (t.size() == 1) t.assign(n + 1, t.front());
  if (t.size() != static_cast<std::size_t>(n + 1)) throw ConfigError("--t needs one value or n+1 values");

  CommandOutput out;
  const std::vector<double> hs(t.size(), h);
  out.report = {{"t", t}, {"h", h}, {"delta", delta}, {"joint_success", joint_success(t, hs)},
                {"required_copies", required_copies(h, delta)}};
  std::ostringstream s;
  s << "joint success " << fixed(joint_success(t, hs), 6) << " for t = " << join(t) << ", h = " << h << "\n";
  s << "copies per setting for failure <= " << delta << ": " << required_copies(h, delta) << "\n";

  if (is_set(cfg, "p")) {
    SettingProbabilities p{n, get_list(cfg, "p")};
    if (p.P.size() != t.size()) throw ConfigError("--p needs n+1 entries");
    for (double v : p.P)
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("every P_j must lie in [0, 1]");
    const auto iv = allocation_interval(p, ConfidenceSpec::uniform(t.size(), h, delta), get_double(cfg, "epsilon0"));
    out.report["interval"] = {{"P_minus", iv.P_minus}, {"P_plus", iv.P_plus}, {"k_minus", iv.k_minus},
                              {"k_plus", iv.k_plus},   {"t_minus", iv.t_minus}, {"t_plus", iv.t_plus}};
    s << "t- = " << join(iv.t_minus) << "\nt+ = " << join(iv.t_plus) << "\n";
  }

  if (get_bool(cfg, "coverage")) {
    // State with the requested all-H plus all-V mass: p + (1 - p) 2/d.
    const double d = std::ldexp(1.0, n);
    const double p1 = get_double(cfg, "p1");
    const double w = (p1 - 2.0 / d) / (1.0 - 2.0 / d);
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("--p1 is not reachable by a depolarized SC state");
    const auto rho = white_noise_mix(pure_density(sc_state(n)), w);
    auto copies = get_int_list(cfg, "copies");
    if (copies.empty()) copies = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000};
    const auto rows = coverage_experiment(rho, copies, delta, get_int(cfg, "repeats"), get_seed(cfg));
    CsvTable csv({"copies", "true", "lower", "upper", "inside_fraction", "estimates"});
    double worst = 1.0;
    for (const auto& r : rows) {
      std::string est;
      for (std::size_t i = 0; i < r.estimates.size(); ++i) est += (i ? ";" : "") + csv_number(r.estimates[i]);
      csv.row({csv_number(r.copies), csv_number(r.true_value), csv_number(r.lower), csv_number(r.upper),
               csv_number(r.inside_fraction), est});
      worst = std::min(worst, r.inside_fraction);
    }
    out.report["coverage_min_inside_fraction"] = worst;
    s << "coverage: smallest inside fraction " << fixed(worst, 3) << " over " << rows.size() << " copy counts\n";
    out.files.emplace_back("coverage.csv", csv.str());
  }
  out.summary = s.str();
  out.files.emplace_back("hoeffding.json", out.report.dump(2) + "\n");
  return out;
}

CommandOutput cmd_tomography(const Json& cfg) {
  const auto rho = load_state(cfg);
  if (rho.qubits() > 4) throw ConfigError("tomography supports at most 4 qubits");
  const std::size_t elements = pauli_settings(rho.qubits()).size() * rho.dim();
  std::vector<std::size_t> counts;
  for (auto c : get_int_list(cfg, "elements")) counts.push_back(static_cast<std::size_t>(c));
  if (counts.empty()) {
    for (std::size_t c = std::max<std::size_t>(rho.dim(), elements / 12); c < elements; c += elements / 12) counts.push_back(c);
    counts.push_back(elements);
  }
  const auto rows =
      reconstruction_curve(rho, get_int(cfg, "counts"), counts, get_int(cfg, "repeats"), get_seed(cfg));
  CsvTable csv({"elements_used", "mean_fidelity", "std_fidelity", "mean_mse", "std_mse"});
  CommandOutput out;
  out.report = {{"true_fidelity", fidelity_pure(rho, sc_state(rho.qubits()))}, {"total_elements", elements}};
  std::ostringstream s;
  s << "true fidelity " << fixed(fidelity_pure(rho, sc_state(rho.qubits())), 4) << "\n";
  for (const auto& r : rows) {
    csv.row({csv_number(static_cast<std::int64_t>(r.elements_used)), csv_number(r.mean_fidelity),
             csv_number(r.std_fidelity), csv_number(r.mean_mse), csv_number(r.std_mse)});
    out.report["curve"].push_back(
        {{"elements_used", r.elements_used}, {"mean_fidelity", r.mean_fidelity}, {"mean_mse", r.mean_mse}});
    s << "  " << r.elements_used << " elements: F " << fixed(r.mean_fidelity, 4) << ", MSE " << fixed(r.mean_mse, 5)
      << "\n";
  }
  out.summary = s.str();
  out.files.emplace_back("curve.csv", csv.str());
  out.files.emplace_back("tomography.json", out.report.dump(2) + "\n");
  return out;
}

CommandOutput cmd_tenphoton(const Json& cfg) {
  const auto c = tenphoton_cost(get_double(cfg, "rate8"), get_double(cfg, "copies"));
  CommandOutput out;
  out.report = {{"two_photon_rate_hz", c.two_photon_rate_hz},
                {"ten_photon_per_hour", c.ten_photon_per_hour},
                {"hours", c.hours},
                {"days", c.days}};
  std::ostringstream s;
  s << "ten-photon copies per hour " << fixed(c.ten_photon_per_hour, 4) << "\n"
    << "hours " << fixed(c.hours, 1) << " (" << fixed(c.days, 2) << " days)\n";
  out.summary = s.str();
  out.files.emplace_back("tenphoton.json", out.report.dump(2) + "\n");
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"allocate", "simulate", "adaptive", "hoeffding", "tomography",
                                              "tenphoton-cost"};
  return names;
}

Json default_config(const std::string& command) {
  if (command == "allocate") {
    return {{"n", nullptr}, {"epsilon0", 0.016}, {"epsilon", nullptr}, {"p", nullptr}, {"k", nullptr},
            {"fidelity", nullptr}, {"state", nullptr}, {"t_min", 1}, {"seed", nullptr}};
  }
  if (command == "simulate") {
    return {{"n", 8},         {"fidelity", nullptr}, {"state", nullptr}, {"epsilon0", 0.016}, {"trials", 100},
            {"compare", "uniform:100"}, {"bins", 50}, {"seed", nullptr}};
  }
  if (command == "adaptive") {
    return {{"n", 4},          {"fidelity", nullptr},       {"state", nullptr},         {"schedule", "0.01:0.1:0.00001"},
            {"t_initial", 5},  {"initial_p", nullptr},      {"switch_cost_hours", 2.0 / 60.0}, {"copy_rate", 8.88},
            {"seed", nullptr}};
  }
  if (command == "hoeffding") {
    return {{"n", 8},      {"t", 110},       {"h", 0.2},     {"delta", 1e-4},      {"p", nullptr},
            {"epsilon0", 0.016}, {"coverage", false}, {"p1", table1::kP1}, {"copies", nullptr}, {"repeats", 10},
            {"seed", nullptr}};
  }
  if (command == "tomography") {
    return {{"n", 3},         {"fidelity", 0.7068}, {"state", nullptr}, {"counts", 1000}, {"elements", nullptr},
            {"repeats", 5},   {"seed", nullptr}};
  }
  if (command == "tenphoton-cost") return {{"rate8", 2.8e-5}, {"copies", 110}};
  throw ConfigError("unknown command '" + command + "'");
}

Json merge_config(const std::string& command, const Json& file_config, const Json& flag_config) {
  Json cfg = default_config(command);
  for (const Json* layer : {&file_config, &flag_config}) {
    if (layer->is_null()) continue;
    if (!layer->is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [key, value] : layer->items()) {
      if (!cfg.contains(key)) throw ConfigError("unknown option '" + key + "' for " + command);
      cfg[key] = value;
    }
  }
  if (cfg.contains("seed") && cfg["seed"].is_null()) {
    if (const char* env = std::getenv("QCOPIES_SEED"); env && *env) {
      char* end = nullptr;
      errno = 0;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (errno != 0 || *end != '\0' || *env == '-') throw ConfigError("QCOPIES_SEED must be a nonnegative integer");
      cfg["seed"] = static_cast<std::uint64_t>(v);
    }
  }
  return cfg;
}

CommandOutput run_command(const std::string& command, const Json& config) {
  if (command == "allocate") return cmd_allocate(config);
  if (command == "simulate") return cmd_simulate(config);
  if (command == "adaptive") return cmd_adaptive(config);
  if (command == "hoeffding") return cmd_hoeffding(config);
  if (command == "tomography") return cmd_tomography(config);
  if (command == "tenphoton-cost") return cmd_tenphoton(config);
  throw ConfigError("unknown command '" + command + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const Error*>(&e)) return 3;
  return 1;
}

TenPhotonCost tenphoton_cost(double rate8_hz, double copies_needed) {
  if (!(rate8_hz > 0.0)) throw DomainError("eight-photon rate must be positive");
  if (copies_needed < 0.0) throw DomainError("copies must be >= 0");
  TenPhotonCost c;
  c.two_photon_rate_hz = std::pow(rate8_hz, 0.25);
  c.ten_photon_per_hour = std::pow(std::pow(rate8_hz * 3600.0, 0.25), 5.0);
  c.hours = copies_needed / c.ten_photon_per_hour;
  c.days = c.hours / 24.0;
  return c;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty entry in list '" + text + "'");
    const std::string tok = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double x = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || !std::isfinite(x)) throw ConfigError("'" + tok + "' is not a number");
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  if (std::count(text.begin(), text.end(), ':') == 2) {
    std::string spec = text;
    std::replace(spec.begin(), spec.end(), ':', ',');
    const auto v = parse_number_list(spec);
    out = AdaptiveConfig::geometric_schedule(v[0], v[1], v[2]);
  } else {
    out = parse_number_list(text);
  }
  AdaptiveConfig probe;
  probe.epsilon_schedule = out;
  probe.validate(1);
  return out;
}

}  // namespace qcopies
