// Command-line front end: every analysis and simulation, reproducible from --seed.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcaerg/pcaerg.hpp"

namespace {

using namespace pcaerg;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20231101;

enum ExitCode { kOk = 0, kInvalidInput = 2, kDegenerate = 3, kIoFailure = 4 };

struct RunConfig {
  std::optional<std::string> params;
  std::optional<std::string> ca;
  std::optional<double> eps;
  std::size_t N = 200;
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 10'000;
  std::uint64_t horizon = 10'000;
  std::uint64_t runs = 100;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t n0 = 10;
  std::int64_t target = 100;
  std::size_t rows = 0;
  unsigned jobs = 1;
  std::string side = "both";
  std::string format = "json";
  std::string output;
  std::string config;
  std::vector<std::string> codes;
  std::vector<double> grid;
  bool renewal = false;
  bool crossover = false;
};

/// Fills every option not given on the command line from the --config file.
void merge_config(CLI::App& sub, RunConfig& cfg) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw IoError("cannot open config file " + cfg.config);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("config file " + cfg.config + " is not valid JSON: " + e.what());
  }
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key)) return;
    if (sub.get_option_no_throw(flag) != nullptr && sub.count(flag) > 0) return;
    try {
      using T = std::decay_t<decltype(field)>;
      if constexpr (std::is_same_v<T, std::optional<std::string>>) {
        if (j[key].is_array()) {
          const auto v = j[key].get<std::vector<double>>();
          if (v.size() != 4) throw InvalidInput(std::string("config field '") + key + "' needs four numbers");
          field = io::format_quad(ParamQuad<double>(v[0], v[1], v[2], v[3]), ',');
        } else {
          field = j[key].get<std::string>();
        }
      } else if constexpr (std::is_same_v<T, std::optional<double>>) {
        field = j[key].get<double>();
      } else {
        field = j[key].get<T>();
      }
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("config field '") + key + "': " + e.what());
    }
  };
  take("params", "--params", cfg.params);
  take("ca", "--ca", cfg.ca);
  take("eps", "--eps", cfg.eps);
  take("N", "--N", cfg.N);
  take("steps", "--steps", cfg.steps);
  take("burn_in", "--burn-in", cfg.burn_in);
  take("horizon", "--horizon", cfg.horizon);
  take("runs", "--runs", cfg.runs);
  take("samples", "--samples", cfg.samples);
  take("seed", "--seed", cfg.seed);
  take("n0", "--n0", cfg.n0);
  take("target", "--target", cfg.target);
  take("rows", "--rows", cfg.rows);
  take("jobs", "--jobs", cfg.jobs);
  take("side", "--side", cfg.side);
  take("format", "--format", cfg.format);
  take("output", "--output", cfg.output);
  take("codes", "--codes", cfg.codes);
  take("grid", "--grid", cfg.grid);
}

ParamQuad<double> resolve_params(const RunConfig& cfg) {
  const bool quad = cfg.params.has_value();
  const bool code = cfg.ca.has_value() || cfg.eps.has_value();
  if (quad == code) throw InvalidInput("give exactly one of --params or (--ca and --eps)");
  if (quad) return io::parse_quad(*cfg.params);
  if (!cfg.ca || !cfg.eps) throw InvalidInput("--ca needs --eps and vice versa");
  return ca_with_error(CaCode::parse(*cfg.ca), *cfg.eps);
}

std::vector<Side> sides(const RunConfig& cfg) {
  if (cfg.side == "right") return {Side::RightBoundary};
  if (cfg.side == "left") return {Side::LeftBoundary};
  if (cfg.side == "both") return {Side::RightBoundary, Side::LeftBoundary};
  throw InvalidInput("--side must be right, left or both");
}

const char* side_name(Side s) { return s == Side::RightBoundary ? "right" : "left"; }

/// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary);
      if (!file_) throw IoError("cannot open " + path_ + " for writing");
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void close() {
    if (!path_.empty()) {
      file_.close();
      if (!file_) throw IoError("write failed for " + path_);
    }
  }

 private:
  std::string path_;
  std::ofstream file_;
};

void emit_json(const RunConfig& cfg, const json& j) {
  Sink sink(cfg.output);
  sink.stream() << j.dump(2) << '\n';
  sink.close();
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw InvalidInput("format '" + cfg.format + "' is not available for this subcommand");
}

void cmd_derive(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  const auto d = derive(resolve_params(cfg));
  const json j = io::to_json(d);
  if (cfg.format == "json") return emit_json(cfg, j);
  Sink sink(cfg.output);
  sink.stream() << "name,value\n";
  for (const auto& [k, v] : j.items()) sink.stream() << k << ',' << io::format_real(v.get<double>()) << '\n';
  sink.close();
}

void cmd_check(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  SweepRow row;
  if (cfg.ca && cfg.eps && !cfg.params) {
    row.code = CaCode::parse(*cfg.ca);
    row.eps = *cfg.eps;
  }
  row.params = resolve_params(cfg);
  row.report = condition_check(row.params);
  if (cfg.format == "json") return emit_json(cfg, io::to_json(*row.report));
  Sink sink(cfg.output);
  io::write_sweep_csv(sink.stream(), {row});
  sink.close();
}

void cmd_gamma(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const auto d = derive(resolve_params(cfg));
  json j;
  for (Side s : sides(cfg)) {
    const auto g = gamma_cell(d, s);
    j[side_name(s)] = {{"gamma", g.value},
                       {"w", g.cell.w == BoundaryState3::Zero ? "0" : "1"},
                       {"cell", g.cell.name},
                       {"case", g.cell.stationary_case}};
  }
  emit_json(cfg, j);
}

void cmd_chain(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const auto d = derive(resolve_params(cfg));
  json j;
  for (Side s : sides(cfg)) {
    const auto chain = boundary_chain(d, s);
    const auto nu = stationary_solve(chain);
    json entry = io::to_json(chain);
    entry["stationary"] = {nu.mass(0), nu.mass(1), nu.mass(2)};
    j[side_name(s)] = entry;
  }
  emit_json(cfg, j);
}

void cmd_drift(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const auto d = derive(resolve_params(cfg));
  const auto rep = condition_check(d);
  json j;
  j["drift_bound"] = io::to_json(rep)["drift_bound"];
  for (Side s : sides(cfg)) {
    json entry;
    entry["mean_increment"] = {{"0", mean_increment(d, s, BoundaryState3::Zero)},
                               {"1", mean_increment(d, s, BoundaryState3::One)},
                               {"*", mean_increment(d, s, BoundaryState3::Star)}};
    entry["asymptotic_bound"] = asymptotic_increment_bound(d, s);
    if (cfg.steps > 0) {
      entry["empirical"] = io::to_json(
          empirical_drift(d, s, cfg.steps, cfg.burn_in, substream_seed(cfg.seed, static_cast<std::uint64_t>(s))));
    }
    j[side_name(s)] = entry;
  }
  emit_json(cfg, j);
}

void cmd_island(const RunConfig& cfg) {
  const auto d = derive(resolve_params(cfg));
  if (cfg.renewal) {
    require_format(cfg, {"json"});
    RenewalOptions opt;
    opt.initial_gap = 3;
    opt.target_gap = cfg.target;
    return emit_json(cfg, io::to_json(renewal_experiment(d, cfg.runs, cfg.seed, opt)));
  }
  require_format(cfg, {"csv", "json"});
  const auto traj = simulate_island(d, cfg.n0, cfg.horizon, cfg.seed);
  if (cfg.format == "json") {
    const auto& last = traj.back();
    return emit_json(cfg, {{"steps", traj.size() - 1},
                           {"alive", last.alive},
                           {"final_gap", last.gap()},
                           {"seed", cfg.seed}});
  }
  Sink sink(cfg.output);
  write_trajectory_csv(sink.stream(), traj);
  sink.close();
}

void cmd_envelope(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv", "pgm"});
  const auto d = derive(resolve_params(cfg));
  const std::uint64_t max_steps = cfg.steps > 0 ? cfg.steps : 100'000;
  std::size_t keep = 0;
  if (cfg.format == "pgm") keep = cfg.rows > 0 ? cfg.rows : 200;
  const auto run = run_to_decorrelation(d, cfg.N, max_steps, cfg.seed, keep);
  if (cfg.format == "pgm") {
    if (cfg.output.empty()) throw InvalidInput("--format pgm needs --output");
    write_pgm(raster(run.history), cfg.output);
    return;
  }
  if (cfg.format == "csv") {
    Sink sink(cfg.output);
    io::write_density_csv(sink.stream(), run.density);
    sink.close();
    return;
  }
  emit_json(cfg, {{"N", cfg.N},
                  {"max_steps", max_steps},
                  {"seed", cfg.seed},
                  {"hit_time", run.hit_time ? json(*run.hit_time) : json(nullptr)}});
}

void cmd_ca1000(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  std::vector<double> grid = cfg.grid;
  if (cfg.eps) grid.insert(grid.begin(), *cfg.eps);
  if (grid.empty()) throw InvalidInput("ca1000 needs --eps or --grid");
  const auto rows = refined_sweep(grid, cfg.steps, cfg.burn_in, cfg.seed);
  if (cfg.format == "csv") {
    Sink sink(cfg.output);
    io::write_refined_csv(sink.stream(), rows);
    sink.close();
    return;
  }
  json out = json::array();
  for (const auto& row : rows) {
    json j = io::to_json(row);
    j["drift_for_1110"] = drift_for_1110(row.eps);
    if (cfg.steps == 0) {
      j.erase("empirical_drift");
      j.erase("stderr");
    }
    out.push_back(j);
  }
  emit_json(cfg, out.size() == 1 ? out[0] : out);
}

std::vector<CaCode> parse_codes(const std::vector<std::string>& words) {
  if (words.empty()) return all_ca_codes();
  std::vector<CaCode> codes;
  for (const auto& w : words) codes.push_back(CaCode::parse(w));
  return codes;
}

void cmd_sweep(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  const auto codes = parse_codes(cfg.codes);
  const auto grid = cfg.grid.empty() ? default_eps_grid() : cfg.grid;
  if (cfg.crossover) {
    json out = json::array();
    for (CaCode c : codes) {
      const auto x = crossover_epsilon(c);
      out.push_back({{"code", c.str()},
                     {"holds_at_min", x.holds_at_min},
                     {"crossover_eps", x.eps ? json(*x.eps) : json(nullptr)},
                     {"sign_changes", x.sign_changes}});
    }
    return emit_json(cfg, out);
  }
  const auto rows = epsilon_sweep(codes, grid, cfg.jobs);
  if (cfg.format == "csv") {
    Sink sink(cfg.output);
    io::write_sweep_csv(sink.stream(), rows);
    sink.close();
    return;
  }
  json out = json::array();
  for (const auto& row : rows) out.push_back(io::to_json(row));
  emit_json(cfg, out);
}

void cmd_volume(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv"});
  const auto v = volume_estimate(cfg.samples, cfg.seed, cfg.jobs);
  if (v.degenerate > 0) std::cerr << "note: " << v.degenerate << " draws hit a degenerate gamma cell\n";
  if (cfg.format == "csv") {
    Sink sink(cfg.output);
    io::write_volume_csv(sink.stream(), v);
    sink.close();
    return;
  }
  emit_json(cfg, io::to_json(v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ergodicity analysis of two-neighbour binary probabilistic cellular automata"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--params", cfg.params, "p00,p01,p10,p11");
    sub->add_option("--ca", cfg.ca, "4-digit CA code, used with --eps");
    sub->add_option("--eps", cfg.eps, "error rate in [0, 1/2]");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv, json or pgm");
    sub->add_option("--output", cfg.output, "output file (default: stdout)");
    sub->add_option("--config", cfg.config, "JSON file with the same field names; flags override it");
  };

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"derive", "all derived quantities", cmd_derive},
      {"check", "ergodicity criterion report", cmd_check},
      {"gamma", "gamma table value per side", cmd_gamma},
      {"chain", "boundary-state chain and its stationary law", cmd_chain},
      {"drift", "analytic boundary drifts, optional Monte Carlo (--steps)", cmd_drift},
      {"island", "simulate one island, or a renewal experiment", cmd_island},
      {"envelope", "envelope PCA on a ring until no unknown cell is left", cmd_envelope},
      {"ca1000", "size-two boundary analysis of CA 1000 / 1110 with errors", cmd_ca1000},
      {"sweep", "criterion over CA codes and error rates", cmd_sweep},
      {"volume", "Monte Carlo volume of the criterion region", cmd_volume},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.emplace_back(sub, &c);
  }
  auto sub = [&](const char* name) { return app.get_subcommand(name); };
  for (const char* name : {"derive", "check", "gamma", "chain", "drift", "island", "envelope"}) add_params(sub(name));
  sub("ca1000")->add_option("--eps", cfg.eps, "error rate in (0, 1/2)");
  for (const char* name : {"gamma", "chain", "drift"}) sub(name)->add_option("--side", cfg.side, "right, left or both");
  for (const char* name : {"drift", "ca1000"}) {
    sub(name)->add_option("--steps", cfg.steps, "Monte Carlo steps after burn-in (0 = analytic only)");
    sub(name)->add_option("--burn-in", cfg.burn_in, "discarded Monte Carlo steps");
  }
  sub("island")->add_option("--n0", cfg.n0, "initial island gap (>= 3)");
  sub("island")->add_option("--horizon", cfg.horizon, "maximum number of steps");
  sub("island")->add_flag("--renewal", cfg.renewal, "respawn islands until one reaches --target");
  sub("island")->add_option("--target", cfg.target, "gap counted as survival in --renewal");
  sub("island")->add_option("--runs", cfg.runs, "independent renewal runs");
  sub("envelope")->add_option("--N", cfg.N, "ring size (>= 3)");
  sub("envelope")->add_option("--steps", cfg.steps, "maximum number of steps (default 100000)");
  sub("envelope")->add_option("--rows", cfg.rows, "rows kept for --format pgm (default 200)");
  sub("ca1000")->add_option("--grid", cfg.grid, "additional eps values")->delimiter(',');
  sub("sweep")->add_option("--codes", cfg.codes, "CA codes (default: all 16)")->delimiter(',');
  sub("sweep")->add_option("--grid", cfg.grid, "eps grid in (0, 1/2]")->delimiter(',');
  sub("sweep")->add_flag("--crossover", cfg.crossover, "bisect the eps where the criterion starts to hold");
  sub("volume")->add_option("--samples", cfg.samples, "number of uniform quadruplets");
  for (const char* name : {"sweep", "volume"}) sub(name)->add_option("--jobs", cfg.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kInvalidInput;
  }

  for (const auto& [sub_app, command] : subs) {
    if (!sub_app->parsed()) continue;
    try {
      merge_config(*sub_app, cfg);
      command->run(cfg);
      return kOk;
    } catch (const DegenerateDenominator& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kDegenerate;
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kIoFailure;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n\n" << sub_app->help();
      return kInvalidInput;
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInvalidInput;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << '\n';
      return 1;
    }
  }
  return kInvalidInput;
}
