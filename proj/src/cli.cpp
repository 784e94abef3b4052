#include "deficitx/cli.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deficitx/channels.hpp"
#include "deficitx/deficit.hpp"
#include "deficitx/families.hpp"
#include "deficitx/oracle.hpp"
#include "deficitx/parallel.hpp"
#include "deficitx/state_io.hpp"

namespace deficitx {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError("empty parameter list");
  return values;
}

// Shared state-selection flags. Exactly one of --file, the inline Bloch
// flags, or --family/--param must be used.
struct StateInput {
  std::string file;
  std::string family;
  std::string param_text;
  double x = 0, y = 0, t1 = 0, t2 = 0, t3 = 0;
  CLI::Option* file_opt = nullptr;
  CLI::Option* family_opt = nullptr;
  CLI::Option* param_opt = nullptr;
  std::array<CLI::Option*, 5> bloch_opts{};

  void attach(CLI::App* cmd) {
    file_opt = cmd->add_option("--file", file, "state JSON file ({x,y,t1,t2,t3} or {a..f})");
    bloch_opts[0] = cmd->add_option("--x", x, "Bloch x");
    bloch_opts[1] = cmd->add_option("--y", y, "Bloch y");
    bloch_opts[2] = cmd->add_option("--t1", t1, "Bloch t1");
    bloch_opts[3] = cmd->add_option("--t2", t2, "Bloch t2");
    bloch_opts[4] = cmd->add_option("--t3", t3, "Bloch t3");
    family_opt = cmd->add_option("--family", family,
                                 "family name: example1, example2, werner, bell-diagonal");
    param_opt = cmd->add_option("--param", param_text, "family parameter(s), comma separated");
  }

  bool inline_given() const {
    for (const auto* opt : bloch_opts) {
      if (opt->count() > 0) return true;
    }
    return false;
  }

  bool any_given() const {
    return file_opt->count() > 0 || inline_given() || family_opt->count() > 0;
  }

  BlochX resolve() const {
    const int sources =
        (file_opt->count() > 0 ? 1 : 0) + (inline_given() ? 1 : 0) + (family_opt->count() > 0 ? 1 : 0);
    if (sources == 0) {
      throw UsageError("no state given: use --file, --x/--y/--t1/--t2/--t3, or --family");
    }
    if (sources > 1) {
      throw UsageError("conflicting state sources: give exactly one of --file, inline flags, --family");
    }
    if (file_opt->count() > 0) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read state file: " + file);
      std::ostringstream buf;
      buf << in.rdbuf();
      return parse_state_json(buf.str());
    }
    if (inline_given()) {
      for (const auto* opt : bloch_opts) {
        if (opt->count() == 0) {
          throw UsageError("inline state needs all five of --x --y --t1 --t2 --t3");
        }
      }
      return {x, y, t1, t2, t3};
    }
    if (param_opt->count() == 0) throw UsageError("--family requires --param");
    const std::vector<double> params = parse_double_list(param_text);
    auto pt = make_family_point(family, params);
    if (!pt) throw UsageError("unknown family: " + family);
    return pt->state;
  }
};

struct OracleFlags {
  OracleSettings settings;

  void attach(CLI::App* cmd) {
    cmd->add_option("--theta-grid", settings.theta_grid_points, "theta grid points over [0, pi/2]")
        ->capture_default_str();
    cmd->add_option("--phi-grid", settings.phi_grid_points, "phi grid points over [0, pi)")
        ->capture_default_str();
    cmd->add_option("--refine-tol", settings.refine_tolerance, "refinement stop tolerance")
        ->capture_default_str();
    cmd->add_option("--refine-iters", settings.refine_max_iters, "refinement iteration cap")
        ->capture_default_str();
  }
};

void ensure_valid(const BlochX& s) {
  ValidationReport rep = validate(s);
  if (!rep.valid) throw InvalidStateError(std::move(rep));
}

json deficit_record(const BlochX& s) {
  const DeficitResult r = one_way_deficit(s);
  const BlochX cs = canonicalize(s).first;
  json rec = {
      {"schema_version", kSchemaVersion},
      {"state", {{"x", s.x}, {"y", s.y}, {"t1", s.t1}, {"t2", s.t2}, {"t3", s.t3}}},
      {"canonical", {{"x", cs.x}, {"y", cs.y}, {"t1", cs.t1}, {"t2", cs.t2}, {"t3", cs.t3}}},
      {"deficit", r.deficit},
      {"branch", to_string(r.decision.branch)},
      {"h0", r.decision.h0},
      {"h_pi2_prime", r.decision.h_pi2_prime},
      {"g_min", r.g_min},
      {"g_at_0", r.g_at_0},
      {"g_at_pi2", r.g_at_pi2},
      {"entropy", r.entropy},
  };
  if (r.decision.theta_s) rec["theta_s"] = *r.decision.theta_s;
  return rec;
}

json oracle_record(const BlochX& s, const OracleSettings& settings) {
  const OracleResult o = deficit_oracle(s, settings);
  const DeficitResult r = one_way_deficit(s);
  return json{
      {"g_min", o.g_min},
      {"theta", o.argmin.theta},
      {"phi", o.argmin.phi},
      {"deficit", o.deficit},
      {"evaluations", o.evaluations},
      {"analytic_deficit", r.deficit},
      {"gap_abs", std::abs(o.deficit - r.deficit)},
  };
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

int cmd_validate(const StateInput& input, std::ostream& out) {
  const BlochX s = input.resolve();
  const ValidationReport rep = validate(s);
  if (rep.valid) {
    out << "valid\n";
    return kExitOk;
  }
  out << "invalid\n";
  for (const auto& v : rep.violations) {
    out << v.constraint << ": measured " << fmt17(v.measured) << ", bound " << fmt17(v.bound)
        << "\n";
  }
  return kExitInvalidState;
}

int cmd_compute(const StateInput& input, bool with_oracle, const OracleSettings& settings,
                std::ostream& out) {
  const BlochX s = input.resolve();
  ensure_valid(s);
  json rec = deficit_record(s);
  if (with_oracle) rec["oracle"] = oracle_record(s, settings);
  out << rec.dump(2) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& family, double from, double to, double step, int threads,
              const std::string& out_path, std::ostream& fallback) {
  if (family != "example1" && family != "example2" && family != "werner") {
    throw UsageError("sweep needs a single-parameter family (example1, example2, werner)");
  }
  if (!(step > 0.0)) throw UsageError("sweep: --step must be > 0");
  if (to < from) throw UsageError("sweep: --to must be >= --from");
  std::vector<double> params;
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  params.reserve(count);
  for (std::size_t i = 0; i < count; ++i) params.push_back(from + static_cast<double>(i) * step);

  struct Row {
    double parameter;
    BlochX state;
    DeficitResult result;
  };
  std::vector<Row> rows(params.size());
  std::optional<std::string> failure;
  std::mutex failure_mutex;
  parallel_for_index(params.size(), resolve_thread_count(threads), [&](std::size_t i) {
    try {
      const auto pt = make_family_point(family, std::span<const double>(&params[i], 1));
      rows[i] = {params[i], pt->state, one_way_deficit(pt->state)};
    } catch (const std::exception& e) {
      const std::scoped_lock lock(failure_mutex);
      if (!failure) failure = e.what();
    }
  });
  if (failure) throw UsageError("sweep: " + *failure);

  OutputTarget target(out_path, fallback);
  std::ostream& os = target.stream();
  os << "# schema_version: " << kSchemaVersion << "\n";
  os << "parameter,deficit,branch,g_at_0,g_at_pi2,h0,h_pi2_prime,x,y,t1,t2,t3\n";
  for (const Row& r : rows) {
    os << fmt17(r.parameter) << ',' << fmt17(r.result.deficit) << ','
       << to_string(r.result.decision.branch) << ',' << fmt17(r.result.g_at_0) << ','
       << fmt17(r.result.g_at_pi2) << ',' << fmt17(r.result.decision.h0) << ','
       << fmt17(r.result.decision.h_pi2_prime) << ',' << fmt17(r.state.x) << ','
       << fmt17(r.state.y) << ',' << fmt17(r.state.t1) << ',' << fmt17(r.state.t2) << ','
       << fmt17(r.state.t3) << "\n";
  }
  return kExitOk;
}

int cmd_decohere(const StateInput& input, double gamma_from, double gamma_to, int gamma_points,
                 bool paper_mode, int threads, const std::string& out_path,
                 std::ostream& fallback) {
  const BlochX s = input.resolve();
  ensure_valid(s);
  if (gamma_points < 1) throw UsageError("decohere: --gamma-points must be >= 1");
  std::vector<double> gammas;
  gammas.reserve(static_cast<std::size_t>(gamma_points));
  if (gamma_points == 1) {
    gammas.push_back(gamma_from);
  } else {
    const double step = (gamma_to - gamma_from) / (gamma_points - 1);
    for (int i = 0; i < gamma_points; ++i) gammas.push_back(gamma_from + i * step);
    gammas.back() = gamma_to;  // exact endpoint
  }
  const DampingMode mode = paper_mode ? DampingMode::PaperTransform : DampingMode::KrausExact;
  const std::vector<TrajectoryPoint> traj =
      deficit_trajectory(s, gammas, mode, resolve_thread_count(threads));
  std::vector<double> transitions;
  if (traj.size() >= 2) transitions = detect_branch_transitions(s, mode, traj);

  OutputTarget target(out_path, fallback);
  std::ostream& os = target.stream();
  os << "# schema_version: " << kSchemaVersion << "\n";
  os << "# mode: " << to_string(mode) << "\n";
  os << "gamma,deficit,branch,g_at_0,g_at_pi2,x,y,t1,t2,t3\n";
  for (const TrajectoryPoint& p : traj) {
    os << fmt17(p.gamma) << ',' << fmt17(p.deficit) << ',' << to_string(p.branch) << ','
       << fmt17(p.g_at_0) << ',' << fmt17(p.g_at_pi2) << ',' << fmt17(p.damped.x) << ','
       << fmt17(p.damped.y) << ',' << fmt17(p.damped.t1) << ',' << fmt17(p.damped.t2) << ','
       << fmt17(p.damped.t3) << "\n";
  }
  os << "# transitions:";
  if (transitions.empty()) {
    os << " none";
  } else {
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      os << (i == 0 ? " " : ",") << fmt17(transitions[i]);
    }
  }
  os << "\n";
  return kExitOk;
}

int cmd_oracle(const StateInput& input, const std::string& batch_path,
               const OracleSettings& settings, int threads, std::ostream& out) {
  if (!batch_path.empty()) {
    if (input.any_given()) {
      throw UsageError("--batch conflicts with other state sources");
    }
    std::ifstream in(batch_path);
    if (!in) throw UsageError("cannot read batch file: " + batch_path);
    std::vector<BlochX> states;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        states.push_back(parse_state_json(line));
      } catch (const StateSchemaError& e) {
        throw StateSchemaError("batch line " + std::to_string(lineno) + ": " + e.what());
      }
      ValidationReport rep = validate(states.back());
      if (!rep.valid) {
        throw InvalidStateError(std::move(rep));
      }
    }
    if (states.empty()) throw UsageError("batch file holds no states");

    struct Row {
      OracleResult oracle;
      double analytic = 0.0;
    };
    std::vector<Row> rows(states.size());
    parallel_for_index(states.size(), resolve_thread_count(threads), [&](std::size_t i) {
      rows[i] = {deficit_oracle(states[i], settings), one_way_deficit(states[i]).deficit};
    });

    out << "# schema_version: " << kSchemaVersion << "\n";
    out << "index,g_min,theta,phi,oracle_deficit,analytic_deficit,gap_abs,evaluations\n";
    double max_gap = 0.0, sum_gap = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double gap = std::abs(rows[i].oracle.deficit - rows[i].analytic);
      max_gap = std::max(max_gap, gap);
      sum_gap += gap;
      out << i << ',' << fmt17(rows[i].oracle.g_min) << ',' << fmt17(rows[i].oracle.argmin.theta)
          << ',' << fmt17(rows[i].oracle.argmin.phi) << ',' << fmt17(rows[i].oracle.deficit) << ','
          << fmt17(rows[i].analytic) << ',' << fmt17(gap) << ',' << rows[i].oracle.evaluations
          << "\n";
    }
    out << "# summary: n=" << rows.size() << ", max_gap=" << fmt17(max_gap)
        << ", mean_gap=" << fmt17(sum_gap / static_cast<double>(rows.size())) << "\n";
    return kExitOk;
  }

  const BlochX s = input.resolve();
  ensure_valid(s);
  json rec = oracle_record(s, settings);
  rec["schema_version"] = kSchemaVersion;
  out << rec.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"one-way quantum deficit of two-qubit X states"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check the physicality constraints");
  StateInput validate_state;
  validate_state.attach(validate_cmd);

  // compute
  auto* compute_cmd = app.add_subcommand("compute", "deficit, branch and criteria for one state");
  StateInput compute_state;
  compute_state.attach(compute_cmd);
  bool compute_with_oracle = false;
  compute_cmd->add_flag("--oracle", compute_with_oracle, "append the brute-force value and gap");
  OracleFlags compute_oracle_flags;
  compute_oracle_flags.attach(compute_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "deficit across a one-parameter family (CSV)");
  std::string sweep_family;
  double sweep_from = 0.0, sweep_to = 1.0, sweep_step = 0.0;
  int sweep_threads = 0;
  std::string sweep_out;
  sweep_cmd->add_option("--family", sweep_family, "example1, example2 or werner")->required();
  sweep_cmd->add_option("--from", sweep_from, "first parameter value")->capture_default_str();
  sweep_cmd->add_option("--to", sweep_to, "last parameter value")->capture_default_str();
  sweep_cmd->add_option("--step", sweep_step, "parameter increment")->required();
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = auto)");
  sweep_cmd->add_option("--out", sweep_out, "write CSV here instead of stdout");

  // decohere
  auto* deco_cmd = app.add_subcommand("decohere", "deficit trajectory under phase damping (CSV)");
  StateInput deco_state;
  deco_state.attach(deco_cmd);
  double gamma_from = 0.0, gamma_to = 1.0;
  int gamma_points = 101;
  bool paper_mode = false;
  int deco_threads = 0;
  std::string deco_out;
  deco_cmd->add_option("--gamma-from", gamma_from, "first gamma")->capture_default_str();
  deco_cmd->add_option("--gamma-to", gamma_to, "last gamma")->capture_default_str();
  deco_cmd->add_option("--gamma-points", gamma_points, "grid size")->capture_default_str();
  deco_cmd->add_flag("--paper-mode", paper_mode,
                     "use the (1-gamma)^2 printed transform instead of exact Kraus application");
  deco_cmd->add_option("--threads", deco_threads, "worker threads (0 = auto)");
  deco_cmd->add_option("--out", deco_out, "write CSV here instead of stdout");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force measurement minimization");
  StateInput oracle_state;
  oracle_state.attach(oracle_cmd);
  OracleFlags oracle_flags;
  oracle_flags.attach(oracle_cmd);
  std::string batch_path;
  int oracle_threads = 0;
  oracle_cmd->add_option("--batch", batch_path, "JSONL file with one state per line");
  oracle_cmd->add_option("--threads", oracle_threads, "worker threads for --batch (0 = auto)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("deficitx");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_state, out);
    if (compute_cmd->parsed()) {
      return cmd_compute(compute_state, compute_with_oracle, compute_oracle_flags.settings, out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_family, sweep_from, sweep_to, sweep_step, sweep_threads, sweep_out,
                       out);
    }
    if (deco_cmd->parsed()) {
      return cmd_decohere(deco_state, gamma_from, gamma_to, gamma_points, paper_mode, deco_threads,
                          deco_out, out);
    }
    if (oracle_cmd->parsed()) {
      return cmd_oracle(oracle_state, batch_path, oracle_flags.settings, oracle_threads, out);
    }
    err << "no subcommand selected\n";
    return kExitUsage;
  } catch (const InvalidStateError& e) {
    err << "invalid state: " << e.what() << "\n";
    return kExitInvalidState;
  } catch (const StateSchemaError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace deficitx
