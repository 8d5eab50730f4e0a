#include "run_config.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "faithful/harness.hpp"
#include "faithful/seesaw.hpp"
#include "faithful/solver.hpp"
#include "faithful/witness.hpp"

#ifndef FAITHFUL_VERSION
#define FAITHFUL_VERSION "unknown"
#endif

namespace faithful::cli {

namespace {

using json = nlohmann::json;

using Slot = std::variant<int*, std::int64_t*, std::uint64_t*, double*, std::string*,
                          std::vector<double>*>;

struct Field {
  std::string key;
  Slot slot;
  std::string help;
  std::vector<Command> commands;

  bool applies(Command c) const {
    for (Command x : commands)
      if (x == c) return true;
    return false;
  }
};

// Every flag, shared by the parser, the config file reader and the writers.
std::vector<Field> fields(RunConfig& c) {
  using C = Command;
  return {
      {"seesaw-restarts", &c.seesaw_restarts,
       "Random restarts of the see-saw search over maximally entangled targets",
       {C::analyze, C::table}},
      {"tol", &c.tol, "Certified duality gap required from the SDP solver",
       {C::analyze, C::table, C::witness_order}},
      {"max-iterations", &c.max_iterations, "Iteration budget of the SDP solver",
       {C::analyze, C::table, C::witness_order}},
      {"json", &c.json_out, "Also write the JSON report to this file", {C::analyze}},
      {"measure", &c.measure, "Sampling measure: bures or hs (Hilbert-Schmidt)", {C::table}},
      {"d", &c.d, "Local dimension of the sampled states (2..8)", {C::table}},
      {"n", &c.n, "Number of samples", {C::table}},
      {"seed", &c.seed, "Seed of the random stream", {C::table, C::uqm}},
      {"workers", &c.workers, "Worker threads; the result does not depend on it", {C::table}},
      {"csv", &c.csv_out, "Also write header and row to this CSV file", {C::table}},
      {"s", &c.s, "Schmidt coefficients, comma or space separated (normalized and sorted)",
       {C::schmidt_obs4, C::schmidt_obs5}},
      {"l", &c.level, "Schmidt number level of the witness", {C::schmidt_obs4, C::schmidt_obs5}},
      {"restarts", &c.restarts, "See-saw restarts for the upper bound", {C::uqm}},
  };
}

std::size_t expected_inputs(Command c) {
  switch (c) {
    case Command::analyze:
    case Command::witness_decompose:
    case Command::uqm: return 1;
    case Command::witness_order: return 2;
    case Command::table:
    case Command::schmidt_obs4:
    case Command::schmidt_obs5: return 0;
  }
  return 0;
}

std::string command_name(Command c) {
  std::string out;
  for (const auto& w : command_words(c)) out += (out.empty() ? "" : " ") + w;
  return out;
}

Command parse_command_name(const std::string& name) {
  for (Command c : {Command::analyze, Command::table, Command::witness_decompose,
                    Command::witness_order, Command::schmidt_obs4, Command::schmidt_obs5,
                    Command::uqm})
    if (command_name(c) == name) return c;
  throw UsageError("config file: unknown command '" + name + "'");
}

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : ",") + format_double(x);
  return out;
}

bool is_empty(const Slot& slot) {
  if (auto p = std::get_if<std::string*>(&slot)) return (*p)->empty();
  if (auto p = std::get_if<std::vector<double>*>(&slot)) return (*p)->empty();
  return false;
}

void assign_from_json(const Field& f, const json& value) {
  const std::string where = "config file: '" + f.key + "' ";
  std::visit(
      [&](auto* target) {
        using T = std::remove_pointer_t<decltype(target)>;
        if constexpr (std::is_same_v<T, int>) {
          if (!value.is_number_integer()) throw UsageError(where + "must be an integer");
          const auto v = value.get<std::int64_t>();
          if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
            throw UsageError(where + "is out of range");
          *target = static_cast<int>(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          if (!value.is_number_integer()) throw UsageError(where + "must be an integer");
          *target = value.get<std::int64_t>();
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          if (!value.is_number_unsigned())
            throw UsageError(where + "must be a non-negative integer");
          *target = value.get<std::uint64_t>();
        } else if constexpr (std::is_same_v<T, double>) {
          if (!value.is_number()) throw UsageError(where + "must be a number");
          *target = value.get<double>();
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (!value.is_string()) throw UsageError(where + "must be a string");
          *target = value.get<std::string>();
        } else {
          if (value.is_string()) {
            *target = parse_number_list(value.get<std::string>(), "--" + f.key);
          } else if (value.is_array()) {
            target->clear();
            for (const auto& x : value) {
              if (!x.is_number()) throw UsageError(where + "must contain only numbers");
              target->push_back(x.get<double>());
            }
          } else {
            throw UsageError(where + "must be an array of numbers");
          }
        }
      },
      f.slot);
}

json slot_json(const Slot& slot) {
  return std::visit([](auto* p) { return json(*p); }, slot);
}

std::string slot_text(const Slot& slot) {
  return std::visit(
      [](auto* p) -> std::string {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) return format_double(*p);
        else if constexpr (std::is_same_v<T, std::string>) return *p;
        else if constexpr (std::is_same_v<T, std::vector<double>>) return format_list(*p);
        else return std::to_string(*p);
      },
      slot);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

json complex_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

json real_json(const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

RealVector to_real_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

ClassifyConfig classify_config(const RunConfig& config) {
  ClassifyConfig cc;
  cc.sdp.tolerance = config.tol;
  cc.sdp.max_iterations = config.max_iterations;
  cc.seesaw.restarts = config.seesaw_restarts;
  return cc;
}

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const BipartiteState state = load_state(read_file(config.inputs[0]));
  state.local_dim();
  const FaithfulnessReport report = classify(state, classify_config(config));
  const std::string text = report_json(report);
  out << text;
  if (!config.json_out.empty()) write_file(config.json_out, text);
  if (report.solver_failure && report.verdict == Category::undecided) {
    err << "error: SDP solver did not converge and no other stage decided the state\n";
    return kExitSolver;
  }
  return kExitOk;
}

int run_table_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::atomic<std::size_t> failures{0};
  const auto observer = [&](std::uint64_t, const BipartiteState&, const FaithfulnessReport& r) {
    if (r.solver_failure) ++failures;
  };
  const TableRow row =
      run_table(parse_measure(config.measure), config.d, static_cast<std::size_t>(config.n),
                config.seed, config.workers, classify_config(config), observer);
  const std::string text = table_csv_header() + table_csv_line(row);
  out << text;
  if (!config.csv_out.empty()) write_file(config.csv_out, text);
  if (failures > 0) {
    err << "error: SDP solver did not converge on " << failures.load()
        << " sample(s); they are counted as undecided unless the see-saw decided them\n";
    return kExitSolver;
  }
  return kExitOk;
}

int run_witness_decompose(const RunConfig& config, std::ostream& out) {
  const PureState ps = load_state_vector(read_file(config.inputs[0]));
  const RfwDecomposition dec = verify_rfw_decomposition(ps.psi, ps.dims);
  const LhvWeights weights = lhv_weights(dec.schmidt);
  const RealVector diag = dec.z.diagonal().real();
  emit(out, {{"schmidt", real_json(dec.schmidt)},
             {"weights", weights.probabilities},
             {"z_diagonal", real_json(diag)},
             {"off_diagonal_mass", dec.off_diagonal_mass},
             {"min_eigenvalue", dec.min_eigenvalue},
             {"diagonal", dec.diagonal},
             {"psd", dec.psd},
             {"entries_expected", dec.entries_expected}});
  return kExitOk;
}

int run_witness_order(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Witness w = load_witness(read_file(config.inputs[0]));
  const std::vector<Witness> set = load_witness_set(read_file(config.inputs[1]));
  SdpOptions opts;
  opts.tolerance = config.tol;
  opts.max_iterations = config.max_iterations;
  const OrderingVerdict v = witness_weaker_than(w, set, opts);
  json doc = {{"weaker", v.weaker},
              {"worst_value", v.worst_value},
              {"dual_bound", v.dual_bound},
              {"iterations", v.iterations},
              {"converged", v.converged},
              {"note", v.note}};
  if (!v.weaker) doc["counterexample"] = complex_json(v.certificate);
  emit(out, doc);
  if (!v.converged) {
    err << "error: ordering SDP did not converge\n";
    return kExitSolver;
  }
  return kExitOk;
}

int run_obs4(const RunConfig& config, std::ostream& out) {
  const Obs4Result r = obs4_detectable(to_real_vector(config.s), config.level);
  emit(out, {{"detectable", r.detectable}, {"margin", r.margin}, {"level", config.level}});
  return kExitOk;
}

int run_obs5(const RunConfig& config, std::ostream& out) {
  const Obs5Result r = obs5_counterexample(to_real_vector(config.s), config.level);
  emit(out, {{"epsilon", r.epsilon},
             {"x", real_json(r.x)},
             {"overlap", r.overlap},
             {"beta", r.beta},
             {"sum_x", r.sum_x},
             {"detected_by_target", r.detected_by_target},
             {"undetected_by_max_entangled", r.undetected_by_max_entangled},
             {"level", config.level}});
  return kExitOk;
}

int run_uqm(const RunConfig& config, std::ostream& out) {
  const UqmInstance inst = load_uqm(read_file(config.inputs[0]));
  const UqmResult r = uqm_minimize(inst, config.restarts, config.seed);
  emit(out, {{"lower_bound", r.lower_bound},
             {"upper_bound", r.upper_bound},
             {"unitary", complex_json(r.unitary)}});
  return kExitOk;
}

struct Parser {
  CLI::App app{"Faithfulness of bipartite quantum states: classification, sampling studies "
               "and witness tools.",
               "faithful"};
  std::string config_path;
  std::array<std::string, 2> positional;
  std::string s_text;
  std::vector<std::pair<CLI::App*, Command>> leaves;

  explicit Parser(RunConfig& cfg) {
    app.set_version_flag("--version", FAITHFUL_VERSION);
    app.add_option("--config", config_path,
                   "JSON file with flag values (keys are flag names without dashes, plus "
                   "optional \"command\" and \"inputs\"); flags on the command line win");
    app.fallthrough();
    app.footer(
        "Exit codes: 0 success, 2 input error, 3 solver non-convergence.\n"
        "Run 'faithful <command> --help' for the flags of a command.");

    auto* analyze = app.add_subcommand(
        "analyze",
        "Classify one state (density matrix JSON) as faithful or unfaithful: PPT test, the "
        "X_d eigenvalue bound (exact for two qubits), the SDP over operators with maximally "
        "mixed marginals, then a see-saw search over maximally entangled targets. Prints a "
        "JSON report with all certificates.");
    analyze->add_option("state", positional[0], "Density matrix file {d_a, d_b, re, im}");
    add_leaf(analyze, Command::analyze, cfg);

    auto* table = app.add_subcommand(
        "table",
        "Sample random states from the Bures or Hilbert-Schmidt measure, classify each one and "
        "print the fraction of every verdict with binomial standard errors as CSV.");
    add_leaf(table, Command::table, cfg);

    auto* witness = app.add_subcommand("witness", "Fidelity witness tools");
    auto* decompose = witness->add_subcommand(
        "decompose",
        "Write the fidelity witness of a pure state as a convex mixture of real fidelity "
        "witnesses plus a remainder Z, and check that Z is diagonal and positive.");
    decompose->add_option("psi", positional[0], "State vector file {d_a, d_b, re, im}");
    add_leaf(decompose, Command::witness_decompose, cfg);
    auto* order = witness->add_subcommand(
        "order",
        "Decide by SDP whether a witness is weaker than a set of witnesses, i.e. whether every "
        "state it detects is detected by some member of the set. Prints a counterexample "
        "state otherwise.");
    order->add_option("witness", positional[0], "Witness file");
    order->add_option("set", positional[1], "Witness set file (array or {\"witnesses\": [...]})");
    add_leaf(order, Command::witness_order, cfg);

    auto* schmidt = app.add_subcommand("schmidt", "Schmidt number witness tools");
    auto* obs4 = schmidt->add_subcommand(
        "obs4",
        "Whether the pure state with Schmidt vector s is detected by some level-l Schmidt "
        "witness built on a maximally entangled state (sum of s exceeds sqrt(l)).");
    add_leaf(obs4, Command::schmidt_obs4, cfg);
    auto* obs5 = schmidt->add_subcommand(
        "obs5",
        "Construct a pure state detected by the level-l Schmidt witness of s but by none built "
        "on a maximally entangled state.");
    add_leaf(obs5, Command::schmidt_obs5, cfg);

    auto* uqm = app.add_subcommand(
        "uqm",
        "Bracket the minimum over unitaries U of sum_j |Tr(A_j^dagger U)|^2: a spectral lower "
        "bound and a see-saw upper bound.");
    uqm->add_option("instance", positional[0], "Instance file {n, matrices: [{re, im}, ...]}");
    add_leaf(uqm, Command::uqm, cfg);
  }

  void add_leaf(CLI::App* sub, Command command, RunConfig& cfg) {
    for (const Field& f : fields(cfg)) {
      if (!f.applies(command)) continue;
      const std::string flag = "--" + f.key;
      std::visit(
          [&](auto* p) {
            using T = std::remove_pointer_t<decltype(p)>;
            if constexpr (std::is_same_v<T, std::vector<double>>) {
              sub->add_option(flag, s_text, f.help)->type_name("LIST");
            } else {
              auto* opt = sub->add_option(flag, *p, f.help);
              if constexpr (std::is_same_v<T, std::string>) {
                if (!p->empty()) opt->capture_default_str();
              } else {
                opt->capture_default_str();
              }
            }
          },
          f.slot);
    }
    leaves.emplace_back(sub, command);
  }

  // The deepest parsed subcommand, or nullptr when none was given.
  std::pair<CLI::App*, Command> active() const {
    for (const auto& [sub, command] : leaves)
      if (sub->parsed()) return {sub, command};
    return {nullptr, Command::analyze};
  }
};

}  // namespace

std::vector<std::string> command_words(Command c) {
  switch (c) {
    case Command::analyze: return {"analyze"};
    case Command::table: return {"table"};
    case Command::witness_decompose: return {"witness", "decompose"};
    case Command::witness_order: return {"witness", "order"};
    case Command::schmidt_obs4: return {"schmidt", "obs4"};
    case Command::schmidt_obs5: return {"schmidt", "obs5"};
    case Command::uqm: return {"uqm"};
  }
  return {};
}

std::vector<double> parse_number_list(std::string_view text, std::string_view flag) {
  std::vector<double> out;
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size())
      throw UsageError(std::string(flag) + ": '" + token + "' is not a number");
    out.push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n') flush();
    else token += ch;
  }
  flush();
  return out;
}

void validate(const RunConfig& c) {
  const auto fail = [](const std::string& msg) { throw UsageError(msg); };
  const auto got = [](auto v) {
    std::ostringstream ss;
    ss << " (got " << v << ")";
    return ss.str();
  };
  const Command cmd = c.command;
  const auto uses = [&](const char* key) {
    RunConfig scratch;
    for (const Field& f : fields(scratch))
      if (f.key == key) return f.applies(cmd);
    return false;
  };
  if (uses("seesaw-restarts") && c.seesaw_restarts < 1)
    fail("--seesaw-restarts must be >= 1" + got(c.seesaw_restarts));
  if (uses("tol") && !(c.tol > 0.0 && std::isfinite(c.tol))) fail("--tol must be > 0" + got(c.tol));
  if (uses("max-iterations") && c.max_iterations < 1)
    fail("--max-iterations must be >= 1" + got(c.max_iterations));
  if (cmd == Command::table) {
    if (c.measure != "bures" && c.measure != "hs")
      fail("--measure must be 'bures' or 'hs' (got '" + c.measure + "')");
    if (c.d < 2) fail("--d must be >= 2" + got(c.d));
    if (c.d > 8) fail("--d must be <= 8" + got(c.d));
    if (c.n < 1) fail("--n must be >= 1" + got(c.n));
    if (c.workers < 1) fail("--workers must be >= 1" + got(c.workers));
  }
  if (cmd == Command::schmidt_obs4 || cmd == Command::schmidt_obs5) {
    if (c.s.empty()) fail("--s is required (Schmidt coefficients)");
    for (double x : c.s)
      if (!(x >= 0.0 && std::isfinite(x))) fail("--s entries must be finite and >= 0" + got(x));
    if (c.level < 1) fail("--l must be >= 1" + got(c.level));
    const auto max_level = static_cast<int>(c.s.size()) - (cmd == Command::schmidt_obs5 ? 1 : 0);
    if (c.level > max_level)
      fail("--l must be <= " + std::to_string(max_level) + " for " +
           std::to_string(c.s.size()) + " Schmidt coefficients" + got(c.level));
  }
  if (cmd == Command::uqm && c.restarts < 1) fail("--restarts must be >= 1" + got(c.restarts));
  const std::size_t want = expected_inputs(cmd);
  if (c.inputs.size() != want)
    fail(command_name(cmd) + ": expected " + std::to_string(want) + " input file(s), got " +
         std::to_string(c.inputs.size()));
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  Parser p(cfg);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    p.app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream o, er;
    p.app.exit(e, o, er);
    throw HelpRequested(o.str());
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream o, er;
    p.app.exit(e, o, er);
    throw HelpRequested(o.str());
  } catch (const CLI::CallForVersion& e) {
    std::ostringstream o, er;
    p.app.exit(e, o, er);
    throw HelpRequested(o.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto [leaf, command] = p.active();
  if (leaf == nullptr) {
    std::string msg = "missing command";
    for (const char* group : {"witness", "schmidt"})
      if (p.app.get_subcommand(group)->parsed())
        msg = std::string("missing ") + group + " subcommand";
    throw UsageError(msg + "\n\n" + p.app.help());
  }
  cfg.command = command;
  for (const auto& path : p.positional)
    if (!path.empty()) cfg.inputs.push_back(path);
  if (leaf->get_option_no_throw("--s") && leaf->get_option("--s")->count() > 0)
    cfg.s = parse_number_list(p.s_text, "--s");

  if (!p.config_path.empty()) {
    json doc;
    try {
      doc = json::parse(read_file(p.config_path));
    } catch (const json::parse_error& e) {
      throw UsageError("--config: " + p.config_path + ": " + e.what());
    }
    if (!doc.is_object()) throw UsageError("--config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        if (!value.is_string() || value.get<std::string>() != command_name(command))
          throw UsageError("--config: command " + value.dump() + " does not match '" +
                           command_name(command) + "'");
        continue;
      }
      if (key == "inputs") {
        if (!value.is_array()) throw UsageError("--config: 'inputs' must be an array");
        if (cfg.inputs.empty())
          for (const auto& x : value) {
            if (!x.is_string()) throw UsageError("--config: 'inputs' must hold strings");
            cfg.inputs.push_back(x.get<std::string>());
          }
        continue;
      }
      bool known = false;
      for (const Field& f : fields(cfg)) {
        if (f.key != key) continue;
        known = true;
        if (!f.applies(command))
          throw UsageError("--config: '" + key + "' does not apply to " + command_name(command));
        if (leaf->get_option("--" + key)->count() == 0) assign_from_json(f, value);
      }
      if (!known) throw UsageError("--config: unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

std::vector<std::string> to_args(const RunConfig& config) {
  RunConfig copy = config;
  std::vector<std::string> out = command_words(copy.command);
  for (const auto& in : copy.inputs) out.push_back(in);
  for (const Field& f : fields(copy)) {
    if (!f.applies(copy.command) || is_empty(f.slot)) continue;
    out.push_back("--" + f.key);
    out.push_back(slot_text(f.slot));
  }
  return out;
}

std::string to_json(const RunConfig& config) {
  RunConfig copy = config;
  json doc = {{"command", command_name(copy.command)}, {"inputs", copy.inputs}};
  for (const Field& f : fields(copy))
    if (f.applies(copy.command) && !is_empty(f.slot)) doc[f.key] = slot_json(f.slot);
  return doc.dump(2) + "\n";
}

RunConfig from_json(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("command") || !doc["command"].is_string())
    throw UsageError("config file: missing \"command\"");
  RunConfig cfg;
  cfg.command = parse_command_name(doc["command"].get<std::string>());
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") continue;
    if (key == "inputs") {
      if (!value.is_array()) throw UsageError("config file: 'inputs' must be an array");
      for (const auto& x : value) {
        if (!x.is_string()) throw UsageError("config file: 'inputs' must hold strings");
        cfg.inputs.push_back(x.get<std::string>());
      }
      continue;
    }
    bool known = false;
    for (const Field& f : fields(cfg)) {
      if (f.key != key) continue;
      known = true;
      if (!f.applies(cfg.command))
        throw UsageError("config file: '" + key + "' does not apply to " +
                         command_name(cfg.command));
      assign_from_json(f, value);
    }
    if (!known) throw UsageError("config file: unknown key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

std::string usage() {
  RunConfig cfg;
  Parser p(cfg);
  return p.app.help();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::analyze: return run_analyze(config, out, err);
    case Command::table: return run_table_command(config, out, err);
    case Command::witness_decompose: return run_witness_decompose(config, out);
    case Command::witness_order: return run_witness_order(config, out, err);
    case Command::schmidt_obs4: return run_obs4(config, out);
    case Command::schmidt_obs5: return run_obs5(config, out);
    case Command::uqm: return run_uqm(config, out);
  }
  return kExitInput;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(argc, argv), out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantViolation& e) {
    err << "error: invalid state: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace faithful::cli
