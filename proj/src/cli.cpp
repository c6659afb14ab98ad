// Copyright 2026 The oqcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oqcc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "oqcc/analysis.hpp"
#include "oqcc/compiler.hpp"
#include "oqcc/errors.hpp"
#include "oqcc/serialize.hpp"
#include "oqcc/simulator.hpp"

namespace oqcc {

namespace {

constexpr const char* kVersion = "oqcc 0.1.0";

// Input errors map to exit 2; anything raised later maps through this.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
auto load(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  } catch (const Json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

DensityMatrix load_state(const std::string& path) {
  return load("state " + path, [&] { return DensityMatrix(matrix_from_json(read_json_file(path)), 1e-9); });
}

std::vector<std::size_t> parse_steps_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw InputError("--steps-list: \"" + item + "\" is not a positive integer");
    }
    if (pos != item.size() || n == 0) throw InputError("--steps-list: \"" + item + "\" is not a positive integer");
    out.push_back(static_cast<std::size_t>(n));
  }
  if (out.size() < 1) throw InputError("--steps-list is empty");
  if (!std::is_sorted(out.begin(), out.end()) ||
      std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InputError("--steps-list must be strictly ascending");
  }
  return out;
}

Json warnings_json(const Diagnostics& diag) {
  Json w = Json::array();
  for (const auto& s : diag.warnings) w.push_back(s);
  return w;
}

struct Options {
  bool quiet = false;
  bool pretty = false;
};

void emit(std::ostream& out, const Json& report, const Options& opt) {
  if (!opt.pretty) {
    out << report.dump() << '\n';
    return;
  }
  for (const auto& [k, v] : report.items()) {
    out << std::left << std::setw(16) << k << ' ' << v.dump() << '\n';
  }
}

int cmd_compile(const std::string& target, const std::string& generator, double time, std::size_t steps,
                const std::string& out_path, const Options& opt, std::ostream& out, std::ostream& err) {
  if (target.empty() == generator.empty()) throw InputError("exactly one of --target / --generator is required");
  Diagnostics diag;
  Json report{{"command", "compile"}};
  ControlProgram program;
  double distance = 0.0;

  if (!target.empty()) {
    const KrausChannel ch = load("target " + target, [&] { return channel_from_json(read_json_file(target)); });
    program = ch.size() == 2 ? synth_two_outcome(ch, &diag) : synth_multi_outcome(ch.operators(), &diag);
    distance = verify(program, ch).distance;
    report["source"] = "channel";
    report["outcomes"] = ch.size();
  } else {
    if (!(time > 0.0)) throw InputError("--time must be > 0 with --generator");
    if (steps < 1) throw InputError("--steps must be >= 1 with --generator");
    std::vector<TraceAdjustment> adj;
    const CanonicalGenerator g = load("generator " + generator, [&] {
      return generator_from_json(read_json_file(generator)).to_generator(&adj);
    });
    for (const auto& a : adj) {
      std::ostringstream m;
      m << "Lindblad operator " << a.index << " had trace (" << a.removed_trace.real() << ", "
        << a.removed_trace.imag() << "); compiled its traceless part with a Hamiltonian correction";
      diag.warnings.push_back(m.str());
    }
    program = synth_lindblad(g, time, steps, &diag);
    distance = verify(program, propagator(g, time)).distance;
    report["source"] = "generator";
    report["time"] = time;
    report["steps"] = steps;
  }
  const ProgramStats stats = program_stats(program);
  report["distance"] = distance;
  report["branches"] = stats.branch_count;
  report["measurements"] = stats.measurements;
  report["step_count"] = stats.steps;
  report["warnings"] = warnings_json(diag);
  if (!out_path.empty()) write_json_file(out_path, program_to_json(program));
  emit(out, report, opt);
  (void)err;
  return kExitOk;
}

int cmd_simulate(const std::string& program_path, const std::string& state_path, std::optional<std::size_t> trajectories,
                 std::uint64_t seed, unsigned workers, const std::string& out_path, const Options& opt,
                 std::ostream& out) {
  const ControlProgram p = load("program " + program_path, [&] { return program_from_json(read_json_file(program_path)); });
  const DensityMatrix rho = load_state(state_path);
  if (rho.dim() != p.dim) throw InputError("state dimension differs from program dimension");
  Json report{{"command", "simulate"}};
  ComplexMatrix result;
  if (trajectories) {
    TrajectoryConfig cfg{seed, *trajectories, rho, workers};
    const TrajectoryResult r = run_trajectories(p, cfg);
    result = r.estimate;
    report["mode"] = "trajectories";
    report["trajectories"] = *trajectories;
    report["seed"] = seed;
    report["standard_error"] = r.standard_error;
  } else {
    const auto branches = run_branches(p, rho, branch_cap_from_env());
    result = ComplexMatrix::Zero(p.dim, p.dim);
    for (const auto& b : branches) result += b.rho;
    report["mode"] = "branches";
    report["branches"] = branches.size();
  }
  report["trace"] = result.trace().real();
  if (!out_path.empty()) write_json_file(out_path, matrix_to_json(result));
  emit(out, report, opt);
  return kExitOk;
}

int cmd_verify(const std::string& program_path, const std::string& target_path, double tol, const Options& opt,
               std::ostream& out) {
  const ControlProgram p = load("program " + program_path, [&] { return program_from_json(read_json_file(program_path)); });
  const KrausChannel ch = load("target " + target_path, [&] { return channel_from_json(read_json_file(target_path)); });
  if (ch.d_in() != p.dim) throw InputError("target dimension differs from program dimension");
  const SynthesisReport r = verify(p, ch, target_path);
  const bool pass = r.distance <= tol;
  emit(out, Json{{"command", "verify"}, {"distance", r.distance}, {"tol", tol}, {"pass", pass}}, opt);
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_lindblad(const std::string& generator, double time, const std::string& steps_list,
                 const std::string& state_path, const Options& opt, std::ostream& out) {
  if (!(time > 0.0)) throw InputError("--time must be > 0");
  const std::vector<std::size_t> steps = parse_steps_list(steps_list);
  const CanonicalGenerator g =
      load("generator " + generator, [&] { return generator_from_json(read_json_file(generator)).to_generator(); });
  std::optional<DensityMatrix> rho;
  if (!state_path.empty()) {
    rho = load_state(state_path);
    if (rho->dim() != g.dim()) throw InputError("state dimension differs from generator dimension");
  }
  const Superoperator exact = propagator(g, time);
  Json rows = Json::array();
  std::vector<double> ns, errs;
  for (const std::size_t n : steps) {
    const ControlProgram p = synth_lindblad(g, time, n);
    const Superoperator s = program_superoperator(p);
    const double e = choi_distance(choi_of(s), choi_of(exact));
    Json row{{"steps", n}, {"channel_error", e}};
    if (rho) row["state_error"] = trace_distance(s.apply(rho->matrix()), exact.apply(rho->matrix()));
    rows.push_back(std::move(row));
    ns.push_back(static_cast<double>(n));
    errs.push_back(e);
  }
  Json report{{"command", "lindblad"}, {"time", time}, {"results", std::move(rows)}};
  const double emax = *std::max_element(errs.begin(), errs.end());
  if (ns.size() >= 2 && emax > 1e-12) {
    report["slope"] = loglog_slope(ns, errs);
    report["floor"] = false;
  } else {
    report["slope"] = nullptr;
    report["floor"] = emax <= 1e-12;
  }
  emit(out, report, opt);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open-system control compiler and simulator", "oqcc"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--quiet", opt.quiet, "Suppress the version banner");
  app.add_flag("--pretty", opt.pretty, "Human-readable reports");

  std::string target, generator, out_path, program_path, state_path, steps_list = "16,32,64,128";
  double time = 0.0, tol = 1e-8;
  std::size_t steps = 0, trajectories = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  auto* compile = app.add_subcommand("compile", "Synthesize a control program");
  compile->add_option("--target", target, "ChannelFile to synthesize");
  compile->add_option("--generator", generator, "GeneratorFile to synthesize");
  compile->add_option("--time", time, "Total evolution time");
  compile->add_option("--steps", steps, "Stroboscopic steps");
  compile->add_option("--out", out_path, "ProgramFile to write");

  auto* simulate = app.add_subcommand("simulate", "Run a program on a state");
  simulate->add_option("--program", program_path, "ProgramFile")->required();
  simulate->add_option("--state", state_path, "MatrixFile with the initial state")->required();
  auto* traj_opt = simulate->add_option("--trajectories", trajectories, "Sample this many trajectories");
  simulate->add_option("--seed", seed, "Trajectory seed");
  simulate->add_option("--workers", workers, "Trajectory worker threads");
  simulate->add_option("--out", out_path, "MatrixFile to write");

  auto* verify_cmd = app.add_subcommand("verify", "Compare a program with a channel");
  verify_cmd->add_option("--program", program_path, "ProgramFile")->required();
  verify_cmd->add_option("--target", target, "ChannelFile")->required();
  verify_cmd->add_option("--tol", tol, "Pass threshold on the Choi distance");

  auto* lindblad = app.add_subcommand("lindblad", "Stroboscopic convergence study");
  lindblad->add_option("--generator", generator, "GeneratorFile")->required();
  lindblad->add_option("--time", time, "Total evolution time")->required();
  lindblad->add_option("--steps-list", steps_list, "Comma-separated ascending step counts");
  lindblad->add_option("--state", state_path, "MatrixFile with a probe state");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (!opt.quiet) err << kVersion << '\n';

  try {
    if (compile->parsed()) return cmd_compile(target, generator, time, steps, out_path, opt, out, err);
    if (simulate->parsed()) {
      std::optional<std::size_t> n;
      if (traj_opt->count() > 0) {
        if (trajectories < 1) throw InputError("--trajectories must be >= 1");
        n = trajectories;
      }
      return cmd_simulate(program_path, state_path, n, seed, workers, out_path, opt, out);
    }
    if (verify_cmd->parsed()) return cmd_verify(program_path, target, tol, opt, out);
    if (lindblad->parsed()) return cmd_lindblad(generator, time, steps_list, state_path, opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::kBranchExplosion) {
      err << "hint: rerun with --trajectories N\n";
      return kExitResourceCap;
    }
    if (e.kind() == ErrorKind::kCouplingOutOfRange) err << "hint: increase --steps\n";
    return kExitSynthesisError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace oqcc
