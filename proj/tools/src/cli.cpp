#include "qsat_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsat/bench.hpp"
#include "qsat/circuit.hpp"
#include "qsat/error.hpp"
#include "qsat/fastsim.hpp"
#include "qsat/optimizer.hpp"
#include "qsat/qasm.hpp"
#include "qsat/rng.hpp"
#include "qsat/sat.hpp"
#include "qsat/simulator.hpp"
#include "qsat/synthesis.hpp"
#include "qsat/transpile.hpp"

#ifndef QSAT_VERSION
#define QSAT_VERSION "0.0.0"
#endif

namespace qsat::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

/// Collects the files a subcommand writes; every one gets a
/// <file>.manifest.json sidecar describing the run.
class Run {
 public:
  Run(std::string subcommand, const CLI::App& app) : subcommand_(std::move(subcommand)), app_(app) {}

  void seed(const std::string& name, std::uint64_t value) { seeds_[name] = value; }
  void input(const std::string& path) { inputs_.push_back(path); }
  void note(const std::string& key, ojson value) { extra_[key] = std::move(value); }

  void write(const std::string& path, const std::string& content) {
    write_file(path, content);
    outputs_.push_back(path);
  }

  void finish() const {
    const std::string text = manifest().dump(2) + "\n";
    for (const auto& path : outputs_) write_file(path + ".manifest.json", text);
  }

  ojson manifest() const {
    ojson m;
    m["tool"] = "qsat";
    m["version"] = QSAT_VERSION;
    m["subcommand"] = subcommand_;
    ojson flags = ojson::object();
    for (const CLI::Option* opt : app_.get_options()) {
      if (opt->count() == 0) continue;
      const auto& res = opt->results();
      const std::string name = opt->get_name();
      if (opt->get_expected_max() == 0) {
        flags[name] = true;
      } else if (res.size() == 1) {
        flags[name] = res.front();
      } else {
        flags[name] = res;
      }
    }
    m["flags"] = flags;
    m["seeds"] = seeds_;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    for (const auto& [k, v] : extra_.items()) m[k] = v;
    m["timestamp"] = utc_timestamp();
    return m;
  }

 private:
  std::string subcommand_;
  const CLI::App& app_;
  ojson seeds_ = ojson::object();
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  ojson extra_ = ojson::object();
};

struct LoadedInstance {
  KSatInstance instance;
  std::string path;
};

KSatInstance load(Run& run, const std::string& path) {
  run.input(path);
  return load_instance(path);
}

/// Angle source shared by build, simulate, and bench: a schedule file or
/// inline --gammas/--betas.
struct AngleArgs {
  std::string file;
  std::vector<double> gammas;
  std::vector<double> betas;
  std::size_t p = 0;  // 0 = every schedule (or the largest, for build)

  void add_to(CLI::App* cmd) {
    cmd->add_option("--angles", file, "Angle-schedule JSON from `optimize`");
    cmd->add_option("--gammas", gammas, "Inline gamma list (comma separated)")->delimiter(',');
    cmd->add_option("--betas", betas, "Inline beta list (comma separated)")->delimiter(',');
    cmd->add_option("--p", p, "Select the schedule with this round count");
  }

  bool given() const { return !file.empty() || !gammas.empty() || !betas.empty(); }

  std::vector<AngleSchedule> load(Run& run, const KSatInstance& instance) const {
    std::vector<AngleSchedule> all;
    if (!file.empty()) {
      if (!gammas.empty() || !betas.empty()) {
        throw Error(ErrorCode::kInvalidParameters, "use either --angles or --gammas/--betas");
      }
      run.input(file);
      for (ScheduleRecord& r : schedules_from_json(read_file(file))) {
        if (!r.instance_id.empty() && r.instance_id != instance.id()) {
          throw Error(ErrorCode::kInvalidParameters,
                      "angle schedule belongs to instance " + r.instance_id + ", not " + instance.id());
        }
        all.push_back(std::move(r.angles));
      }
    } else {
      all.emplace_back(gammas, betas);
    }
    if (p != 0) {
      std::erase_if(all, [&](const AngleSchedule& s) { return s.rounds() != p; });
      if (all.empty()) throw Error(ErrorCode::kInvalidParameters, "no schedule with p=" + std::to_string(p));
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.rounds() < b.rounds(); });
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i].rounds() == all[i - 1].rounds()) {
        throw Error(ErrorCode::kInvalidParameters, "duplicate schedules for p=" + std::to_string(all[i].rounds()));
      }
    }
    if (all.empty()) throw Error(ErrorCode::kInvalidParameters, "angle file holds no schedules");
    return all;
  }
};

std::string schedule_id(const KSatInstance& instance, std::size_t p) {
  return instance.id() + ":p" + std::to_string(p);
}

std::string census_report(const Circuit& c) {
  const GateCensus g = census(c);
  std::ostringstream out;
  out << "qubits: " << c.num_qubits() << '\n'
      << "one_qubit_gates: " << g.one_qubit_count << '\n'
      << "two_qubit_gates: " << g.two_qubit_count << '\n'
      << "measurements: " << g.measure_count << '\n'
      << "resets: " << g.reset_count << '\n'
      << "depth: " << g.depth << '\n';
  return out.str();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::uint32_t n = 0;
  std::uint32_t k = 3;
  double density = 4.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, const CLI::App& app, std::ostream& out) {
  Run run("generate", app);
  run.seed("instance", a.seed);
  const KSatInstance inst = generate_random_ksat(a.n, a.k, a.density, a.seed);
  if (a.out.empty()) {
    out << emit_dimacs(inst);
    return kExitOk;
  }
  run.write(a.out + ".cnf", emit_dimacs(inst));
  run.write(a.out + ".json", instance_to_json(inst) + "\n");
  run.note("instance_id", inst.id());
  run.finish();
  out << "instance " << inst.id() << ": n=" << inst.num_variables() << " k=" << inst.clause_width()
      << " m=" << inst.num_clauses() << '\n';
  return kExitOk;
}

// ---- optimize ---------------------------------------------------------------

struct OptimizeArgs {
  std::string instance;
  std::string rounds = "1";
  std::size_t hops = 10;
  std::uint64_t seed = 0;
  double sigma = 0.3;
  bool no_early_stop = false;
  std::string out;
};

int cmd_optimize(const OptimizeArgs& a, const CLI::App& app, std::ostream& out) {
  Run run("optimize", app);
  const KSatInstance inst = load(run, a.instance);
  const std::vector<std::size_t> rounds = parse_round_list(a.rounds);
  const OptimumSet opt = brute_force_optimum(inst);
  run.seed("optimize", a.seed);

  BasinHoppingOptions hopping;
  hopping.hops = a.hops;
  hopping.step_sigma = a.sigma;

  ojson doc;
  doc["instance_id"] = inst.id();
  doc["c_opt"] = opt.c_opt;
  doc["schedules"] = ojson::array();
  std::optional<OptimizationResult> prev;
  for (std::size_t p : rounds) {
    std::optional<AngleSchedule> init;
    if (prev && prev->angles.rounds() + 1 == p) init = warm_start(*prev);
    OptimizationResult r = basin_hopping(inst, opt.c_opt, p, mix_seed(a.seed, p), hopping, init);
    out << "p=" << p << " expectation=" << fmt(r.expectation) << " ideal_ratio=" << fmt(r.ideal_ratio)
        << " iterations=" << r.iterations << '\n';
    doc["schedules"].push_back(ojson::parse(schedule_to_json(r, inst.id())));
    prev = std::move(r);
    if (!a.no_early_stop && prev->ideal_ratio > 0.999) break;
  }
  const std::string text = doc.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    run.write(a.out, text);
    run.finish();
  }
  return kExitOk;
}

// ---- build / export ---------------------------------------------------------

struct BuildArgs {
  std::string instance;
  AngleArgs angles;
  std::string gateset = "none";
  std::string format = "qasm3";
  bool no_measure = false;
  std::string out;
};

int cmd_build(const BuildArgs& a, const CLI::App& app, const std::string& name, std::ostream& out,
              std::ostream& err) {
  Run run(name, app);
  const KSatInstance inst = load(run, a.instance);
  if (!a.angles.given()) throw Error(ErrorCode::kInvalidParameters, "build needs --angles or --gammas/--betas");
  const AngleSchedule angles = a.angles.load(run, inst).back();

  QaoaCircuitOptions options;
  options.terminal_measurement = !a.no_measure;
  Circuit circuit = build_qaoa_circuit(inst, angles, options);
  if (a.gateset != "none") {
    const auto gs = gateset_from_string(a.gateset);
    if (!gs) throw Error(ErrorCode::kInvalidParameters, "unknown gateset '" + a.gateset + "'");
    CircuitMetadata meta = circuit.metadata();
    circuit = transpile(circuit, *gs);
    circuit.metadata() = meta;
  }
  circuit.metadata().schedule_id = schedule_id(inst, angles.rounds());

  std::string text;
  if (a.format == "qasm2") {
    text = export_qasm2(circuit);
  } else if (a.format == "qasm3") {
    text = export_qasm3(circuit);
  } else if (a.format == "json") {
    text = circuit_to_json(circuit) + "\n";
  } else {
    throw Error(ErrorCode::kInvalidParameters, "unknown format '" + a.format + "'");
  }

  if (a.out.empty()) {
    out << text;
    err << census_report(circuit);
  } else {
    run.note("census", ojson::parse(nlohmann::json{{"one_qubit_gates", census(circuit).one_qubit_count},
                                                   {"two_qubit_gates", census(circuit).two_qubit_count},
                                                   {"depth", census(circuit).depth}}
                                        .dump()));
    run.write(a.out, text);
    run.finish();
    out << census_report(circuit);
  }
  return kExitOk;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string instance;
  AngleArgs angles;
  std::size_t shots = 40;
  std::uint64_t seed = 0;
  std::string out;
  std::string state_dump;
  int force_branch = -1;
};

int cmd_simulate(const SimulateArgs& a, const CLI::App& app, std::ostream& out) {
  Run run("simulate", app);
  const KSatInstance inst = load(run, a.instance);
  if (!a.angles.given()) throw Error(ErrorCode::kInvalidParameters, "simulate needs --angles or --gammas/--betas");
  const std::vector<AngleSchedule> schedules = a.angles.load(run, inst);
  if (!a.state_dump.empty() && schedules.size() != 1) {
    throw Error(ErrorCode::kInvalidParameters, "--state-dump needs a single schedule (use --p)");
  }
  SimulatorOptions options;
  if (a.force_branch == 0 || a.force_branch == 1) {
    options.forcing = BranchForcing::all(static_cast<std::uint8_t>(a.force_branch));
  }

  std::ostringstream lines;
  for (const AngleSchedule& s : schedules) {
    const std::size_t p = s.rounds();
    const std::uint64_t seed = mix_seed(a.seed, p);
    run.seed("p" + std::to_string(p), seed);
    Circuit circuit = build_qaoa_circuit(inst, s);
    for (ShotRecord& shot : sample(circuit, a.shots, seed, options)) {
      shot.rounds = static_cast<std::uint32_t>(p);
      lines << shot_to_json_line(shot) << '\n';
    }
    if (!a.state_dump.empty()) {
      const Statevector state = prepare_state(circuit, seed, options);
      std::ostringstream bin(std::ios::binary);
      write_state_dump(bin, state);
      run.write(a.state_dump, bin.str());
    }
  }
  run.seed("user", a.seed);
  if (a.out.empty()) {
    out << lines.str();
  } else {
    run.write(a.out, lines.str());
    out << "wrote " << a.shots * schedules.size() << " shots to " << a.out << '\n';
  }
  run.finish();
  return kExitOk;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string instance;
  AngleArgs angles;
  std::string shots_file;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::size_t baseline_samples = kDefaultBaselineSamples;
  std::optional<std::uint64_t> baseline_seed;
  std::string out;
  std::string svg;
};

int cmd_bench(const BenchArgs& a, const CLI::App& app, std::ostream& out) {
  Run run("bench", app);
  const KSatInstance inst = load(run, a.instance);
  if (!a.angles.given() && a.shots_file.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "bench needs --angles and/or --shots-file");
  }
  if (a.shots > 0 && !a.angles.given()) {
    throw Error(ErrorCode::kInvalidParameters, "--shots samples the ideal distribution and needs --angles");
  }
  const std::uint32_t c_opt = brute_force_optimum(inst).c_opt;

  std::optional<BenchmarkCurve> ideal;
  std::optional<BenchmarkCurve> measured;
  if (a.angles.given()) {
    const std::vector<AngleSchedule> schedules = a.angles.load(run, inst);
    ideal = ideal_curve(inst, c_opt, schedules);
    if (a.shots > 0) {
      std::map<std::size_t, std::vector<Assignment>> by_p;
      for (const AngleSchedule& s : schedules) {
        const std::uint64_t seed = mix_seed(a.seed, s.rounds());
        run.seed("shots_p" + std::to_string(s.rounds()), seed);
        for (std::uint64_t x : sample_distribution(qaoa_distribution(inst, s), a.shots, seed)) {
          by_p[s.rounds()].push_back(Assignment::from_index(x, inst.num_variables()));
        }
      }
      measured = curve_from_shots(inst, c_opt, by_p, CurveSource::kShots);
    }
  }
  if (!a.shots_file.empty()) {
    if (measured) throw Error(ErrorCode::kInvalidParameters, "use either --shots or --shots-file");
    run.input(a.shots_file);
    std::ifstream in(a.shots_file);
    if (!in) throw Error(ErrorCode::kIoError, "cannot open " + a.shots_file);
    const std::vector<ShotRecord> shots = read_shots_jsonl(in);
    std::optional<std::size_t> default_p;
    if (a.angles.p != 0) default_p = a.angles.p;
    measured = curve_from_shots(inst, c_opt, group_shots_by_p(shots, default_p), CurveSource::kExternal);
  }

  const std::uint64_t baseline_seed = a.baseline_seed.value_or(a.seed);
  run.seed("baseline", baseline_seed);
  const Baseline baseline = random_baseline(inst, c_opt, a.baseline_samples, baseline_seed);
  run.note("baseline", ojson::parse(baseline_to_json(baseline)));
  run.note("instance_id", inst.id());

  std::string csv;
  if (ideal) csv += curve_to_csv(*ideal, baseline);
  if (measured) {
    std::string rows = curve_to_csv(*measured, baseline);
    csv += ideal ? rows.substr(rows.find('\n') + 1) : rows;
  }
  if (a.out.empty()) {
    out << csv << '\n';
  } else {
    run.write(a.out, csv);
  }
  if (!a.svg.empty()) {
    ChartInput chart{ideal, measured, baseline, "n=" + std::to_string(inst.num_variables()) + " " + inst.id()};
    run.write(a.svg, render_svg(chart));
  }

  const BenchmarkCurve& analysed = measured ? *measured : *ideal;
  const std::size_t p_max = extract_p_max(analysed);
  const std::optional<std::size_t> p_noise = extract_p_noise(analysed, baseline);
  out << "== summary ==\n"
      << "instance: " << inst.id() << '\n'
      << "n: " << inst.num_variables() << '\n'
      << "m: " << inst.num_clauses() << '\n'
      << "c_opt: " << c_opt << '\n'
      << "baseline: mean=" << fmt(baseline.mean_ratio) << " pct40=" << fmt(baseline.pct40)
      << " pct60=" << fmt(baseline.pct60) << " samples=" << baseline.sample_count << '\n'
      << "curve: " << to_string(analysed.points.front().source) << '\n';
  if (ideal && measured) out << "ideal_p_max: " << extract_p_max(*ideal) << '\n';
  out << "p_max: " << p_max << '\n'
      << "p_noise: " << (p_noise ? std::to_string(*p_noise) : std::string("none")) << '\n'
      << "qaoa_volume: " << qaoa_volume(inst.num_variables(), p_max) << '\n';
  run.finish();
  return kExitOk;
}

}  // namespace

std::vector<std::size_t> parse_round_list(const std::string& text) {
  auto to_num = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size() || v == 0) throw Error(ErrorCode::kInvalidParameters, "bad round count '" + s + "'");
    return v;
  };
  std::set<std::size_t> rounds;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      rounds.insert(to_num(part));
    } else {
      const std::size_t lo = to_num(part.substr(0, dots));
      const std::size_t hi = to_num(part.substr(dots + 2));
      if (hi < lo) throw Error(ErrorCode::kInvalidParameters, "empty round range '" + part + "'");
      for (std::size_t p = lo; p <= hi; ++p) rounds.insert(p);
    }
  }
  if (rounds.empty()) throw Error(ErrorCode::kInvalidParameters, "no round counts given");
  return {rounds.begin(), rounds.end()};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qsat: QAOA circuits, simulation, and benchmarks for MAX k-SAT", "qsat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QSAT_VERSION);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Random uniform k-SAT instance");
  g->add_option("-n", gen.n, "Variables")->required();
  g->add_option("-k", gen.k, "Clause width");
  g->add_option("--density", gen.density, "Clauses per variable");
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("--out", gen.out, "Output prefix (writes .cnf and .json); stdout DIMACS if omitted");

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "Basin-hopping angle search over a range of p");
  o->add_option("--instance", opt.instance, "DIMACS or instance JSON")->required();
  o->add_option("-p,--rounds", opt.rounds, "Round counts: 3, 1..12, or 1,2,5");
  o->add_option("--hops", opt.hops, "Basin-hopping iterations per p");
  o->add_option("--seed", opt.seed, "RNG seed");
  o->add_option("--sigma", opt.sigma, "Perturbation standard deviation (radians)");
  o->add_flag("--no-early-stop", opt.no_early_stop, "Do not stop once ideal_ratio > 0.999");
  o->add_option("--out", opt.out, "Angle-schedule JSON (stdout if omitted)");

  BuildArgs bld;
  std::string build_name;
  auto add_build = [&](const char* name, const char* help) {
    auto* b = app.add_subcommand(name, help);
    b->add_option("--instance", bld.instance, "DIMACS or instance JSON")->required();
    bld.angles.add_to(b);
    b->add_option("--gateset", bld.gateset, "none | rzz | cx");
    b->add_option("--format", bld.format, "qasm2 | qasm3 | json");
    b->add_flag("--no-measure", bld.no_measure, "Omit the terminal measurement");
    b->add_option("--out", bld.out, "Circuit file (stdout if omitted)");
    b->callback([&build_name, name] { build_name = name; });
    return b;
  };
  add_build("build", "Synthesize the QAOA circuit and report its gate census");
  add_build("export", "Alias of build");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Gate-level shots as JSON lines");
  s->add_option("--instance", sim.instance, "DIMACS or instance JSON")->required();
  sim.angles.add_to(s);
  s->add_option("--shots", sim.shots, "Shots per schedule");
  s->add_option("--seed", sim.seed, "RNG seed");
  s->add_option("--out", sim.out, "Shots JSONL (stdout if omitted)");
  s->add_option("--state-dump", sim.state_dump, "Binary pre-measurement state");
  s->add_option("--force-branch", sim.force_branch, "Force every mid-circuit outcome to 0 or 1")
      ->check(CLI::IsMember({0, 1}));

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Approximation-ratio curve, baseline, p_max and p_noise");
  be->add_option("--instance", bench.instance, "DIMACS or instance JSON")->required();
  bench.angles.add_to(be);
  be->add_option("--shots-file", bench.shots_file, "External shots (JSON lines)");
  be->add_option("--shots", bench.shots, "Sample this many ideal shots per p");
  be->add_option("--seed", bench.seed, "RNG seed");
  be->add_option("--baseline-samples", bench.baseline_samples, "Uniform samples for the baseline");
  be->add_option("--baseline-seed", bench.baseline_seed, "Baseline RNG seed (defaults to --seed)");
  be->add_option("--out", bench.out, "Curve CSV (stdout if omitted)");
  be->add_option("--svg", bench.svg, "Line chart");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen, *g, out);
    if (*o) return cmd_optimize(opt, *o, out);
    if (!build_name.empty()) return cmd_build(bld, *app.get_subcommand(build_name), build_name, out, err);
    if (*s) return cmd_simulate(sim, *s, out);
    if (*be) return cmd_bench(bench, *be, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kNumericalFailure ? kExitNumerical : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

}  // namespace qsat::cli
