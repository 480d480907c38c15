#include <telres/cli.hpp>

#include <telres/fef.hpp>
#include <telres/gamma.hpp>
#include <telres/io.hpp>
#include <telres/linalg.hpp>
#include <telres/random.hpp>
#include <telres/state.hpp>
#include <telres/witness.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

namespace telres {

namespace {

using nlohmann::ordered_json;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Default restart count; flag > TELRES_RESTARTS > 32.
int default_restarts() {
  const char* env = std::getenv("TELRES_RESTARTS");
  if (env == nullptr) return 32;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 1000000)
    throw std::invalid_argument("TELRES_RESTARTS must be a positive integer");
  return static_cast<int>(v);
}

ordered_json argv_json(int argc, const char* const* argv) {
  ordered_json a = ordered_json::array();
  for (int i = 1; i < argc; ++i) a.push_back(argv[i]);
  return a;
}

ordered_json input_json(const std::string& path) {
  return ordered_json{{"path", path}, {"digest_fnv1a64", file_digest(path)}};
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(ordered_json{m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json angles_json(const std::vector<EulerAngles>& angles) {
  ordered_json a = ordered_json::array();
  for (const EulerAngles& e : angles) a.push_back(ordered_json{e.alpha, e.beta, e.gamma});
  return a;
}

const char* verdict_name(GammaVerdict v) {
  switch (v) {
    case GammaVerdict::Ideal: return "Ideal";
    case GammaVerdict::Entangled: return "Entangled";
    default: return "Inconclusive";
  }
}

const char* usefulness_name(Usefulness u) {
  return u == Usefulness::Useful ? "Useful" : "Inconclusive";
}

const char* method_name(FefMethod m) {
  return m == FefMethod::ClosedFormPure ? "ClosedFormPure" : "ManifoldAscent";
}

DensityMatrix load_density(const std::string& path) {
  LoadedState loaded = parse_state(path);
  return loaded.is_pure() ? to_density(*loaded.pure) : std::move(*loaded.density);
}

// n-qubit-per-side view of a state for the Gamma pipelines; square
// bipartite layouts of power-of-two dimension are reinterpreted (the basis
// ordering is identical).
SubsystemLayout multiqubit_view(const SubsystemLayout& layout) {
  if (layout.is_multiqubit()) return layout;
  const Eigen::Index da = layout.dim_a();
  if (layout.num_slots() == 2 && da == layout.dim_b()) {
    int n = 0;
    Eigen::Index d = 1;
    while (d < da) {
      d <<= 1;
      ++n;
    }
    if (d == da) return SubsystemLayout::multiqubit(n);
  }
  throw std::invalid_argument(
      "state layout is not n qubits per side (need multiqubit mode or a power-of-two square "
      "bipartite state)");
}

DensityMatrix as_multiqubit(DensityMatrix rho) {
  SubsystemLayout view = multiqubit_view(rho.layout);
  if (view == rho.layout) return rho;
  return DensityMatrix(std::move(rho.matrix), view);
}

void emit(std::ostream& out, const ordered_json& report) { out << report.dump(2) << "\n"; }

// ---- subcommand option bags ------------------------------------------------

struct GenBellArgs {
  int n = 1;
  std::string output;
};

struct GenRandomArgs {
  int n = 0;          // multiqubit qubits per side (0 = unset)
  int d = 0;          // bipartite local dimension (0 = unset)
  int rank = 0;       // density only; 0 = full rank
  double p = -1.0;    // werner only
  std::uint64_t seed = 0;
  std::string output;
};

struct SearchArgs {
  std::string state;
  int restarts = 32;
  double tol = 1e-6;     // detect-ideal threshold width
  double margin = 1e-7;  // separability / usefulness margin
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct FefArgs {
  std::string state;
  int d = 2;
  int restarts = 32;
  double margin = 1e-7;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool force_optimizer = false;
};

struct WitnessArgs {
  std::string state;
  std::string unitary;  // empty = identity witness
  int d = 2;
  int restarts = 32;
  double margin = 1e-7;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// ---- pipelines ---------------------------------------------------------------

SubsystemLayout gen_layout(const GenRandomArgs& a, const char* family) {
  if ((a.n == 0) == (a.d == 0))
    throw std::invalid_argument(std::string("gen random ") + family +
                                ": exactly one of --n and --d is required");
  return a.n > 0 ? SubsystemLayout::multiqubit(a.n) : SubsystemLayout::bipartite(a.d, a.d);
}

ordered_json gen_report(const char* family, const GenRandomArgs& a) {
  ordered_json report;
  report["command"] = std::string("gen random ") + family;
  report["seed"] = a.seed;
  report["output"] = a.output;
  report["digest_fnv1a64"] = file_digest(a.output);
  return report;
}

int run_gen_bell(const GenBellArgs& a, std::ostream& out, std::ostream& err) {
  write_state(a.output, bell_tensor(a.n));
  ordered_json report;
  report["command"] = "gen bell";
  report["n"] = a.n;
  report["output"] = a.output;
  report["digest_fnv1a64"] = file_digest(a.output);
  emit(out, report);
  err << "gen bell: wrote " << a.output << "\n";
  return 0;
}

int run_gen_random(const char* family, const GenRandomArgs& a, std::ostream& out,
                   std::ostream& err) {
  const std::string name(family);
  if (name == "pure") {
    write_state(a.output, random_haar_pure(gen_layout(a, family), a.seed));
  } else if (name == "product") {
    write_state(a.output, random_product_pure(gen_layout(a, family), a.seed));
  } else if (name == "density") {
    const SubsystemLayout layout = gen_layout(a, family);
    const int rank = a.rank > 0 ? a.rank : static_cast<int>(layout.total_dim());
    write_state(a.output, random_density(layout, rank, a.seed));
  } else {  // werner
    if (a.n != 0 || (a.d != 0 && a.d != 2))
      throw std::invalid_argument("gen random werner: the family is two-qubit (only --d 2 fits)");
    write_state(a.output, werner_state(a.p));
  }
  emit(out, gen_report(family, a));
  err << "gen random " << family << ": wrote " << a.output << "\n";
  return 0;
}

int run_detect_ideal(const SearchArgs& a, const ordered_json& argv_echo, std::ostream& out,
                     std::ostream& err) {
  const Timer timer;
  LoadedState loaded = parse_state(a.state);
  DensityMatrix rho = as_multiqubit(loaded.is_pure() ? to_density(*loaded.pure)
                                                     : std::move(*loaded.density));
  SearchConfig config;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.ideal_tol = a.tol;
  config.jobs = a.jobs;
  const GammaSearchResult result = detect_ideal_resource(rho, config);

  ordered_json report;
  report["command"] = "detect-ideal";
  report["argv"] = argv_echo;
  report["input"] = input_json(a.state);
  report["seed"] = a.seed;
  report["config"] = {{"restarts", a.restarts}, {"ideal_tol", a.tol}, {"jobs", a.jobs}};
  report["verdict"] = verdict_name(result.verdict);
  report["best_value"] = result.best_value;
  report["threshold"] = 1.0 - a.tol;
  report["certificate"] = {{"euler_angles", angles_json(result.best_angles)}};
  report["diagnostics"] = {{"restarts_used", result.restarts_used},
                           {"converged", result.converged}};
  report["wall_time_ms"] = timer.ms();
  emit(out, report);
  err << "detect-ideal: verdict=" << verdict_name(result.verdict)
      << " best_value=" << result.best_value << " threshold=" << 1.0 - a.tol << "\n";
  return 0;
}

int run_separability(const SearchArgs& a, const ordered_json& argv_echo, std::ostream& out,
                     std::ostream& err) {
  const Timer timer;
  DensityMatrix rho = as_multiqubit(load_density(a.state));
  SearchConfig config;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.margin = a.margin;
  config.jobs = a.jobs;
  const GammaSearchResult result = separability_test(rho, config);
  const double ceiling = 1.0 / std::pow(2.0, rho.layout.qubits_per_side());

  ordered_json report;
  report["command"] = "separability";
  report["argv"] = argv_echo;
  report["input"] = input_json(a.state);
  report["seed"] = a.seed;
  report["config"] = {{"restarts", a.restarts}, {"margin", a.margin}, {"jobs", a.jobs}};
  report["verdict"] = verdict_name(result.verdict);
  report["best_value"] = result.best_value;
  report["threshold"] = ceiling + a.margin;
  report["certificate"] = {{"euler_angles", angles_json(result.best_angles)}};
  report["diagnostics"] = {{"restarts_used", result.restarts_used},
                           {"converged", result.converged}};
  report["wall_time_ms"] = timer.ms();
  emit(out, report);
  err << "separability: verdict=" << verdict_name(result.verdict)
      << " best_value=" << result.best_value << " threshold=" << ceiling + a.margin << "\n";
  return 0;
}

int run_fef(const FefArgs& a, const ordered_json& argv_echo, std::ostream& out,
            std::ostream& err) {
  const Timer timer;
  DensityMatrix rho = load_density(a.state);
  FefConfig config;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.usefulness_margin = a.margin;
  config.jobs = a.jobs;
  config.force_optimizer = a.force_optimizer;
  const TeleportationVerdict verdict = is_useful(rho, a.d, config);

  ordered_json report;
  report["command"] = "fef";
  report["argv"] = argv_echo;
  report["input"] = input_json(a.state);
  report["d"] = a.d;
  report["seed"] = a.seed;
  report["config"] = {{"restarts", a.restarts},
                      {"margin", a.margin},
                      {"jobs", a.jobs},
                      {"force_optimizer", a.force_optimizer}};
  report["verdict"] = usefulness_name(verdict.useful);
  report["fef"] = verdict.fef.value;
  report["fidelity"] = verdict.fidelity;
  report["threshold"] = 1.0 / a.d + a.margin;
  report["method"] = method_name(verdict.fef.method);
  report["certificate"] = {{"unitary", matrix_json(verdict.fef.optimizer_unitary)}};
  report["diagnostics"] = {{"restarts_used", verdict.fef.restarts_used},
                           {"converged", verdict.fef.converged}};
  report["wall_time_ms"] = timer.ms();
  emit(out, report);
  err << "fef: verdict=" << usefulness_name(verdict.useful) << " fef=" << verdict.fef.value
      << " fidelity=" << verdict.fidelity << "\n";
  return 0;
}

Witness witness_for(const WitnessArgs& a) {
  if (a.unitary.empty()) return witness_identity(a.d);
  const ComplexMatrix u = parse_unitary(a.unitary);
  if (u.rows() != a.d)
    throw std::invalid_argument("witness: unitary dimension differs from --d");
  return witness_rotated(u);
}

int run_witness_eval(const WitnessArgs& a, const ordered_json& argv_echo, std::ostream& out,
                     std::ostream& err) {
  const Witness w = witness_for(a);
  const DensityMatrix rho = load_density(a.state);
  const double value = evaluate(w, rho);

  ordered_json report;
  report["command"] = "witness eval";
  report["argv"] = argv_echo;
  report["input"] = input_json(a.state);
  report["d"] = a.d;
  report["witness"] = a.unitary.empty() ? "identity" : "rotated";
  report["value"] = value;
  report["detected"] = value < 0.0;
  emit(out, report);
  err << "witness eval: value=" << value << (value < 0.0 ? " (detected)" : "") << "\n";
  return 0;
}

int run_witness_optimality(const WitnessArgs& a, const ordered_json& argv_echo, std::ostream& out,
                           std::ostream& err) {
  const Witness w = witness_for(a);
  const OptimalityCertificate cert = check_optimality(w);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < cert.annihilation_residuals.size(); ++i)
    worst = std::max(worst, std::abs(cert.annihilation_residuals[i]));

  ordered_json report;
  report["command"] = "witness optimality";
  report["argv"] = argv_echo;
  report["d"] = a.d;
  report["witness"] = a.unitary.empty() ? "identity" : "rotated";
  report["gram_rank"] = cert.gram_rank;
  report["max_residual"] = worst;
  report["optimal"] = cert.optimal;
  if (!cert.note.empty()) report["note"] = cert.note;
  emit(out, report);
  err << "witness optimality: optimal=" << (cert.optimal ? "true" : "false")
      << " gram_rank=" << cert.gram_rank << " max_residual=" << worst << "\n";
  return 0;
}

int run_witness_detect(const WitnessArgs& a, const ordered_json& argv_echo, std::ostream& out,
                       std::ostream& err) {
  const Timer timer;
  const DensityMatrix rho = load_density(a.state);
  FefConfig config;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.usefulness_margin = a.margin;
  config.jobs = a.jobs;
  const WitnessDetection detection = detect_useful_via_witness(rho, a.d, config);

  ordered_json report;
  report["command"] = "witness detect";
  report["argv"] = argv_echo;
  report["input"] = input_json(a.state);
  report["d"] = a.d;
  report["seed"] = a.seed;
  report["config"] = {{"restarts", a.restarts}, {"margin", a.margin}, {"jobs", a.jobs}};
  report["verdict"] = usefulness_name(detection.verdict);
  report["min_value"] = detection.min_value;
  report["threshold"] = -a.margin;
  report["fef"] = detection.fef.value;
  report["certificate"] = {{"unitary", matrix_json(detection.best_unitary)}};
  report["diagnostics"] = {{"restarts_used", detection.fef.restarts_used},
                           {"converged", detection.fef.converged}};
  report["wall_time_ms"] = timer.ms();
  emit(out, report);
  err << "witness detect: verdict=" << usefulness_name(detection.verdict)
      << " min_value=" << detection.min_value << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const int restarts_default = default_restarts();

    CLI::App app{"Teleportation-resource detection toolkit", "telres"};
    app.require_subcommand(1);

    // gen
    CLI::App* gen = app.add_subcommand("gen", "Generate state files");
    gen->require_subcommand(1);

    GenBellArgs bell_args;
    CLI::App* gen_bell = gen->add_subcommand("bell", "Tensor product of n Bell pairs");
    gen_bell->add_option("--n", bell_args.n, "Bell pairs (qubits per side)")
        ->required()
        ->check(CLI::Range(1, 6));
    gen_bell->add_option("-o,--output", bell_args.output, "Output file")->required();

    GenRandomArgs random_args;
    CLI::App* gen_random = gen->add_subcommand("random", "Seeded random states");
    gen_random->require_subcommand(1);
    std::vector<CLI::App*> random_families;
    for (const char* family : {"pure", "density", "product", "werner"}) {
      CLI::App* f = gen_random->add_subcommand(family);
      if (std::string(family) != "werner") {
        CLI::Option* n = f->add_option("--n", random_args.n, "Qubits per side (multiqubit mode)")
                             ->check(CLI::Range(1, 6));
        CLI::Option* d =
            f->add_option("--d", random_args.d, "Local dimension (bipartite mode)")
                ->check(CLI::Range(2, 32));
        n->excludes(d);
        d->excludes(n);
      } else {
        f->add_option("--p", random_args.p, "Mixing weight of the Bell projector")
            ->required()
            ->check(CLI::Range(0.0, 1.0));
        f->add_option("--d", random_args.d, "Accepted for symmetry; must be 2");
      }
      if (std::string(family) == "density")
        f->add_option("--rank", random_args.rank, "Rank of the sampled state (default: full)")
            ->check(CLI::PositiveNumber);
      f->add_option("--seed", random_args.seed, "RNG seed");
      f->add_option("-o,--output", random_args.output, "Output file")->required();
      random_families.push_back(f);
    }

    // detect-ideal / separability
    SearchArgs ideal_args, sep_args;
    ideal_args.restarts = restarts_default;
    sep_args.restarts = restarts_default;

    CLI::App* detect_ideal =
        app.add_subcommand("detect-ideal", "Ideal-teleportation-resource test for pure states");
    detect_ideal->add_option("--state", ideal_args.state, "State file")->required();
    detect_ideal->add_option("--restarts", ideal_args.restarts, "Search restarts")
        ->check(CLI::PositiveNumber);
    detect_ideal->add_option("--tol", ideal_args.tol, "Ideal threshold width (1 - tol)")
        ->check(CLI::PositiveNumber);
    detect_ideal->add_option("--seed", ideal_args.seed, "RNG seed");
    detect_ideal->add_option("--jobs", ideal_args.jobs, "Concurrent restart workers")
        ->check(CLI::PositiveNumber);

    CLI::App* separability =
        app.add_subcommand("separability", "Entanglement test against the separable ceiling");
    separability->add_option("--state", sep_args.state, "State file")->required();
    separability->add_option("--restarts", sep_args.restarts, "Search restarts")
        ->check(CLI::PositiveNumber);
    separability->add_option("--margin", sep_args.margin, "Margin above the 2^-n ceiling")
        ->check(CLI::PositiveNumber);
    separability->add_option("--seed", sep_args.seed, "RNG seed");
    separability->add_option("--jobs", sep_args.jobs, "Concurrent restart workers")
        ->check(CLI::PositiveNumber);

    // fef
    FefArgs fef_args;
    fef_args.restarts = restarts_default;
    CLI::App* fef = app.add_subcommand(
        "fef", "Fully entangled fraction, optimal fidelity, usefulness verdict");
    fef->add_option("--state", fef_args.state, "State file")->required();
    fef->add_option("--d", fef_args.d, "Local dimension")->required()->check(CLI::Range(2, 8));
    fef->add_option("--restarts", fef_args.restarts, "Ascent restarts")
        ->check(CLI::PositiveNumber);
    fef->add_option("--margin", fef_args.margin, "Usefulness margin above 1/d")
        ->check(CLI::PositiveNumber);
    fef->add_option("--seed", fef_args.seed, "RNG seed");
    fef->add_option("--jobs", fef_args.jobs, "Concurrent restart workers")
        ->check(CLI::PositiveNumber);
    fef->add_flag("--force-optimizer", fef_args.force_optimizer,
                  "Use manifold ascent even for pure inputs");

    // witness
    WitnessArgs witness_args;
    witness_args.restarts = restarts_default;
    CLI::App* witness = app.add_subcommand("witness", "Teleportation witness family");
    witness->require_subcommand(1);

    CLI::App* witness_eval = witness->add_subcommand("eval", "Tr(W rho)");
    witness_eval->add_option("--state", witness_args.state, "State file")->required();
    witness_eval->add_option("--d", witness_args.d, "Local dimension")
        ->required()
        ->check(CLI::Range(2, 32));
    witness_eval->add_option("--u", witness_args.unitary, "Unitary file (default: identity)");

    CLI::App* witness_optimality =
        witness->add_subcommand("optimality", "Spanning product-vector certificate");
    witness_optimality->add_option("--d", witness_args.d, "Local dimension")
        ->required()
        ->check(CLI::Range(2, 32));
    witness_optimality->add_option("--u", witness_args.unitary,
                                   "Unitary file (default: identity)");

    CLI::App* witness_detect =
        witness->add_subcommand("detect", "Minimize Tr(W(U) rho) over the witness family");
    witness_detect->add_option("--state", witness_args.state, "State file")->required();
    witness_detect->add_option("--d", witness_args.d, "Local dimension")
        ->required()
        ->check(CLI::Range(2, 8));
    witness_detect->add_option("--restarts", witness_args.restarts, "Ascent restarts")
        ->check(CLI::PositiveNumber);
    witness_detect->add_option("--margin", witness_args.margin, "Usefulness margin")
        ->check(CLI::PositiveNumber);
    witness_detect->add_option("--seed", witness_args.seed, "RNG seed");
    witness_detect->add_option("--jobs", witness_args.jobs, "Concurrent restart workers")
        ->check(CLI::PositiveNumber);

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      err << "error: usage: " << e.what() << "\n";
      return 1;
    }

    const ordered_json argv_echo = argv_json(argc, argv);
    if (gen_bell->parsed()) return run_gen_bell(bell_args, out, err);
    for (size_t i = 0; i < random_families.size(); ++i)
      if (random_families[i]->parsed()) {
        static const char* kFamilies[] = {"pure", "density", "product", "werner"};
        return run_gen_random(kFamilies[i], random_args, out, err);
      }
    if (detect_ideal->parsed()) return run_detect_ideal(ideal_args, argv_echo, out, err);
    if (separability->parsed()) return run_separability(sep_args, argv_echo, out, err);
    if (fef->parsed()) return run_fef(fef_args, argv_echo, out, err);
    if (witness_eval->parsed()) return run_witness_eval(witness_args, argv_echo, out, err);
    if (witness_optimality->parsed())
      return run_witness_optimality(witness_args, argv_echo, out, err);
    if (witness_detect->parsed()) return run_witness_detect(witness_args, argv_echo, out, err);
    err << "error: usage: no subcommand selected\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: validation: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace telres
