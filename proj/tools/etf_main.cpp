#include "etf/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace etf;

// ETF_TOL overrides the default validation tolerance for every subcommand.
double global_tolerance() {
  if (const char* text = std::getenv("ETF_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(text, &end);
    if (end != text && value > 0.0 && std::isfinite(value)) return value;
    std::cerr << "warning: ignoring invalid ETF_TOL value '" << text << "'\n";
  }
  return kValidationTol;
}

void echo_seed(std::uint64_t seed) { std::cerr << "# seed=" << seed << "\n"; }

void write_text(const std::string& out, const std::string& data) {
  if (out == "-") {
    std::cout << data;
    return;
  }
  std::ofstream stream(out);
  if (!stream) throw std::runtime_error("cannot open " + out + " for writing");
  stream << data;
  if (!stream) throw std::runtime_error("failed writing " + out);
}

void write_json_output(const std::string& out, const io::json& j) {
  if (out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  io::write_json_file(out, j);
}

void print_report(const FrameReport& report) {
  std::cerr << "unit-norm residual      " << report.unit_norm_residual << "\n"
            << "equiangularity residual " << report.equiangularity_residual << "\n"
            << "tightness residual      " << report.tightness_residual << "\n"
            << "frame operator range    [" << report.frame_operator_min << ", "
            << report.frame_operator_max << "]\n"
            << "verdict                 " << (report.pass() ? "pass" : "fail") << " (tol "
            << report.tol << ")\n";
}

std::vector<OrderAlpha> parse_alphas(const std::vector<std::string>& tokens) {
  std::vector<OrderAlpha> alphas;
  for (const std::string& token : tokens) {
    if (token == "inf" || token == "infinity") {
      alphas.push_back(OrderAlpha::infinity());
      continue;
    }
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw std::invalid_argument("cannot parse alpha value '" + token + "'");
    }
    alphas.push_back(OrderAlpha(value));
  }
  return alphas;
}

EquiangularTightFrame load_frame(const std::string& path, double tol) {
  return io::frame_from_json(io::read_json_file(path), tol);
}

BipartiteDensityMatrix load_bipartite(const std::string& path, double tol) {
  const io::json j = io::read_json_file(path);
  if (!io::is_bipartite_json(j)) {
    throw std::runtime_error(path + ": expected a bipartite state (dA/dB fields)");
  }
  return io::bipartite_from_json(j, tol);
}

struct FrameGenArgs {
  std::string kind;
  int d = 2;
  int n = 0;
  std::uint64_t seed = 0;
  std::string in;
  std::string out = "-";
  OptimizeOptions optimize;
};

int run_frame_gen(const FrameGenArgs& args, double tol) {
  std::optional<EquiangularTightFrame> frame;
  if (args.kind == "basis") {
    frame.emplace(orthonormal_basis_frame(args.d));
  } else if (args.kind == "simplex") {
    frame.emplace(simplex_etf(args.d));
  } else if (args.kind == "optimize") {
    if (args.n <= 0) throw std::invalid_argument("--kind optimize requires --n");
    echo_seed(args.seed);
    const OptimizeResult result = optimize_etf(args.d, args.n, args.seed, args.optimize);
    std::cerr << "optimizer: best residual " << result.best_residual << " after "
              << result.iterations << " iterations (restart " << result.best_restart
              << ")\n";
    if (!result.converged) {
      std::cerr << "error: optimizer did not reach success tolerance "
                << args.optimize.success_tol << "\n";
      return 2;
    }
    frame = result.frame;
  } else if (args.kind == "complement") {
    if (args.in.empty()) throw std::invalid_argument("--kind complement requires --in");
    frame.emplace(naimark_complement(load_frame(args.in, tol), tol));
  } else {
    throw std::invalid_argument("unknown frame kind '" + args.kind + "'");
  }

  const FrameReport report = validate_frame(frame->vectors(), tol);
  print_report(report);
  write_json_output(args.out, io::frame_to_json(*frame));
  return report.pass() ? 0 : 3;
}

int run_frame_validate(const std::string& in, double tol) {
  const io::json j = io::read_json_file(in);
  std::cerr << "frame " << in << ": d=" << j.value("d", 0) << " n=" << j.value("n", 0)
            << "\n";
  // Load without an acceptance gate so a failing file still yields a report.
  const EquiangularTightFrame frame =
      io::frame_from_json(j, std::numeric_limits<double>::infinity());
  const FrameReport report = validate_frame(frame.vectors(), tol);
  print_report(report);
  return report.pass() ? 0 : 3;
}

struct BoundsArgs {
  std::string frame_path;
  std::string state_path;
  int random_states = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> alphas;
  std::string family = "all";
  double eta = -1.0;
  std::string out = "-";
};

int run_bounds(const BoundsArgs& args, double tol) {
  const EquiangularTightFrame frame = load_frame(args.frame_path, tol);

  CertifyOptions options;
  if (args.family == "renyi") {
    options.include_coincidence = options.include_max_prob = options.include_tsallis = false;
  } else if (args.family == "tsallis") {
    options.include_coincidence = options.include_max_prob = options.include_renyi = false;
  } else if (args.family == "ic") {
    options.include_max_prob = options.include_renyi = options.include_tsallis = false;
  } else if (args.family == "maxprob") {
    options.include_coincidence = options.include_renyi = options.include_tsallis = false;
  } else if (args.family != "all") {
    throw std::invalid_argument("unknown family '" + args.family + "'");
  }
  if (!args.alphas.empty()) {
    const std::vector<OrderAlpha> requested = parse_alphas(args.alphas);
    std::vector<OrderAlpha> renyi, tsallis;
    for (const OrderAlpha& alpha : requested) {
      if (alpha.is_infinity() || alpha.value() >= 2.0) renyi.push_back(alpha);
      if (!alpha.is_infinity() && alpha.value() <= 2.0) tsallis.push_back(alpha);
    }
    options.renyi_alphas = std::move(renyi);
    options.tsallis_alphas = std::move(tsallis);
  }
  if (args.eta >= 0.0) options.eta = DetectionEfficiency(args.eta);

  std::vector<DensityMatrix> states;
  if (!args.state_path.empty()) {
    states.push_back(io::density_from_json(io::read_json_file(args.state_path), tol));
  } else if (args.random_states > 0) {
    echo_seed(args.seed);
    for (int k = 0; k < args.random_states; ++k) {
      const int rank = 1 + static_cast<int>((args.seed + k) % frame.dim());
      states.push_back(random_density(frame.dim(), rank, args.seed + k));
    }
  } else {
    throw std::invalid_argument("bounds requires --state or --random");
  }

  std::vector<BoundReport> all_reports;
  bool violation = false;
  for (const DensityMatrix& rho : states) {
    for (BoundReport& report : certify(frame, rho, options)) {
      violation = violation || report.slack < -options.num_tol;
      all_reports.push_back(std::move(report));
    }
  }
  write_text(args.out, io::to_csv(all_reports));
  std::cerr << all_reports.size() << " bound evaluations over " << states.size()
            << " state(s); " << (violation ? "VIOLATION found" : "no violations") << "\n";
  return violation ? 3 : 0;
}

struct WitnessArgs {
  std::string frame_path;
  std::string state_path;
  std::string mode = "g";
  std::vector<std::string> alphas;
  std::string out = "-";
};

int run_witness(const WitnessArgs& args, double tol) {
  const EquiangularTightFrame frame = load_frame(args.frame_path, tol);
  const BipartiteDensityMatrix rho = load_bipartite(args.state_path, tol);

  const std::vector<OrderAlpha> alphas =
      args.alphas.empty() ? std::vector<OrderAlpha>{0.5, 1.0, 1.5, 2.0}
                          : parse_alphas(args.alphas);

  std::vector<WitnessVerdict> verdicts;
  if (args.mode == "g") {
    verdicts.push_back(
        g_correlation_test(joint_etf_distribution(frame, rho), frame.params()));
  } else if (args.mode == "convolution") {
    const EtfPovm povm = povm_from_frame(frame, tol);
    const RealVector dist = povm_distribution(convolution_povm(povm, povm), rho.state());
    for (const OrderAlpha& alpha : alphas) {
      verdicts.push_back(separability_tsallis_test(dist, alpha, frame.params()));
    }
    verdicts.push_back(separability_maxprob_test(dist, frame.params()));
  } else if (args.mode == "steer") {
    const JointDistribution joint = joint_etf_distribution(frame, rho);
    for (const OrderAlpha& alpha : alphas) {
      verdicts.push_back(steering_test(joint, alpha, frame.params()));
    }
  } else {
    throw std::invalid_argument("unknown witness mode '" + args.mode + "'");
  }

  write_text(args.out, io::to_csv(verdicts));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equiangular tight frame measurements: construction, bounds, witnesses"};
  app.require_subcommand(1);
  const double tol = global_tolerance();

  // frame gen|validate|complement
  auto* frame_cmd = app.add_subcommand("frame", "build, validate, and transform frames");
  frame_cmd->require_subcommand(1);

  FrameGenArgs gen_args;
  auto* gen = frame_cmd->add_subcommand("gen", "generate a frame and write it as JSON");
  gen->add_option("--kind", gen_args.kind, "basis|simplex|optimize|complement")->required();
  gen->add_option("--d", gen_args.d, "dimension");
  gen->add_option("--n", gen_args.n, "vector count (optimize)");
  gen->add_option("--seed", gen_args.seed, "optimizer seed");
  gen->add_option("--in", gen_args.in, "input frame (complement)");
  gen->add_option("--out", gen_args.out, "output path or - for stdout");
  gen->add_option("--success-tol", gen_args.optimize.success_tol,
                  "optimizer success tolerance");
  gen->add_option("--max-iter", gen_args.optimize.max_iterations, "optimizer iteration cap");
  gen->add_option("--restarts", gen_args.optimize.restarts, "optimizer restarts");
  gen->add_option("--lambda", gen_args.optimize.lambda, "tightness penalty weight");
  gen->add_option("--step0", gen_args.optimize.step0, "initial gradient step");
  gen->add_option("--polish-iter", gen_args.optimize.polish_iterations,
                  "refinement iterations (0 disables)");

  std::string validate_in;
  auto* validate = frame_cmd->add_subcommand("validate", "check a frame file");
  validate->add_option("--in", validate_in, "frame JSON path")->required();

  std::string complement_in;
  std::string complement_out = "-";
  auto* complement = frame_cmd->add_subcommand("complement", "write the Naimark complement");
  complement->add_option("--in", complement_in, "frame JSON path")->required();
  complement->add_option("--out", complement_out, "output path or -");

  // state random|maxent
  auto* state_cmd = app.add_subcommand("state", "generate states");
  state_cmd->require_subcommand(1);

  int state_d = 2;
  int state_rank = 0;
  std::uint64_t state_seed = 0;
  std::string state_out = "-";
  auto* srandom = state_cmd->add_subcommand("random", "Ginibre density matrix");
  srandom->add_option("--d", state_d, "dimension")->required();
  srandom->add_option("--rank", state_rank, "rank (default d)");
  srandom->add_option("--seed", state_seed, "seed");
  srandom->add_option("--out", state_out, "output path or -");

  int maxent_d = 2;
  std::string maxent_out = "-";
  auto* smaxent = state_cmd->add_subcommand("maxent", "maximally entangled bipartite state");
  smaxent->add_option("--d", maxent_d, "subsystem dimension")->required();
  smaxent->add_option("--out", maxent_out, "output path or -");

  // measure
  std::string measure_frame, measure_state;
  std::string measure_out = "-";
  std::string measure_format = "csv";
  auto* measure = app.add_subcommand("measure", "outcome distribution of a state");
  measure->add_option("--frame", measure_frame, "frame JSON path")->required();
  measure->add_option("--state", measure_state, "density JSON path")->required();
  measure->add_option("--out", measure_out, "output path or -");
  measure->add_option("--format", measure_format, "csv|json");

  // bounds
  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "certify uncertainty bounds");
  bounds->add_option("--frame", bounds_args.frame_path, "frame JSON path")->required();
  bounds->add_option("--state", bounds_args.state_path, "density JSON path");
  bounds->add_option("--random", bounds_args.random_states, "number of random states");
  bounds->add_option("--seed", bounds_args.seed, "seed for random states");
  bounds->add_option("--alphas", bounds_args.alphas, "comma list, e.g. 0.5,1,2,inf")
      ->delimiter(',');
  bounds->add_option("--family", bounds_args.family, "all|ic|maxprob|renyi|tsallis");
  bounds->add_option("--eta", bounds_args.eta, "detection efficiency for distorted rows");
  bounds->add_option("--out", bounds_args.out, "CSV path or -");

  // witness / steer
  WitnessArgs witness_args;
  auto* witness = app.add_subcommand("witness", "entanglement and steering tests");
  witness->add_option("--frame", witness_args.frame_path, "frame JSON path")->required();
  witness->add_option("--state", witness_args.state_path, "bipartite state JSON")->required();
  witness->add_option("--mode", witness_args.mode, "g|convolution|steer");
  witness->add_option("--alphas", witness_args.alphas, "comma list in (0,2]")->delimiter(',');
  witness->add_option("--out", witness_args.out, "CSV path or -");

  WitnessArgs steer_args;
  steer_args.mode = "steer";
  auto* steer = app.add_subcommand("steer", "steering test (witness --mode steer)");
  steer->add_option("--frame", steer_args.frame_path, "frame JSON path")->required();
  steer->add_option("--state", steer_args.state_path, "bipartite state JSON")->required();
  steer->add_option("--alphas", steer_args.alphas, "comma list in (0,2]")->delimiter(',');
  steer->add_option("--out", steer_args.out, "CSV path or -");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_frame_gen(gen_args, tol);
    if (validate->parsed()) return run_frame_validate(validate_in, tol);
    if (complement->parsed()) {
      FrameGenArgs args;
      args.kind = "complement";
      args.in = complement_in;
      args.out = complement_out;
      return run_frame_gen(args, tol);
    }
    if (srandom->parsed()) {
      echo_seed(state_seed);
      const int rank = state_rank > 0 ? state_rank : state_d;
      write_json_output(state_out,
                        io::density_to_json(random_density(state_d, rank, state_seed)));
      return 0;
    }
    if (smaxent->parsed()) {
      write_json_output(maxent_out, io::bipartite_to_json(max_entangled_state(maxent_d)));
      return 0;
    }
    if (measure->parsed()) {
      const EquiangularTightFrame frame = load_frame(measure_frame, tol);
      const DensityMatrix rho = io::density_from_json(io::read_json_file(measure_state), tol);
      const OutcomeDistribution dist = outcome_distribution(povm_from_frame(frame, tol), rho);
      if (measure_format == "json") {
        io::json j;
        j["d"] = frame.dim();
        j["n"] = frame.count();
        j["probs"] =
            std::vector<double>(dist.probs.data(), dist.probs.data() + dist.probs.size());
        j["index_of_coincidence"] = index_of_coincidence(dist);
        j["max_probability"] = max_probability(dist);
        write_json_output(measure_out, j);
      } else if (measure_format == "csv") {
        write_text(measure_out, io::to_csv(dist));
      } else {
        throw std::invalid_argument("unknown format '" + measure_format + "'");
      }
      return 0;
    }
    if (bounds->parsed()) return run_bounds(bounds_args, tol);
    if (witness->parsed()) return run_witness(witness_args, tol);
    if (steer->parsed()) return run_witness(steer_args, tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
