#include "cli.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "whfactor/error.hpp"
#include "whfactor/json_io.hpp"
#include "whfactor/kyp_krein.hpp"
#include "whfactor/random_systems.hpp"
#include "whfactor/realization.hpp"
#include "whfactor/toeplitz.hpp"
#include "whfactor/verification.hpp"
#include "whfactor/wiener_hopf.hpp"

namespace whfactor::cli {

namespace {

using io::Json;

struct ToleranceField {
  const char* name;
  double Tolerances::*member;
};

constexpr ToleranceField kToleranceFields[] = {
    {"dichotomy", &Tolerances::dichotomy}, {"proj", &Tolerances::proj},
    {"cross", &Tolerances::cross},         {"rank", &Tolerances::rank},
    {"sing", &Tolerances::sing},           {"sym", &Tolerances::sym},
    {"norm", &Tolerances::norm},           {"match", &Tolerances::match},
    {"tail", &Tolerances::tail},
};

double positive_number(const Json& j, const std::string& what) {
  if (!j.is_number() || !(j.get<double>() > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, what + " must be a positive number");
  }
  return j.get<double>();
}

int positive_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw Error(ErrorKind::kInvalidArgument, what + " must be a positive integer");
  }
  return j.get<int>();
}

std::string string_value(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error(ErrorKind::kInvalidArgument, what + " must be a string");
  return j.get<std::string>();
}

void apply_tolerances_json(const Json& j, Tolerances& tol) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kInvalidArgument, "tolerances must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& field : kToleranceFields) {
      if (key == field.name) {
        tol.*field.member = positive_number(value, "tolerances." + key);
        known = true;
      }
    }
    if (!known) throw Error(ErrorKind::kInvalidArgument, "unknown tolerance '" + key + "'");
  }
}

void emit(const JobConfig& config, const Json& j, std::ostream& out) {
  if (config.output.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json_file(config.output, j);
  }
}

StateSpaceSystem load_system(const std::string& path) {
  return io::system_from_json(io::read_json_file(path));
}

// Accepts a bare matrix or a certificate object carrying "H".
ComplexMatrix load_gram(const std::string& path) {
  const Json j = io::read_json_file(path);
  if (j.is_object()) {
    if (!j.contains("H")) throw Error(ErrorKind::kParseError, path + ": missing key 'H'");
    return io::matrix_from_json(j.at("H"));
  }
  return io::matrix_from_json(j);
}

struct Margins {
  double primal = 0.0;
  double adjoint = 0.0;
  bool positive() const { return primal > 0.0 && adjoint > 0.0; }
};

Margins kyp_margins(const StateSpaceSystem& sys, const ComplexMatrix& h, const Tolerances& tol) {
  return {verify_kyp(sys, h, tol), verify_adjoint_kyp(sys, h, tol)};
}

int cmd_check(const JobConfig& config, std::ostream& out, std::ostream& err) {
  const StateSpaceSystem sys = load_system(config.input);
  const Tolerances& tol = config.tol;
  std::vector<std::string> problems;
  Json result;

  const DichotomyInfo info = dichotomy_info(sys.a(), tol);
  result["dichotomy"] = Json{{"margin", io::number(info.margin)},
                             {"dim_minus", info.dim_minus},
                             {"dim_plus", info.dim_plus}};
  if (sys.states() > 0) {
    const ComplexMatrix riesz =
        spectral_projection_riesz(sys.a(), config.quadrature_order, tol);
    result["projection_difference"] = io::number((riesz - info.p_plus).norm());
    result["quadrature_order"] = config.quadrature_order;
  }

  const double gamma = sup_norm_on_circle(sys, config.grid_points, true, tol);
  result["sup_norm"] = io::number(gamma);
  result["norm_margin"] = io::number(1.0 - gamma);
  if (!(gamma < 1.0 - tol.norm)) {
    problems.push_back("NormNotStrictlyContractive: sup norm on the circle is " +
                       std::to_string(gamma));
  }

  if (sys.is_square()) {
    try {
      const CrossData cross = cross_data(sys, tol);
      result["cross_dichotomy"] = Json{{"margin", io::number(cross.info_cross.margin)},
                                       {"dim_minus", cross.info_cross.dim_minus},
                                       {"dim_plus", cross.info_cross.dim_plus}};
    } catch (const Error& e) {
      if (!is_check_failure(e.kind())) throw;
      problems.emplace_back(e.what());
    }
  } else {
    problems.emplace_back("DimensionMismatch: I + D requires a square D");
  }

  result["failures"] = problems;
  result["passed"] = problems.empty();
  emit(config, result, out);

  err << "dichotomy_margin: " << info.margin << '\n'
      << "dim_minus: " << info.dim_minus << '\n'
      << "dim_plus: " << info.dim_plus << '\n'
      << "sup_norm: " << gamma << '\n';
  for (const auto& p : problems) err << "failure: " << p << '\n';
  err << "status: " << (problems.empty() ? "pass" : "fail") << '\n';
  return problems.empty() ? 0 : 2;
}

int cmd_factorize(const JobConfig& config, std::ostream& out, std::ostream& err) {
  const StateSpaceSystem sys = load_system(config.input);
  const Tolerances& tol = config.tol;
  const DSplit split = split_identity_plus_d(sys.d(), config.dsplit, tol);
  const WienerHopfFactorization wh = factorize(sys, config.side, split, tol);

  // The KYP certificate only feeds diagnostics; its failure is reported,
  // not fatal.
  std::optional<KypCertificate> cert;
  std::string kyp_failure;
  try {
    cert = solve_kyp(sys, tol);
  } catch (const Error& e) {
    kyp_failure = e.what();
  }
  DiagnosticsReport report = full_report(sys, wh, cert, config.grid_points, tol);
  if (!kyp_failure.empty()) report.failures.push_back({"kyp", kyp_failure});

  Json result{{"factorization", io::to_json(wh)}, {"diagnostics", io::to_json(report)}};
  result["factorization"]["dsplit"] = std::string(to_string(config.dsplit));
  emit(config, result, out);
  err << format_report(report);
  return report.passed() ? 0 : 2;
}

int cmd_kyp(const JobConfig& config, const std::string& verify_path,
            const std::string& fallback_path, std::ostream& out, std::ostream& err) {
  const StateSpaceSystem sys = load_system(config.input);
  const Tolerances& tol = config.tol;

  if (!verify_path.empty()) {
    const ComplexMatrix h = load_gram(verify_path);
    const Margins m = kyp_margins(sys, h, tol);
    const Inertia inertia = inertia_of(h, tol);
    emit(config,
         Json{{"margin", io::number(m.primal)},
              {"adjoint_margin", io::number(m.adjoint)},
              {"inertia", Json{{"n_pos", inertia.positive}, {"n_neg", inertia.negative}}},
              {"passed", m.positive()}},
         out);
    err << "kyp_margin: " << m.primal << '\n'
        << "adjoint_kyp_margin: " << m.adjoint << '\n'
        << "status: " << (m.positive() ? "pass" : "fail") << '\n';
    return m.positive() ? 0 : 2;
  }

  KypCertificate cert;
  std::string source = "pencil";
  try {
    cert = solve_kyp(sys, tol);
  } catch (const Error& e) {
    const bool recoverable = e.kind() == ErrorKind::kPencilSelectionFailed ||
                             e.kind() == ErrorKind::kCertificationFailed;
    if (fallback_path.empty() || !recoverable) throw;
    cert.h = load_gram(fallback_path);
    const Margins m = kyp_margins(sys, cert.h, tol);
    if (!m.positive()) {
      throw Error(ErrorKind::kCertificationFailed,
                  std::string(e.what()) + "; fallback H does not certify either");
    }
    cert.margin = m.primal;
    cert.adjoint_margin = m.adjoint;
    cert.inertia = inertia_of(cert.h, tol);
    cert.slack = 0.0;
    source = "fallback";
  }
  const DichotomyInfo info = dichotomy_info(sys.a(), tol);
  const bool inertia_ok = inertia_check(cert, info);

  Json result = io::to_json(cert);
  result["source"] = source;
  result["inertia_matches_dichotomy"] = inertia_ok;
  emit(config, result, out);
  err << "source: " << source << '\n'
      << "kyp_margin: " << cert.margin << '\n'
      << "adjoint_kyp_margin: " << cert.adjoint_margin << '\n'
      << "inertia: (" << cert.inertia.positive << ", " << cert.inertia.negative << ")\n"
      << "status: " << (inertia_ok ? "pass" : "fail") << '\n';
  return inertia_ok ? 0 : 2;
}

int cmd_realize(const JobConfig& config, std::ostream& out, std::ostream& err) {
  const RationalSymbolSpec spec = io::rational_spec_from_json(io::read_json_file(config.input));
  const StateSpaceSystem sys = realize_rational(spec, config.tol);
  emit(config, io::to_json(sys), out);
  err << "states: " << sys.states() << '\n';
  return 0;
}

int cmd_toeplitz(const JobConfig& config, const std::string& rhs_path, int n_blocks, int tail,
                 std::ostream& out, std::ostream& err) {
  const StateSpaceSystem sys = load_system(config.input);
  const Tolerances& tol = config.tol;
  const Index p = sys.outputs();
  const ComplexVector rhs = io::vector_from_json(io::read_json_file(rhs_path));
  if (rhs.size() != p * n_blocks) {
    std::ostringstream os;
    os << "right-hand side has length " << rhs.size() << ", expected " << p * n_blocks;
    throw Error(ErrorKind::kDimensionMismatch, os.str());
  }

  const DSplit split = split_identity_plus_d(sys.d(), config.dsplit, tol);
  const WienerHopfFactorization wh = factorize(sys, Side::kRight, split, tol);
  const ComplexVector x = solve_via_factorization(wh, rhs, n_blocks, tail, tol);

  const DichotomyInfo info = dichotomy_info(sys.a(), tol);
  const ToeplitzSection section = build_section(sys, info, n_blocks, 1 - n_blocks, n_blocks - 1);
  const ComplexVector direct = solve_direct(section, rhs, tol);

  // Finite-section boundary effects decay away from the edges, so the
  // comparison uses the middle third of the blocks.
  const Index first = p * (n_blocks / 3);
  const Index count = p * (2 * n_blocks / 3) - first;
  const double interior = (x.segment(first, count) - direct.segment(first, count)).norm();

  emit(config,
       Json{{"solution", io::vector_to_json(x)},
            {"direct_solution", io::vector_to_json(direct)},
            {"interior_difference", io::number(interior)},
            {"full_difference", io::number((x - direct).norm())},
            {"truncation_estimate", io::number(section.truncation_estimate)},
            {"n_blocks", n_blocks},
            {"tail", tail}},
       out);
  err << "interior_difference: " << interior << '\n'
      << "full_difference: " << (x - direct).norm() << '\n';
  return 0;
}

int cmd_generate(const JobConfig& config, std::uint64_t seed, const RandomSymbolOptions& options,
                 bool as_system, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(seed);
  const RationalSymbolSpec spec = random_rational_symbol(rng, options);
  if (as_system) {
    const StateSpaceSystem sys = realize_rational(spec, config.tol);
    emit(config, io::to_json(sys), out);
    err << "states: " << sys.states() << '\n';
  } else {
    emit(config, io::to_json(spec), out);
    err << "poles: " << spec.poles.size() << '\n';
  }
  return 0;
}

}  // namespace

void apply_config_json(const std::string& text, JobConfig& config) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kParseError, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::kInvalidArgument, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "input") {
      config.input = string_value(value, key);
    } else if (key == "command") {
      config.command = string_value(value, key);
    } else if (key == "grid_points") {
      config.grid_points = positive_int(value, key);
    } else if (key == "quadrature_order") {
      config.quadrature_order = positive_int(value, key);
    } else if (key == "dsplit") {
      config.dsplit = parse_split_strategy(string_value(value, key));
    } else if (key == "side") {
      config.side = parse_side(string_value(value, key));
    } else if (key == "tolerances") {
      apply_tolerances_json(value, config.tol);
    } else if (key == "output") {
      config.output = string_value(value, key);
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown config key '" + key + "'");
    }
  }
}

void apply_tolerance_env(Tolerances& tol) {
  for (const auto& field : kToleranceFields) {
    std::string name = "WHFACTOR_TOL_";
    for (const char* c = field.name; *c != '\0'; ++c) {
      name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    }
    const char* raw = std::getenv(name.c_str());
    if (raw == nullptr) continue;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || errno != 0 || !(v > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, name + " must be a positive number");
    }
    tol.*field.member = v;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical Wiener-Hopf factorization of I + F for dichotomous realizations",
               "whfactor"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, output, side_text, dsplit_text;
  int grid_points = 0;
  int quadrature_order = 0;
  app.add_option("--config", config_path, "JSON job configuration");
  app.add_option("-o,--output", output, "Write the JSON result here instead of stdout");
  app.add_option("--grid-points", grid_points, "Circle grid size (default 512)")
      ->check(CLI::PositiveNumber);
  app.add_option("--quadrature-order", quadrature_order,
                 "Riesz quadrature order for check (default 256)")
      ->check(CLI::PositiveNumber);

  std::string input;
  auto* check = app.add_subcommand("check", "Dichotomy and contractivity checks");
  check->add_option("system", input, "State-space system JSON")->required();

  auto* fact = app.add_subcommand("factorize", "Canonical Wiener-Hopf factorization");
  fact->add_option("system", input, "State-space system JSON")->required();
  fact->add_option("--side", side_text, "right or left");
  fact->add_option("--dsplit", dsplit_text, "left_identity, right_identity or symmetric_sqrt");

  std::string verify_path, fallback_path;
  auto* kyp = app.add_subcommand("kyp", "Solve or verify the strict KYP inequality");
  kyp->add_option("system", input, "State-space system JSON")->required();
  kyp->add_option("--verify", verify_path, "Verify a supplied H instead of solving");
  kyp->add_option("--fallback", fallback_path, "H to certify if the pencil solver fails");

  auto* realize = app.add_subcommand("realize", "Realize a rational symbol");
  realize->add_option("spec", input, "Rational symbol JSON")->required();

  std::string rhs_path;
  int n_blocks = 64;
  int tail = 200;
  auto* toeplitz = app.add_subcommand("toeplitz", "Solve a block Toeplitz section");
  toeplitz->add_option("system", input, "State-space system JSON")->required();
  toeplitz->add_option("--rhs", rhs_path, "Right-hand side vector JSON")->required();
  toeplitz->add_option("--n-blocks", n_blocks, "Number of block rows")
      ->check(CLI::PositiveNumber);
  toeplitz->add_option("--tail", tail, "Truncation length for factor coefficients")
      ->check(CLI::PositiveNumber);
  toeplitz->add_option("--dsplit", dsplit_text, "Split of I + D");

  std::uint64_t seed = 0;
  RandomSymbolOptions gen_options;
  bool as_system = false;
  auto* generate = app.add_subcommand("generate", "Random contractive rational symbol");
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--size", gen_options.size, "p = m")->check(CLI::PositiveNumber);
  generate->add_option("--max-states", gen_options.max_states, "State budget")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--pole-gap", gen_options.pole_gap, "Minimum distance of poles from T")
      ->check(CLI::Range(0.01, 0.9));
  generate->add_flag("--system", as_system, "Emit the realized system instead of the symbol");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    JobConfig config;
    if (!config_path.empty()) {
      apply_config_json(io::read_json_file(config_path).dump(), config);
    }
    apply_tolerance_env(config.tol);
    if (!input.empty()) config.input = input;
    if (!output.empty()) config.output = output;
    if (grid_points > 0) config.grid_points = grid_points;
    if (quadrature_order > 0) config.quadrature_order = quadrature_order;
    if (!side_text.empty()) config.side = parse_side(side_text);
    if (!dsplit_text.empty()) config.dsplit = parse_split_strategy(dsplit_text);
    config.command = app.get_subcommands().front()->get_name();

    if (check->parsed()) return cmd_check(config, out, err);
    if (fact->parsed()) return cmd_factorize(config, out, err);
    if (kyp->parsed()) return cmd_kyp(config, verify_path, fallback_path, out, err);
    if (realize->parsed()) return cmd_realize(config, out, err);
    if (toeplitz->parsed()) return cmd_toeplitz(config, rhs_path, n_blocks, tail, out, err);
    if (generate->parsed()) {
      return cmd_generate(config, seed, gen_options, as_system, out, err);
    }
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_check_failure(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace whfactor::cli
