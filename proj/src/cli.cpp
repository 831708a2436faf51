#include "belief/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "belief/beta.hpp"
#include "belief/errors.hpp"
#include "belief/expr.hpp"
#include "belief/frames.hpp"

namespace blc::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Numbers are serialized at 12 significant digits; integral values print
// without a decimal point.
ordered_json number(double value) {
  const double rounded = std::stod(format_real(value));
  if (rounded == std::floor(rounded) && std::fabs(rounded) < 9.0e15) {
    return static_cast<std::int64_t>(rounded);
  }
  return rounded;
}

ordered_json opinion_json(const Opinion& w) {
  return ordered_json{
      {"b", number(w.b)}, {"d", number(w.d)}, {"u", number(w.u)},
      {"a", number(w.a)}};
}

ordered_json result_json(const Opinion& w,
                         const std::vector<std::string>& diagnostics) {
  ordered_json doc;
  doc["opinion"] = opinion_json(w);
  doc["expectation"] = number(expectation(w));
  if (w.u > kEpsDogmatic) {
    const AugmentedBeta ab = opinion_to_beta(w);
    const BetaShape shape = to_shape(ab);
    doc["beta"] = ordered_json{{"r", number(ab.r)},
                               {"s", number(ab.s)},
                               {"alpha", number(shape.alpha)},
                               {"beta", number(shape.beta)}};
  } else {
    doc["beta"] = nullptr;
  }
  const BasicProbabilityVector pv = to_pv(w);
  doc["pv"] = ordered_json{
      {"e", number(pv.e)}, {"u", number(pv.u)}, {"a", number(pv.a)}};
  doc["diagnostics"] = diagnostics;
  return doc;
}

void print_result(const Opinion& w,
                  const std::vector<std::string>& diagnostics,
                  const std::string& output, std::ostream& out) {
  if (output == "text") {
    out << format(w) << "\n" << "E=" << format_real(expectation(w)) << "\n";
    return;
  }
  out << result_json(w, diagnostics).dump() << "\n";
}

bool is_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::PreconditionViolated, "cannot read file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Env load_env(const std::string& path) {
  Env env;
  if (path.empty()) return env;
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::PreconditionViolated,
         std::string("malformed environment JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    fail(ErrorKind::PreconditionViolated,
         "environment JSON must map names to belief literals");
  }
  for (const auto& [name, value] : doc.items()) {
    if (!is_identifier(name)) {
      fail(ErrorKind::PreconditionViolated,
           "environment name '" + name + "' is not a valid identifier");
    }
    if (!value.is_string()) {
      fail(ErrorKind::PreconditionViolated,
           "environment entry '" + name + "' must be a literal string");
    }
    const ExprPtr literal = parse_expression(value.get<std::string>());
    env[name] = evaluate(*literal, {}).value;
  }
  return env;
}

struct CommonFlags {
  std::string env_path;
  std::string output = "json";
  double eta = -1.0;
  double zeta = -1.0;
  double gamma = -1.0;
  double delta = -1.0;

  LimitParams limits() const {
    LimitParams lp;
    if (eta >= 0.0) lp.eta = eta;
    if (zeta >= 0.0) lp.zeta = zeta;
    if (gamma >= 0.0) lp.gamma = gamma;
    if (delta >= 0.0) lp.delta = delta;
    return lp;
  }
};

void add_limit_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--eta", flags.eta,
                  "limit of (1-a_x)/(1-a_y) for multiplication at a=1");
  cmd->add_option("--zeta", flags.zeta,
                  "limit of a_x/a_y for comultiplication at a=0");
  cmd->add_option("--gamma", flags.gamma,
                  "equal-base-rate division limit in [0,1]");
  cmd->add_option("--delta", flags.delta,
                  "equal-base-rate codivision limit in [0,1]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"belief-calculus engine"};
  app.name("blc");
  app.require_subcommand(1);

  // eval
  std::string eval_input;
  CommonFlags eval_flags;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate a belief expression");
  eval_cmd->add_option("expr", eval_input, "expression (with optional let preamble)")
      ->required();
  eval_cmd->add_option("--env", eval_flags.env_path,
                       "JSON file mapping names to belief literals");
  eval_cmd->add_option("--output", eval_flags.output, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  add_limit_flags(eval_cmd, eval_flags);

  // convert
  std::string convert_target;
  std::string convert_input;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "convert between belief representations");
  convert_cmd->add_option("--to", convert_target, "beta, pv or opinion")
      ->required()
      ->check(CLI::IsMember({"beta", "pv", "opinion"}));
  convert_cmd->add_option("value", convert_input, "belief literal")->required();

  // coarsen
  std::string coarsen_path;
  std::string coarsen_target;
  std::string coarsen_method = "smooth";
  CommonFlags coarsen_flags;
  CLI::App* coarsen_cmd = app.add_subcommand(
      "coarsen", "coarsen a frame file onto a binary frame");
  coarsen_cmd->add_option("frame", coarsen_path, "frame JSON file")->required();
  coarsen_cmd
      ->add_option("--target", coarsen_target,
                   "comma-joined atom labels of the target subset")
      ->required();
  coarsen_cmd->add_option("--method", coarsen_method, "smooth or stable")
      ->check(CLI::IsMember({"smooth", "stable"}));
  coarsen_cmd->add_option("--output", coarsen_flags.output, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  // plot
  std::string plot_input;
  int plot_samples = 201;
  std::string plot_out;
  CommonFlags plot_flags;
  CLI::App* plot_cmd = app.add_subcommand(
      "plot", "emit the beta density of an expression as CSV");
  plot_cmd->add_option("expr", plot_input, "expression")->required();
  plot_cmd->add_option("--samples", plot_samples, "grid points (default 201)");
  plot_cmd->add_option("--out", plot_out, "write CSV here instead of stdout");
  plot_cmd->add_option("--env", plot_flags.env_path,
                       "JSON file mapping names to belief literals");
  add_limit_flags(plot_cmd, plot_flags);

  std::vector<char*> argv;
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("blc");
  for (const auto& arg : args) storage.push_back(arg);
  for (auto& arg : storage) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (eval_cmd->parsed()) {
      const Program program = parse_program(eval_input);
      const EvalResult result = evaluate_program(
          program, load_env(eval_flags.env_path), eval_flags.limits());
      print_result(result.value, result.diagnostics, eval_flags.output, out);
      return 0;
    }
    if (convert_cmd->parsed()) {
      const ExprPtr literal = parse_expression(convert_input);
      const Opinion w = evaluate(*literal, {}).value;
      ordered_json doc;
      if (convert_target == "beta") {
        const AugmentedBeta ab = opinion_to_beta(w);
        const BetaShape shape = to_shape(ab);
        doc = ordered_json{{"r", number(ab.r)},
                           {"s", number(ab.s)},
                           {"a", number(ab.a)},
                           {"alpha", number(shape.alpha)},
                           {"beta", number(shape.beta)}};
      } else if (convert_target == "pv") {
        const BasicProbabilityVector pv = to_pv(w);
        doc = ordered_json{
            {"e", number(pv.e)}, {"u", number(pv.u)}, {"a", number(pv.a)}};
      } else {
        doc = opinion_json(w);
      }
      out << doc.dump() << "\n";
      return 0;
    }
    if (coarsen_cmd->parsed()) {
      const Bba bba = bba_from_json(read_file(coarsen_path));
      const Subset target = bba.frame().parse_subset(coarsen_target);
      const Opinion w = coarsen_method == "stable"
                            ? stable_coarsen(bba, target)
                            : smooth_coarsen(bba, target);
      print_result(w, {}, coarsen_flags.output, out);
      return 0;
    }
    if (plot_cmd->parsed()) {
      const Program program = parse_program(plot_input);
      const EvalResult result = evaluate_program(
          program, load_env(plot_flags.env_path), plot_flags.limits());
      const BetaShape shape = to_shape(opinion_to_beta(result.value));
      const auto grid = pdf_grid(shape, plot_samples);
      std::ostringstream csv;
      csv << "p,density\n";
      for (const auto& point : grid) {
        csv << format_real(point.p) << "," << format_real(point.density)
            << "\n";
        if (point.clamped) {
          err << "note: density at p=" << format_real(point.p)
              << " is singular; clamped to the nearest interior grid value\n";
        }
      }
      if (plot_out.empty()) {
        out << csv.str();
      } else {
        std::ofstream file(plot_out, std::ios::binary);
        if (!file) {
          fail(ErrorKind::PreconditionViolated,
               "cannot write file '" + plot_out + "'");
        }
        file << csv.str();
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "blc: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "blc: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace blc::cli
