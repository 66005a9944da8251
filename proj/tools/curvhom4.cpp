#include "curvhom/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace curvhom;

namespace {

VecR parse_components(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " expects comma-separated numbers, got '" + text + "'");
    }
  }
  VecR v(static_cast<Eigen::Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "1" || s == "+1") return 1;
  if (s == "-" || s == "-1") return -1;
  throw UsageError("--sign must be + or -, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-homogeneous Einstein four-manifold models: build, verify, classify, expmap"};
  app.require_subcommand(1);

  std::string variant = "diag", sign = "+", form = "standard", format = "json", v_text, y_text;
  RunConfig config;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--variant", variant, "diag|nondiag|scalar|nilpotent|abelian")->capture_default_str();
    sub->add_option("--p", config.params.p, "model parameter p (nonzero)")->capture_default_str();
    sub->add_option("--sign", sign, "sign of the form on V: + or -")->capture_default_str();
    sub->add_option("--delta", config.params.delta, "1 or -1")->capture_default_str();
    sub->add_option("--form", form, "standard|euclidean")->capture_default_str();
    sub->add_option("--orientation", config.orientation, "1 or -1")->capture_default_str();
    sub->add_option("--tol", config.tol, "relative tolerance")->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for sampled checks")->capture_default_str();
    sub->add_option("--format", format, "json|text")->capture_default_str();
    sub->add_flag("--timing", config.timing, "append wall-clock timing (breaks byte-identical output)");
  };
  for (const char* name : {"build", "verify", "classify"}) add_common(app.add_subcommand(name, std::string(name) + " a model"));
  CLI::App* expmap = app.add_subcommand("expmap", "exponential map of the field algebra");
  add_common(expmap);
  expmap->add_option("--v", v_text, "algebra element a,v1,v2,v3")->required();
  expmap->add_option("--y", y_text, "base point x1,x2,x3,t (default 0,0,0,1)");
  expmap->add_option("--trajectory", config.trajectory, "dump the flow at this many intervals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.params.variant = parse_variant(variant);
    config.params.form = parse_form(form);
    config.params.pm_sign = parse_sign(sign);
    if (format == "json") config.format = OutputFormat::Json;
    else if (format == "text") config.format = OutputFormat::Text;
    else throw UsageError("--format must be json or text");
    if (!v_text.empty()) config.v = parse_components(v_text, "--v");
    if (!y_text.empty()) config.y = parse_components(y_text, "--y");

    const Report report = run_command(config);
    std::cout << render(report, config.format);
    if (!report.all_passed()) {
      std::cerr << "failing rows:";
      for (const auto& name : report.failing()) std::cerr << " " << name;
      std::cerr << "\n";
    }
    return exit_code(report);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  }
}
