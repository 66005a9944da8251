#pragma once

#include "curvhom/expmap.hpp"
#include "curvhom/frame.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace curvhom {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Text };

struct RunConfig {
  std::string command;
  ModelFamilyParams params;
  int orientation = 1;
  double tol = 1e-9;
  unsigned seed = 0;
  OutputFormat format = OutputFormat::Json;
  bool timing = false;
  VecR v;                 ///< expmap: algebra element (a, v1, v2, v3)
  VecR y;                 ///< expmap: base point (x1, x2, x3, t)
  int trajectory = 0;     ///< expmap: number of trajectory intervals, 0 for none
};

struct CheckRow {
  std::string name;
  bool passed = false;
  double max_abs_error = 0.0;
  std::string note;
};

struct Report {
  std::string command;
  Json model = Json::object();
  std::vector<CheckRow> rows;
  Json classification;  ///< null unless the command classifies
  Json spectra = Json::object();
  Json result = Json::object();  ///< command-specific payload
  std::optional<double> seconds;

  bool all_passed() const;
  std::vector<std::string> failing() const;
};

/// Usage error: the exit status is 2 and the message names the violated precondition.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Report cmd_build(const RunConfig& config);
Report cmd_verify(const RunConfig& config);
Report cmd_classify(const RunConfig& config);
Report cmd_expmap(const RunConfig& config);

/// Dispatches on config.command and fills in timing when requested.
Report run_command(const RunConfig& config);

/// 0 when every row passes, 1 otherwise.
int exit_code(const Report& report);

/// Deterministic renderings; floating-point numbers use 17 significant digits.
std::string render_json(const Report& report);
std::string render_text(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// JSON text of a value with doubles printed as %.17g.
std::string dump_json(const Json& value, int indent = 2);

}  // namespace curvhom
