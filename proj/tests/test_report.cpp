#include "doctest.h"

#include "curvhom/report.hpp"

#include <cmath>

using namespace curvhom;

namespace {

RunConfig config_for(const std::string& command, Variant v = Variant::Diagonalizable, double p = 1.0, int sign = 1,
                     int delta = 1) {
  RunConfig c;
  c.command = command;
  c.params.variant = v;
  c.params.p = p;
  c.params.pm_sign = sign;
  c.params.delta = delta;
  return c;
}

}  // namespace

TEST_CASE("verify passes on every supported model") {
  for (Variant v : {Variant::Diagonalizable, Variant::NonDiagonalizable, Variant::Scalar, Variant::Nilpotent,
                    Variant::Abelian})
    for (auto [s, d] : {std::pair{1, 1}, {1, -1}, {-1, 1}}) {
      CAPTURE(variant_name(v));
      CAPTURE(s);
      CAPTURE(d);
      const Report r = cmd_verify(config_for("verify", v, 2.0, s, d));
      CHECK(r.rows.size() > 20);
      for (const auto& row : r.rows) {
        CAPTURE(row.name);
        CAPTURE(row.note);
        CHECK(row.passed);
      }
      CHECK(exit_code(r) == 0);
    }
}

TEST_CASE("verify output is byte-identical across runs") {
  RunConfig c = config_for("verify", Variant::Diagonalizable, 0.5, 1, -1);
  c.seed = 7;
  CHECK(render_json(run_command(c)) == render_json(run_command(c)));
  c.format = OutputFormat::Text;
  CHECK(render(run_command(c), c.format) == render(run_command(c), c.format));
}

TEST_CASE("timing is only reported on request") {
  RunConfig c = config_for("build");
  CHECK_FALSE(run_command(c).seconds.has_value());
  c.timing = true;
  CHECK(run_command(c).seconds.has_value());
}

TEST_CASE("build describes the model") {
  const Report r = cmd_build(config_for("build", Variant::Diagonalizable, 1.0, 1, -1));
  CHECK(r.model["signature"] == "--++");
  CHECK(r.model["variant"] == "diag");
  CHECK(r.model["gram"][0][0] == -1);
  CHECK(r.classification.is_null());
}

TEST_CASE("classify reports the case and evidence") {
  const Report r = cmd_classify(config_for("classify"));
  CHECK(r.classification["case"] == case_name(ClassCase::PetrovRicciFlatLorentz));
  CHECK(r.classification["evidence"].size() >= 4);
  CHECK(cmd_classify(config_for("classify", Variant::NonDiagonalizable)).classification["case"] ==
        case_name(ClassCase::NotCDiagonalizable));
}

TEST_CASE("expmap result") {
  RunConfig c = config_for("expmap");
  c.v = VecR::Unit(4, 0);
  c.trajectory = 4;
  const Report r = cmd_expmap(c);
  CHECK(r.result["endpoint"][3].get<double>() == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(r.result["trajectory"].size() == 5);
  CHECK(exit_code(r) == 0);

  c.v = VecR::Unit(4, 1);
  c.trajectory = 0;
  const Report s = cmd_expmap(c);
  CHECK(s.result["endpoint"][0].get<double>() == doctest::Approx(1.0));
  CHECK_FALSE(s.result.contains("trajectory"));
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(cmd_build(config_for("build", Variant::Diagonalizable, 0.0)), UsageError);
  CHECK_THROWS_AS(cmd_build(config_for("build", Variant::Diagonalizable, 1.0, -1, -1)), UsageError);
  CHECK_THROWS_AS(cmd_build(config_for("build", Variant::Diagonalizable, 1.0, 1, 3)), UsageError);
  RunConfig missing = config_for("expmap");
  CHECK_THROWS_AS(cmd_expmap(missing), UsageError);
  missing.v = VecR::Zero(4);
  missing.y = VecR::Zero(4);
  CHECK_THROWS_AS(cmd_expmap(missing), UsageError);
  CHECK_THROWS_AS(run_command(config_for("nonsense")), UsageError);
}

TEST_CASE("exit code follows the rows") {
  Report r;
  r.rows.push_back({"a", true, 0.0, ""});
  CHECK(exit_code(r) == 0);
  r.rows.push_back({"b", false, 1.0, ""});
  CHECK(exit_code(r) == 1);
  CHECK(r.failing() == std::vector<std::string>{"b"});
}

TEST_CASE("json rendering of doubles") {
  CHECK(dump_json(Json(0.1), 0) == "0.10000000000000001");
  CHECK(dump_json(Json(std::nan("")), 0) == "null");
  CHECK(dump_json(Json::array({1, 2.5}), 0) == "[1,2.5]");
  const Json parsed = Json::parse(render_json(cmd_build(config_for("build"))));
  CHECK(parsed["command"] == "build");
  CHECK(parsed["all_passed"] == true);
}
