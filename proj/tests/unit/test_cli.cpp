#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"

using surd::cli::CliRun;
using surd::cli::envelope_from_json;
using surd::cli::OutputEnvelope;
using surd::cli::run;
using surd::cli::to_json;
using nlohmann::json;

namespace {

json run_json(std::vector<std::string> args, int expected_exit) {
  args.push_back("--json");
  const CliRun r = run(args);
  CAPTURE(r.err);
  CHECK(r.exit_code == expected_exit);
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("surd_cli_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("expand") {
    const json j = run_json({"expand", "21"}, 0);
    CHECK(j["status"] == "ok");
    CHECK(j["payload"]["tau"] == 6);
    CHECK(j["payload"]["quotients"] == json::array({"1", "1", "2", "1", "1", "8"}));
    CHECK(j["payload"]["a0"] == "4");
    CHECK(run_json({"expand", "13"}, 0)["payload"]["tau"] == 5);
    const json sq = run_json({"expand", "9"}, 2);
    CHECK(sq["status"] == "error");
    CHECK(sq["payload"]["kind"] == "perfect_square");
    CHECK(sq["payload"]["root"] == "3");
    CHECK(run_json({"expand", "4633", "--limit", "3"}, 1)["payload"]["kind"] == "budget_exceeded");
  }

  TEST_CASE("two-squares") {
    const json j = run_json({"two-squares", "13"}, 0);
    CHECK(j["payload"]["x"] == "2");
    CHECK(j["payload"]["y"] == "3");
    CHECK(j["payload"]["sqrt_minus_one"] == "5");
    const CliRun text = run({"two-squares", "21"});
    CHECK(text.exit_code == 1);
    CHECK(text.out.find("period even; use factor") != std::string::npos);
    CHECK(run({"two-squares", "4"}).exit_code == 2);
  }

  TEST_CASE("regulator") {
    const json j = run_json({"regulator", "21", "--method=both"}, 0);
    CHECK(std::abs(std::stod(j["payload"]["r_star"]["value"].get<std::string>()) - 4.700397710917) < 1e-11);
    CHECK(j["payload"]["reconcile"]["consistent"] == true);
    const json two = run_json({"regulator", "2"}, 0);
    CHECK(std::stod(two["payload"]["hr_fast"]["value"].get<std::string>()) == doctest::Approx(0.8813735870195430).epsilon(1e-14));
    CHECK(run({"regulator", "21", "--prec", "0"}).exit_code == 2);
    CHECK(run({"regulator", "21", "--method", "magic"}).exit_code == 2);
  }

  TEST_CASE("factor") {
    const json j = run_json({"factor", "21"}, 0);
    CHECK(j["payload"]["factors"] == json::array({"3", "7"}));
    CHECK(j["payload"]["method"] == "direct");
    const CliRun p = run({"factor", "13"});
    CHECK(p.exit_code == 1);
    CHECK(p.envelope.status == "no_split");
    CHECK(p.out.find("odd period; two-squares: 2^2+3^2; sqrt(-1)=5") != std::string::npos);
    const json s = run_json({"factor", "4633", "--strategy=shanks"}, 0);
    CHECK(s["payload"]["factors"] == json::array({"41", "113"}));
    CHECK(run({"factor", "12x"}).exit_code == 2);
    CHECK(run({"factor", "1"}).exit_code == 2);
    CHECK(run({"factor", "21", "--strategy=pollard"}).exit_code == 2);
    CHECK(run({"frobnicate", "21"}).exit_code == 2);
  }

  TEST_CASE("envelopes round-trip through JSON") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"expand", "94"}, {"two-squares", "13"}, {"regulator", "79"},
          {"factor", "4633"}, {"factor", "13"}, {"expand", "9"}}) {
      const CliRun r = run(args);
      const OutputEnvelope back = envelope_from_json(json::parse(to_json(r.envelope).dump()));
      CHECK(back == r.envelope);
    }
    CHECK_THROWS(envelope_from_json(json::parse(R"({"command":"x"})")));
  }

  TEST_CASE("config file and --out") {
    const auto cfg = temp_file("config.txt");
    {
      std::ofstream f(cfg);
      f << "# defaults\nstrategy = fermat\njson = true\n";
    }
    const CliRun from_config = run({"factor", "4633", "--config", cfg.string()});
    CHECK(from_config.exit_code == 0);
    CHECK(json::parse(from_config.out)["payload"]["method"] == "fermat");
    const CliRun flag_wins = run({"factor", "4633", "--config", cfg.string(), "--strategy=direct"});
    CHECK(json::parse(flag_wins.out)["payload"]["method"] == "direct");
    {
      std::ofstream f(cfg);
      f << "this line is broken\n";
    }
    CHECK(run({"factor", "21", "--config", cfg.string()}).exit_code == 2);
    CHECK(run({"factor", "21", "--config", temp_file("missing").string()}).exit_code == 2);

    const auto out = temp_file("out.json");
    std::filesystem::remove(out);
    const CliRun r = run({"factor", "21", "--out", out.string()});
    CHECK(r.exit_code == 0);
    std::ifstream in(out);
    REQUIRE(in);
    CHECK(envelope_from_json(json::parse(in)) == r.envelope);
    std::filesystem::remove(out);
    std::filesystem::remove(cfg);
  }
}
