#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <string>

#include <json.hpp>

#include "relia/curves.hpp"
#include "relia/run_log.hpp"
#include "support.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using testsupport::run_cli;
using testsupport::write_temp_file;

namespace {

const std::string kFixtureCsv =
    "problem_id,strategy,attempt_index,queries,cost_usd,verdict\n"
    "P1,kshot,1,1,0.5,FAIL\n"
    "P1,kshot,2,1,0.5,OK\n";

} // namespace

TEST_CASE("metric subcommand prints the per-dollar metric", "[cli]") {
  const auto res = run_cli("metric --p 0.3 --c 0.1");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "3.566749\n");

  const auto js = run_cli("metric --p 0.3 --c 0.1 --format json");
  CHECK(js.exit_code == 0);
  const auto parsed = nlohmann::json::parse(js.out);
  CHECK_THAT(parsed.at("metric").get<double>(),
             WithinAbs(3.5667494393873245, 1e-12));
}

TEST_CASE("usage errors exit with status 1", "[cli]") {
  const auto bare = run_cli("");
  CHECK(bare.exit_code == 1);
  CHECK_THAT(bare.err, ContainsSubstring("Usage"));

  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("metric").exit_code == 1);
  CHECK(run_cli("curves --axis sideways --log x --thresholds 1").exit_code == 1);
}

TEST_CASE("data errors exit with status 2", "[cli]") {
  CHECK(run_cli("metric --p 1.5 --c 0.1").exit_code == 2);
  CHECK(run_cli("curves --axis cost --log /nonexistent.csv --thresholds 1").exit_code ==
        2);

  const auto dup = write_temp_file(
      "dup", kFixtureCsv + "P1,kshot,2,1,0.5,OK\n");
  const auto res = run_cli("curves --axis cost --log " + dup.string() +
                           " --thresholds 0.5,1.0");
  CHECK(res.exit_code == 2);
  CHECK_THAT(res.err, ContainsSubstring("row 3"));
  std::filesystem::remove(dup);
}

TEST_CASE("curves output matches the library byte for byte", "[cli]") {
  const auto log = write_temp_file("fixture", kFixtureCsv);
  const auto res =
      run_cli("curves --axis cost --log " + log.string() + " --thresholds 0.5,1.0,2.0");
  CHECK(res.exit_code == 0);

  std::istringstream in(kFixtureCsv);
  const auto records = relia::ingest(in);
  const auto curve = relia::cumulative_curve(records, "kshot", relia::CurveAxis::cost,
                                             {0.5, 1.0, 2.0});
  CHECK(res.out == relia::curve_to_csv(curve));
  CHECK(res.out == "threshold,solved_count\n0.5,0\n1,1\n2,1\n");
  std::filesystem::remove(log);
}

TEST_CASE("allocate subcommand solves the worked instance", "[cli]") {
  const auto res = run_cli(
      "allocate --budget 0.07 --solver A:0.5:0.03 --solver B:0.3:0.02 --exact");
  CHECK(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.out);
  CHECK(parsed.at("counts").at("A").get<double>() == 1.0);
  CHECK(parsed.at("counts").at("B").get<double>() == 2.0);
  CHECK_THAT(parsed.at("objective").get<double>(),
             WithinAbs(1.4064970684373994, 1e-9));

  const auto lp = run_cli("allocate --budget 1.0 --solver A:0.3:0.1 --solver B:0.9:1.0");
  const auto lp_parsed = nlohmann::json::parse(lp.out);
  CHECK_THAT(lp_parsed.at("counts").at("A").get<double>(), WithinAbs(10.0, 1e-9));
  CHECK(lp_parsed.at("counts").at("B").get<double>() == 0.0);
}

TEST_CASE("estimate subcommand emits the estimate schema", "[cli]") {
  const auto res = run_cli("estimate --s 5 --n 10 --confidence 0.95");
  CHECK(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.out);
  CHECK(parsed.at("s").get<int>() == 5);
  CHECK(parsed.at("n").get<int>() == 10);
  CHECK_THAT(parsed.at("lower").get<double>(), WithinAbs(0.1870860284473985, 1e-8));
  CHECK_THAT(parsed.at("upper").get<double>(), WithinAbs(0.8129139715526015, 1e-8));
  CHECK(parsed.at("met_target").is_null());

  const auto adaptive =
      run_cli("estimate --adaptive --p 1.0 --target-length 0.31 --seed 4");
  CHECK(adaptive.exit_code == 0);
  const auto ad = nlohmann::json::parse(adaptive.out);
  CHECK(ad.at("n").get<int>() == 10);
  CHECK(ad.at("met_target").get<bool>());
}

TEST_CASE("fit-cost subcommand fits a CSV of query costs", "[cli]") {
  std::string csv = "queries,cost_usd\n";
  for (int q = 1; q <= 20; ++q) {
    const double cost = 0.05 + 0.002 * q * q;
    csv += std::to_string(q) + "," + relia::format_double(cost) + "\n";
  }
  const auto data = write_temp_file("fit", csv);
  const auto res = run_cli("fit-cost " + data.string());
  CHECK(res.exit_code == 0);
  const auto parsed = nlohmann::json::parse(res.out);
  CHECK_THAT(parsed.at("a").get<double>(), WithinAbs(0.05, 1e-6));
  CHECK_THAT(parsed.at("b").get<double>(), WithinAbs(0.002, 1e-6));
  CHECK_THAT(parsed.at("gamma").get<double>(), WithinAbs(2.0, 1e-6));
  CHECK(parsed.at("n_points").get<int>() == 20);
  std::filesystem::remove(data);

  const auto bad_header = write_temp_file("fit-bad", "q,cost\n1,0.1\n");
  CHECK(run_cli("fit-cost " + bad_header.string()).exit_code == 2);
  std::filesystem::remove(bad_header);
}

TEST_CASE("simulate subcommand is reproducible under a fixed seed", "[cli]") {
  const auto config = write_temp_file("sim", R"({
    "kind": "kshot",
    "p": 0.3,
    "c": 0.1,
    "budgets": [0.5, 1.0, 2.0],
    "trials": 2000,
    "seed": 11
  })");

  const auto first = run_cli("simulate --config " + config.string());
  const auto second = run_cli("simulate --config " + config.string());
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK_THAT(first.out, ContainsSubstring("budget,success_rate,ci_lower,ci_upper,"
                                          "mean_queries,mean_cost,trials,successes"));

  const auto reseeded = run_cli("simulate --config " + config.string() + " --seed 12");
  CHECK(reseeded.exit_code == 0);
  CHECK(reseeded.out != first.out);

  const auto agent_config = write_temp_file("sim-agent", R"({
    "kind": "partitioned_agent",
    "lambda": 1.0,
    "onset": 0.1,
    "cost_model": {"a": 0.05, "b": 0.002, "gamma": 2.0},
    "parts": 3,
    "budgets": [1.0, 2.0],
    "trials": 1000,
    "seed": 5
  })");
  const auto agent_res = run_cli("simulate --config " + agent_config.string());
  CHECK(agent_res.exit_code == 0);
  CHECK(agent_res.out == run_cli("simulate --config " + agent_config.string()).out);

  const auto typo = write_temp_file("sim-typo", R"({"kind": "kshot", "p": 0.3,
    "c": 0.1, "budgets": [1.0], "trials": 10, "seed": 1, "tirals": 5})");
  CHECK(run_cli("simulate --config " + typo.string()).exit_code == 2);

  std::filesystem::remove(config);
  std::filesystem::remove(agent_config);
  std::filesystem::remove(typo);
}

TEST_CASE("curves aggregation flags", "[cli]") {
  const std::string log =
      "problem_id,strategy,attempt_index,queries,cost_usd,verdict\n"
      "P1,kshot,1,1,1.0,OK\n"
      "P1,agent,1,3,0.5,OK\n"
      "P2,kshot,1,1,0.2,OK\n"
      "P2,agent,1,2,1.5,FAIL\n";
  const auto path = write_temp_file("agg", log);

  const auto pooled = run_cli("curves --axis cost --log " + path.string() +
                              " --thresholds 0.5,1.0,2.0");
  CHECK(pooled.out == "threshold,solved_count\n0.5,2\n1,2\n2,2\n");

  const auto mean = run_cli("curves --axis cost --log " + path.string() +
                            " --thresholds 0.5,1.0,2.0 --aggregate mean");
  CHECK(mean.out == "threshold,mean_solved\n0.5,1\n1,1.5\n2,1.5\n");

  const auto per = run_cli("curves --axis cost --log " + path.string() +
                           " --thresholds 0.5,1.0,2.0 --aggregate per-strategy");
  CHECK_THAT(per.out, ContainsSubstring("strategy,threshold,solved_count"));
  CHECK_THAT(per.out, ContainsSubstring("kshot,0.5,1"));
  CHECK_THAT(per.out, ContainsSubstring("agent,0.5,1"));

  const auto only = run_cli("curves --axis queries --log " + path.string() +
                            " --thresholds 1,3 --strategy agent");
  CHECK(only.out == "threshold,solved_count\n1,0\n3,1\n");

  std::filesystem::remove(path);
}
