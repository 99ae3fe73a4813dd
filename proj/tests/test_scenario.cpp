#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "gframes/error.hpp"
#include "gframes/gen.hpp"
#include "gframes/scenario.hpp"
#include "oracle.hpp"

using namespace gframes;

namespace {

Json generated(const std::string& theorem, int reps) {
  return Json::parse(R"({"schema": 1, "name": "s", "theorem": ")" + theorem + R"(", "repetitions": )" +
                     std::to_string(reps) +
                     R"(, "seed": 5, "instance": {"generator": {"n": 2, "d": 2, "member_dims": [2, 3, 2],
                        "target": {"kind": "Bounds", "lower": 0.5, "upper": 2.0}}}})");
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("parse a single generated scenario") {
    const auto ss = parse_scenarios(generated("T3_COROLLARY", 3));
    REQUIRE(ss.size() == 1);
    CHECK(ss[0].theorem == TheoremId::T3Corollary);
    CHECK(ss[0].repetitions == 3);
    CHECK(ss[0].seed == 5);
    CHECK(std::holds_alternative<InstanceParams>(ss[0].instance));
  }

  TEST_CASE("schema violations are rejected") {
    auto bad_theorem = generated("NOPE", 1);
    CHECK_THROWS_AS(parse_scenarios(bad_theorem), ValidationError);

    auto extra = generated("T12", 1);
    extra["colour"] = "blue";
    CHECK_THROWS_AS(parse_scenarios(extra), ValidationError);

    auto schema = generated("T12", 1);
    schema["schema"] = 2;
    CHECK_THROWS_AS(parse_scenarios(schema), ValidationError);

    auto both = generated("T12", 1);
    both["instance"]["inline"] = Json::object();
    CHECK_THROWS_AS(parse_scenarios(both), ValidationError);

    auto reps = generated("T12", 1);
    reps["repetitions"] = 0;
    CHECK_THROWS_AS(parse_scenarios(reps), ValidationError);

    CHECK_THROWS_AS(parse_scenarios(Json::array()), ValidationError);
  }

  TEST_CASE("malformed file reports line and column") {
    const std::string path = "gframes_test_malformed.json";
    {
      std::ofstream out(path);
      out << "{\n  \"schema\": 1,\n  \"name\": \n}\n";
    }
    try {
      load_scenarios(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(path + ":4:") != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_scenarios("does/not/exist.json"), ValidationError);
  }

  TEST_CASE("runs are deterministic and seeds follow the stride") {
    auto doc = generated("PERTURB_LAMBDA", 4);
    doc["seed_stride"] = 11;
    const auto s = parse_scenarios(doc).front();
    const auto a = run_scenario(s);
    const auto b = run_scenario(s);
    REQUIRE(a.repetitions.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a.repetitions[i].seed == 5 + 11 * i);
    const ReportOptions plain{false, ""};
    CHECK(report_json({a}, plain).dump() == report_json({b}, plain).dump());
    CHECK(report_csv({a}) == report_csv({b}));
    CHECK(exit_code({a}) == 0);

    const auto c = run_scenario(s, 99);
    CHECK(c.repetitions[0].seed == 99);
    CHECK(c.repetitions[1].seed == 110);
  }

  TEST_CASE("report layout") {
    const auto run = run_scenario(parse_scenarios(generated("CLASSIFY", 2)).front());
    const Json j = report_json({run}, {false, ""});
    CHECK(j["schema"] == 1);
    CHECK_FALSE(j.contains("generated_at"));
    CHECK(j["scenarios"][0]["results"].size() == 2);
    CHECK_FALSE(j["scenarios"][0].contains("wall_time_s"));
    CHECK(j["exit_code"] == 0);
    const Json t = report_json({run}, {true, "2026-01-01T00:00:00Z"});
    CHECK(t["generated_at"] == "2026-01-01T00:00:00Z");

    const auto csv = report_csv({run});
    CHECK(csv.rfind("scenario,rep,verdict,achieved_lower,achieved_upper,predicted_lower,predicted_upper\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  }

  TEST_CASE("inline counterexample exits with 1") {
    const Json doc = Json::parse(R"({"schema": 1, "name": "ce", "theorem": "T11_POSITIVE",
      "instance": {"inline": {"F": [[[[[[1, 0]]]]]], "G": [[[[[[1, 0]]]]]],
        "weights": {"thetas": [[[[1, 0]]]], "deltas": [[[[-1, 0]]]], "lower": 0.5, "upper": 2}}}})");
    const auto run = run_scenario(parse_scenarios(doc).front());
    CHECK(run.aggregate.conclusion_fails == 1);
    CHECK(exit_code({run}) == 1);
  }

  TEST_CASE("family serialization round trip") {
    oracle::Random rng(60);
    const auto f = rng.family(2, 3, {1, 2});
    const auto back = family_from_json(Json::parse(to_json(f).dump()), "F");
    REQUIRE(back.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) CHECK(back.member(k) == f.member(k));

    const auto t = target_from_json(Json::parse(R"({"kind": "Tight", "nu": 2.5})"), "target");
    CHECK(std::get<target::Tight>(t).nu == 2.5);
    CHECK(std::holds_alternative<target::Parseval>(target_from_json("Parseval", "target")));
    CHECK_THROWS_AS(family_from_json(Json::parse("[[[[1]]]]"), "F"), ValidationError);
  }
}
