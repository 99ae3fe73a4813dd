#include "gframes/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gframes/error.hpp"

namespace gframes {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key \"" + key + "\"");
  }
}

std::uint64_t get_u64(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    fail(where, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

double get_real(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number is not finite");
  return v;
}

std::pair<double, double> get_pair(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected a pair [a, b]");
  return {get_real(j[0], where + "[0]"), get_real(j[1], where + "[1]")};
}

InstanceParams parse_generator(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown(j, {"n", "d", "member_dims", "target", "weights", "alphas", "tight_alphas", "perturbation"}, where);
  InstanceParams p;
  if (j.contains("n")) p.spec.algebra_dim = get_u64(j.at("n"), where + ".n");
  if (j.contains("d")) p.spec.module_len = get_u64(j.at("d"), where + ".d");
  if (j.contains("member_dims")) {
    const Json& md = j.at("member_dims");
    if (!md.is_array() || md.empty()) fail(where + ".member_dims", "expected a non-empty array");
    p.spec.member_dims.clear();
    for (std::size_t k = 0; k < md.size(); ++k) {
      p.spec.member_dims.push_back(get_u64(md[k], where + ".member_dims[" + std::to_string(k) + "]"));
    }
  }
  if (j.contains("target")) p.spec.target = target_from_json(j.at("target"), where + ".target");
  if (j.contains("weights")) {
    const Json& w = j.at("weights");
    if (!w.is_object() || !w.contains("lower") || !w.contains("upper")) {
      fail(where + ".weights", "expected {\"lower\", \"upper\"}");
    }
    reject_unknown(w, {"lower", "upper"}, where + ".weights");
    p.weight_lower = get_real(w.at("lower"), where + ".weights.lower");
    p.weight_upper = get_real(w.at("upper"), where + ".weights.upper");
  }
  if (j.contains("alphas")) p.alphas = get_pair(j.at("alphas"), where + ".alphas");
  if (j.contains("tight_alphas")) p.tight_alphas = get_pair(j.at("tight_alphas"), where + ".tight_alphas");
  if (j.contains("perturbation")) p.perturbation = get_real(j.at("perturbation"), where + ".perturbation");
  try {
    validate(p.spec);
  } catch (const DegenerateSpec& e) {
    fail(where, e.what());
  }
  return p;
}

std::optional<FrameKind> parse_kind(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a classification name");
  const auto s = j.get<std::string>();
  for (auto k : {FrameKind::BesselOnly, FrameKind::Frame, FrameKind::TightFrame, FrameKind::ParsevalFrame}) {
    if (to_string(k) == s) return k;
  }
  fail(where, "unknown classification \"" + s + "\"");
}

Instance parse_inline(const Json& j, TheoremId id, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  reject_unknown(j, {"F", "G", "M", "N", "Lambda", "lambda", "alpha", "alphas", "weights", "Delta_ops", "expect"},
                 where);
  if (!j.contains("F")) fail(where, "missing \"F\"");
  Instance inst;
  inst.theorem = id;
  inst.f = family_from_json(j.at("F"), where + ".F");
  if (j.contains("G")) inst.g = family_from_json(j.at("G"), where + ".G");
  if (j.contains("M")) inst.m = op_from_json(j.at("M"), where + ".M");
  if (j.contains("N")) inst.n = op_from_json(j.at("N"), where + ".N");
  if (j.contains("Lambda")) inst.lambda_op = op_from_json(j.at("Lambda"), where + ".Lambda");
  if (j.contains("lambda")) inst.lambda = get_real(j.at("lambda"), where + ".lambda");
  if (j.contains("alpha")) inst.alpha = get_real(j.at("alpha"), where + ".alpha");
  if (j.contains("alphas")) inst.alphas = get_pair(j.at("alphas"), where + ".alphas");
  if (j.contains("weights")) inst.weights = weights_from_json(j.at("weights"), where + ".weights");
  if (j.contains("Delta_ops")) {
    const Json& arr = j.at("Delta_ops");
    if (!arr.is_array()) fail(where + ".Delta_ops", "expected an array of operators");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      inst.deltas.push_back(op_from_json(arr[k], where + ".Delta_ops[" + std::to_string(k) + "]"));
    }
  }
  if (j.contains("expect")) inst.expect = parse_kind(j.at("expect"), where + ".expect");
  return inst;
}

Scenario parse_one(const Json& j, const std::string& where, bool need_schema) {
  if (!j.is_object()) fail(where, "scenario must be an object");
  reject_unknown(j, {"schema", "name", "description", "theorem", "tolerance", "repetitions", "seed", "seed_stride",
                     "samples", "instance"},
                 where);
  if (need_schema || j.contains("schema")) {
    if (!j.contains("schema")) fail(where, "missing \"schema\"");
    if (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != kScenarioSchema) {
      fail(where + ".schema", "unsupported schema version (expected 1)");
    }
  }
  Scenario s;
  if (!j.contains("name") || !j.at("name").is_string()) fail(where, "missing string \"name\"");
  s.name = j.at("name").get<std::string>();
  if (!j.contains("theorem") || !j.at("theorem").is_string()) fail(where, "missing string \"theorem\"");
  const auto id = parse_theorem_id(j.at("theorem").get<std::string>());
  if (!id) fail(where + ".theorem", "unknown theorem \"" + j.at("theorem").get<std::string>() + "\"");
  s.theorem = *id;
  if (j.contains("tolerance")) {
    const Json& t = j.at("tolerance");
    if (!t.is_object()) fail(where + ".tolerance", "expected {\"rel\", \"abs\"}");
    reject_unknown(t, {"rel", "abs"}, where + ".tolerance");
    if (t.contains("rel")) s.tol.rel = get_real(t.at("rel"), where + ".tolerance.rel");
    if (t.contains("abs")) s.tol.abs = get_real(t.at("abs"), where + ".tolerance.abs");
    if (s.tol.rel < 0.0 || s.tol.abs < 0.0) fail(where + ".tolerance", "tolerances must be non-negative");
  }
  if (j.contains("repetitions")) s.repetitions = get_u64(j.at("repetitions"), where + ".repetitions");
  if (s.repetitions < 1) fail(where + ".repetitions", "must be at least 1");
  if (j.contains("seed")) s.seed = get_u64(j.at("seed"), where + ".seed");
  if (j.contains("seed_stride")) s.seed_stride = get_u64(j.at("seed_stride"), where + ".seed_stride");
  if (j.contains("samples")) s.samples = get_u64(j.at("samples"), where + ".samples");
  if (s.samples < 1) fail(where + ".samples", "must be at least 1");

  if (!j.contains("instance") || !j.at("instance").is_object()) fail(where, "missing object \"instance\"");
  const Json& inst = j.at("instance");
  reject_unknown(inst, {"generator", "inline"}, where + ".instance");
  const bool gen = inst.contains("generator");
  const bool inl = inst.contains("inline");
  if (gen == inl) fail(where + ".instance", "exactly one of \"generator\" or \"inline\" is required");
  if (gen) {
    s.instance = parse_generator(inst.at("generator"), where + ".instance.generator");
  } else {
    s.instance = parse_inline(inst.at("inline"), s.theorem, where + ".instance.inline");
  }
  return s;
}

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<Scenario> parse_scenarios(const Json& doc) {
  if (!doc.is_object()) fail("document", "expected a JSON object");
  std::vector<Scenario> out;
  if (doc.contains("scenarios")) {
    reject_unknown(doc, {"schema", "scenarios"}, "document");
    if (!doc.contains("schema") || !doc.at("schema").is_number_integer() ||
        doc.at("schema").get<int>() != kScenarioSchema) {
      fail("document.schema", "unsupported or missing schema version (expected 1)");
    }
    const Json& arr = doc.at("scenarios");
    if (!arr.is_array() || arr.empty()) fail("document.scenarios", "expected a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(parse_one(arr[i], "scenarios[" + std::to_string(i) + "]", false));
    }
  } else {
    out.push_back(parse_one(doc, "scenario", true));
  }
  return out;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                          e.what() + ")");
  }
  try {
    return parse_scenarios(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

RunReport run_scenario(const Scenario& s, std::optional<std::uint64_t> seed_override) {
  const auto start = std::chrono::steady_clock::now();
  RunReport run;
  run.scenario = s.name;
  run.theorem = s.theorem;
  const std::uint64_t base = seed_override.value_or(s.seed);
  for (std::size_t i = 0; i < s.repetitions; ++i) {
    const std::uint64_t seed = base + s.seed_stride * static_cast<std::uint64_t>(i);
    const CheckOptions opts{s.tol, seed, s.samples};
    const Instance inst = std::holds_alternative<Instance>(s.instance)
                              ? std::get<Instance>(s.instance)
                              : make_instance(s.theorem, std::get<InstanceParams>(s.instance), seed);
    Repetition rep{i, seed, run_instance(inst, opts)};
    switch (verdict_of(rep.report)) {
      case Verdict::ConclusionHolds: ++run.aggregate.holds; break;
      case Verdict::HypothesisFails: ++run.aggregate.hypothesis_fails; break;
      case Verdict::ConclusionFails: ++run.aggregate.conclusion_fails; break;
    }
    run.repetitions.push_back(std::move(rep));
  }
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

Json report_json(const std::vector<RunReport>& runs, const ReportOptions& opts) {
  Json doc{{"schema", kScenarioSchema}};
  if (opts.timestamp) doc["generated_at"] = opts.generated_at;
  Json arr = Json::array();
  Aggregate total;
  for (const auto& run : runs) {
    Json results = Json::array();
    for (const auto& rep : run.repetitions) {
      results.push_back(Json{{"rep", rep.index}, {"seed", rep.seed}, {"report", to_json(rep.report)}});
    }
    Json entry{{"name", run.scenario},
               {"theorem", std::string(to_string(run.theorem))},
               {"repetitions", run.repetitions.size()},
               {"aggregate",
                {{"ConclusionHolds", run.aggregate.holds},
                 {"HypothesisFails", run.aggregate.hypothesis_fails},
                 {"ConclusionFails", run.aggregate.conclusion_fails}}}};
    if (opts.timestamp) entry["wall_time_s"] = run.wall_seconds;
    entry["results"] = std::move(results);
    arr.push_back(std::move(entry));
    total.holds += run.aggregate.holds;
    total.hypothesis_fails += run.aggregate.hypothesis_fails;
    total.conclusion_fails += run.aggregate.conclusion_fails;
  }
  doc["scenarios"] = std::move(arr);
  doc["totals"] = {{"ConclusionHolds", total.holds},
                   {"HypothesisFails", total.hypothesis_fails},
                   {"ConclusionFails", total.conclusion_fails}};
  doc["exit_code"] = exit_code(runs);
  return doc;
}

std::string report_csv(const std::vector<RunReport>& runs) {
  std::string out = "scenario,rep,verdict,achieved_lower,achieved_upper,predicted_lower,predicted_upper\n";
  for (const auto& run : runs) {
    for (const auto& rep : run.repetitions) {
      std::visit(
          [&](const auto& r) {
            std::string pl;
            std::string pu;
            if constexpr (std::is_same_v<std::decay_t<decltype(r)>, TheoremReport>) {
              pl = opt_num(r.predicted_lower);
              pu = opt_num(r.predicted_upper);
            }
            out += csv_field(run.scenario) + "," + std::to_string(rep.index) + "," +
                   std::string(to_string(r.verdict)) + "," + num(r.achieved.lower) + "," + num(r.achieved.upper) +
                   "," + pl + "," + pu + "\n";
          },
          rep.report);
    }
  }
  return out;
}

int exit_code(const std::vector<RunReport>& runs) {
  for (const auto& run : runs) {
    if (run.aggregate.conclusion_fails > 0) return 1;
  }
  return 0;
}

}  // namespace gframes
