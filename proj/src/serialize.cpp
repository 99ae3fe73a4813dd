#include "gframes/serialize.hpp"

#include <cmath>
#include <string>

#include "gframes/error.hpp"

namespace gframes {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

Json pair_json(const std::optional<std::pair<double, double>>& p) {
  if (!p) return nullptr;
  return Json::array({number(p->first), number(p->second)});
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

double real_from_json(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number is not finite");
  return v;
}

Json checks_json(const std::vector<Check>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(to_json(c));
  return arr;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const AlgebraElement& a) {
  Json rows = Json::array();
  const CMatrix& m = a.entries();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const AdjointableOp& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.source_len(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < t.target_len(); ++j) row.push_back(to_json(t.block(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const GFrameFamily& f) {
  Json arr = Json::array();
  for (const auto& m : f.members()) arr.push_back(to_json(m));
  return arr;
}

Json to_json(const ScalarWeights& w) {
  Json th = Json::array();
  Json de = Json::array();
  for (const auto& a : w.thetas) th.push_back(to_json(a));
  for (const auto& a : w.deltas) de.push_back(to_json(a));
  return Json{{"thetas", th}, {"deltas", de}, {"lower", w.lower}, {"upper", w.upper}};
}

Json to_json(const FrameBounds& b) {
  return Json{{"lower", number(b.lower)}, {"upper", number(b.upper)}, {"tight", b.tight}, {"parseval", b.parseval}};
}

Json to_json(const Check& c) {
  return Json{{"name", c.name}, {"passed", c.passed}, {"measured", number(c.measured)}, {"limit", number(c.limit)}};
}

Json to_json(const TheoremReport& r) {
  Json j{{"theorem_id", std::string(to_string(r.theorem_id))},
         {"verdict", std::string(to_string(r.verdict))},
         {"hypothesis_checks", checks_json(r.hypothesis_checks)},
         {"conclusion_checks", checks_json(r.conclusion_checks)},
         {"predicted_lower", optional_number(r.predicted_lower)},
         {"predicted_upper", optional_number(r.predicted_upper)},
         {"achieved", to_json(r.achieved)}};
  if (r.classification) j["classification"] = std::string(to_string(*r.classification));
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const PerturbationReport& r) {
  return Json{{"theorem_id", std::string(to_string(r.theorem_id))},
              {"verdict", std::string(to_string(r.verdict))},
              {"alphas", pair_json(r.alphas)},
              {"measured_lhs", number(r.measured_lhs)},
              {"allowed_rhs", number(r.allowed_rhs)},
              {"claimed_bounds", pair_json(r.claimed_bounds)},
              {"achieved", to_json(r.achieved)},
              {"hypothesis_checks", checks_json(r.hypothesis_checks)},
              {"conclusion_checks", checks_json(r.conclusion_checks)},
              {"bound_discrepancy_note", r.bound_discrepancy_note}};
}

Json to_json(const AnyReport& r) {
  return std::visit([](const auto& rep) { return to_json(rep); }, r);
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {real_from_json(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) fail(where, "expected a complex number [re, im]");
  return {real_from_json(j[0], where), real_from_json(j[1], where)};
}

AlgebraElement algebra_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty square array of complex numbers");
  const std::size_t n = j.size();
  CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) fail(where, "algebra element must be square");
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return AlgebraElement(m);
}

AdjointableOp op_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty d x d' array of algebra elements");
  std::vector<std::vector<AlgebraElement>> blocks;
  std::size_t width = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].empty()) fail(where, "operator rows must be non-empty arrays");
    if (i == 0) width = j[i].size();
    if (j[i].size() != width) fail(where, "operator rows differ in length");
    std::vector<AlgebraElement> row;
    for (std::size_t k = 0; k < width; ++k) {
      row.push_back(algebra_from_json(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    blocks.push_back(std::move(row));
  }
  try {
    return AdjointableOp(blocks);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

GFrameFamily family_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of operators");
  std::vector<AdjointableOp> ops;
  for (std::size_t k = 0; k < j.size(); ++k) ops.push_back(op_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  try {
    return GFrameFamily(std::move(ops));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

ScalarWeights weights_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object with thetas, deltas, lower, upper");
  ScalarWeights w;
  for (const char* key : {"thetas", "deltas", "lower", "upper"}) {
    if (!j.contains(key)) fail(where, std::string("missing \"") + key + "\"");
  }
  for (const auto& [key, list] : {std::pair{"thetas", &w.thetas}, std::pair{"deltas", &w.deltas}}) {
    const Json& arr = j.at(key);
    if (!arr.is_array()) fail(where + "." + key, "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      list->push_back(algebra_from_json(arr[k], where + "." + key + "[" + std::to_string(k) + "]"));
    }
  }
  w.lower = real_from_json(j.at("lower"), where + ".lower");
  w.upper = real_from_json(j.at("upper"), where + ".upper");
  return w;
}

GenTarget target_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Random") return target::Random{};
    if (s == "Parseval") return target::Parseval{};
    fail(where, "unknown target \"" + s + "\"");
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    fail(where, "expected a target name or an object with \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Random") return target::Random{};
  if (kind == "Parseval") return target::Parseval{};
  if (kind == "Tight") {
    if (!j.contains("nu")) fail(where, "Tight target needs \"nu\"");
    return target::Tight{real_from_json(j.at("nu"), where + ".nu")};
  }
  if (kind == "Bounds") {
    if (!j.contains("lower") || !j.contains("upper")) fail(where, "Bounds target needs \"lower\" and \"upper\"");
    return target::Bounds{real_from_json(j.at("lower"), where + ".lower"),
                          real_from_json(j.at("upper"), where + ".upper")};
  }
  fail(where, "unknown target kind \"" + kind + "\"");
}

Json to_json(const GenTarget& t) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, target::Random>) return Json{{"kind", "Random"}};
        if constexpr (std::is_same_v<T, target::Parseval>) return Json{{"kind", "Parseval"}};
        if constexpr (std::is_same_v<T, target::Tight>) return Json{{"kind", "Tight"}, {"nu", v.nu}};
        if constexpr (std::is_same_v<T, target::Bounds>)
          return Json{{"kind", "Bounds"}, {"lower", v.lower}, {"upper", v.upper}};
      },
      t);
}

}  // namespace gframes
