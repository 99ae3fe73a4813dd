#pragma once

#include <json.hpp>

#include "gframes/gen.hpp"
#include "gframes/instances.hpp"
#include "gframes/report.hpp"

namespace gframes {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im] pairs. An algebra element is an n x n array
// of them (row-major); an operator A^d -> A^d' is a d x d' array of
// algebra elements; a family is an array of operators.

Json to_json(Complex z);
Json to_json(const AlgebraElement& a);
Json to_json(const AdjointableOp& t);
Json to_json(const GFrameFamily& f);
Json to_json(const ScalarWeights& w);
Json to_json(const FrameBounds& b);
Json to_json(const Check& c);
Json to_json(const TheoremReport& r);
Json to_json(const PerturbationReport& r);
Json to_json(const AnyReport& r);

// Readers throw ValidationError naming `where` on malformed input.
Complex complex_from_json(const Json& j, const std::string& where);
AlgebraElement algebra_from_json(const Json& j, const std::string& where);
AdjointableOp op_from_json(const Json& j, const std::string& where);
GFrameFamily family_from_json(const Json& j, const std::string& where);
ScalarWeights weights_from_json(const Json& j, const std::string& where);
GenTarget target_from_json(const Json& j, const std::string& where);
Json to_json(const GenTarget& t);

}  // namespace gframes
