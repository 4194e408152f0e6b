#pragma once

#include <json.hpp>

#include "bethepop/bethe.hpp"
#include "bethepop/population.hpp"
#include "bethepop/report.hpp"

namespace bp {

using json = nlohmann::ordered_json;

// rationals travel as "p/q" strings; plain JSON integers are accepted on input
Rational rational_from_json(const json& j);
json to_json(const Rational& q);
json to_json(const Poly& p);  // coefficients, low to high
json to_json(const PolyTuple& t);
json to_json(const Weight& w);
json to_json(const WeylWord& w);  // 1-based letters
json to_json(Complex c);          // [re, im]
json to_json(const BetheConfig& c);
json to_json(const Report& r);

Complex complex_from_json(const json& j);  // number, "p/q" or [re, im]

// keys: type | cartan, family, h, Lambda, z; missing Lambda/z default to a
// single point z = 1 carrying the first fundamental weight
Problem problem_from_json(const json& j);
json problem_to_json(const Problem& p);
// "weight" (additive) or "kappa" (multiplicative)
Weight weight_from_json(const json& j, const Problem& p);
// "tuple", default trivial
PolyTuple tuple_from_json(const json& j, const Problem& p);
PolyTuple tuple_from_json_value(const json& t, const Problem& p);
std::vector<int> int_list(const json& j);

// nodes with word, weight, tuple, degrees
json population_to_json(const Population& pop);

}  // namespace bp
