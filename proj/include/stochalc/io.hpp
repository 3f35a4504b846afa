#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stochalc/coins.hpp"
#include "stochalc/dist.hpp"
#include "stochalc/opsem.hpp"
#include "stochalc/syntax.hpp"

namespace stochalc {

using Json = nlohmann::ordered_json;

// {"term": string, "env": {var: string}}
Json capsule_to_json(const Capsule& c);
Capsule capsule_from_json(const Json& j);

Json corpus_to_json(const std::vector<Capsule>& corpus);
std::vector<Capsule> corpus_from_json(const Json& j);

// Numbers when they fit in 64 bits, decimal strings otherwise.
Json index_to_json(const CoinIndex& i);

// {"outcome": "value"|"diverged", "value": string, "consumed": [...] or
// "bits", "steps": n}
Json outcome_to_json(const Outcome& o, bool small_step);

// {"outcomes": {term: "k/2^n"}, "unresolved": "k/2^n", "empirical": {...}}
Json distribution_to_json(const Distribution& d, const Empirical* empirical = nullptr);

// {x: {"sum": "k/2^n", "expected": "1/2^|x|", "pass": bool}}
Json measure_report_to_json(const MeasureReport& r);

// {"w": label, ...} with the root spelled "".
TreeLabeling labeling_from_json(const Json& j);

std::string read_file(const std::string& path);
// A .json file holds one capsule; anything else is program text.
Capsule load_capsule(const std::string& path);
std::vector<Capsule> load_corpus(const std::string& path);

}  // namespace stochalc
