#include "stochalc/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "stochalc/church.hpp"

namespace stochalc {

Json capsule_to_json(const Capsule& c) {
  Json env = Json::object();
  c.env.for_each([&](const Var& x, const Term& v) { env[x] = to_string(v); });
  return Json{{"term", to_string(c.term)}, {"env", env}};
}

Capsule capsule_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("term")) throw std::invalid_argument("capsule JSON needs a \"term\" field");
  Env env;
  if (j.contains("env")) {
    for (const auto& [x, v] : j.at("env").items()) env = env.insert(x, parse(v.get<std::string>()));
  }
  Capsule c{parse(j.at("term").get<std::string>()), env};
  if (!well_formed(c)) throw IllFormedCapsule("capsule is not well formed: " + to_string(c));
  return c;
}

Json corpus_to_json(const std::vector<Capsule>& corpus) {
  Json out = Json::array();
  for (const auto& c : corpus) out.push_back(capsule_to_json(c));
  return out;
}

std::vector<Capsule> corpus_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("corpus JSON must be an array of capsules");
  std::vector<Capsule> out;
  for (const auto& c : j) out.push_back(capsule_from_json(c));
  return out;
}

Json index_to_json(const CoinIndex& i) {
  if (i <= std::numeric_limits<std::uint64_t>::max()) return i.convert_to<std::uint64_t>();
  return i.str();
}

Json outcome_to_json(const Outcome& o, bool small_step) {
  Json j;
  j["outcome"] = o.is_value() ? "value" : "diverged";
  if (o.is_value()) {
    j["value"] = o.canonical->key();
  } else {
    j["fuel_exhausted"] = o.fuel_exhausted;
  }
  if (small_step) {
    j["consumed"] = o.word;
  } else {
    Json idx = Json::array();
    for (const auto& i : o.consumed) idx.push_back(index_to_json(i));
    j["consumed"] = idx;
  }
  j["steps"] = o.steps;
  return j;
}

Json distribution_to_json(const Distribution& d, const Empirical* empirical) {
  Json out;
  Json outcomes = Json::object();
  for (const auto& [k, p] : d.outcomes) outcomes[k.key()] = p.to_string();
  out["outcomes"] = outcomes;
  out["unresolved"] = d.unresolved.to_string();
  if (empirical != nullptr) {
    Json counts = Json::object();
    for (const auto& [k, n] : empirical->counts) counts[k.key()] = n;
    out["empirical"] = Json{{"samples", empirical->samples}, {"diverged", empirical->diverged}, {"counts", counts}};
  }
  return out;
}

Json measure_report_to_json(const MeasureReport& r) {
  Json out = Json::object();
  for (const auto& e : r.entries) {
    out[e.x] = Json{{"sum", e.sum.to_string()}, {"expected", e.expected.to_string()}, {"pass", e.pass}};
  }
  return out;
}

TreeLabeling labeling_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("tree labeling JSON must be an object");
  std::map<Word, std::uint64_t> table;
  for (const auto& [w, label] : j.items()) {
    for (char c : w) {
      if (c != '0' && c != '1') throw std::invalid_argument("tree node must be a binary word: " + w);
    }
    table[w] = label.get<std::uint64_t>();
  }
  return TreeLabeling::table(std::move(table));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Capsule load_capsule(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    return capsule_from_json(Json::parse(text));
  }
  return parse_program(text);
}

std::vector<Capsule> load_corpus(const std::string& path) { return corpus_from_json(Json::parse(read_file(path))); }

}  // namespace stochalc
