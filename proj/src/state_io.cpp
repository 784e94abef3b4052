#include "deficitx/state_io.hpp"

#include <array>

#include <json.hpp>

namespace deficitx {

namespace {

using nlohmann::json;

bool has_all(const json& j, const std::array<const char*, 5>& keys) {
  for (const char* k : keys) {
    if (!j.contains(k)) return false;
  }
  return true;
}

bool has_all(const json& j, const std::array<const char*, 6>& keys) {
  for (const char* k : keys) {
    if (!j.contains(k)) return false;
  }
  return true;
}

double number_at(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw StateSchemaError(std::string("state key '") + key + "' is not a number");
  return v.get<double>();
}

}  // namespace

BlochX parse_state_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StateSchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw StateSchemaError("state document must be a JSON object");

  static constexpr std::array<const char*, 5> bloch_keys = {"x", "y", "t1", "t2", "t3"};
  static constexpr std::array<const char*, 6> matrix_keys = {"a", "b", "c", "d", "e", "f"};
  const bool bloch = has_all(j, bloch_keys);
  const bool matrix = has_all(j, matrix_keys);
  if (bloch == matrix) {
    throw StateSchemaError(
        "state document must carry exactly one form: {x,y,t1,t2,t3} or {a,b,c,d,e,f}");
  }
  const std::size_t expected = bloch ? bloch_keys.size() : matrix_keys.size();
  if (j.size() != expected) {
    throw StateSchemaError("state document carries unexpected keys");
  }
  if (bloch) {
    return {number_at(j, "x"), number_at(j, "y"), number_at(j, "t1"), number_at(j, "t2"),
            number_at(j, "t3")};
  }
  XMatrix m;
  m.a = number_at(j, "a");
  m.b = number_at(j, "b");
  m.c = number_at(j, "c");
  m.d = number_at(j, "d");
  m.e = number_at(j, "e");
  m.f = number_at(j, "f");
  return from_matrix(m);
}

std::string state_to_json(const BlochX& s) {
  const json j = {{"x", s.x}, {"y", s.y}, {"t1", s.t1}, {"t2", s.t2}, {"t3", s.t3}};
  return j.dump();
}

std::string state_to_json(const XMatrix& m) {
  const json j = {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}, {"e", m.e}, {"f", m.f}};
  return j.dump();
}

}  // namespace deficitx
