#include "fanforge/serialize.hpp"

#include <fstream>
#include <sstream>

#include "fanforge/errors.hpp"

namespace fanforge {

using nlohmann::json;

json debski_json(const DebskiSet& d) {
  json jumps = json::array();
  for (const Jump& j : d.jumps()) {
    jumps.push_back({{"n", j.index},
                     {"d", to_string(j.location)},
                     {"r", to_string(j.low)},
                     {"s", to_string(j.high)}});
  }
  json plateaus = json::array();
  for (const Plateau& p : d.plateaus()) {
    plateaus.push_back({{"left", to_string(p.left)},
                        {"right", to_string(p.right)},
                        {"value", to_string(p.value)}});
  }
  return json{{"N", d.truncation()}, {"jumps", jumps}, {"plateaus", plateaus}};
}

json state_json(const ConstructionState& state) {
  json stages = json::array();
  for (const TilingStage& s : state.stages()) {
    json rects = json::array();
    for (const Rect& r : s.rects) {
      rects.push_back({{"sigma", r.address.to_string()},
                       {"a", to_string(r.bottom)},
                       {"b", to_string(r.top)}});
    }
    stages.push_back({{"n", s.n}, {"flat_lifts", s.flat_lifts}, {"rects", rects}});
  }
  json copies = json::array();
  for (const PlacedCopy& c : state.copies()) {
    const AffineMap& m = c.map();
    copies.push_back({{"id", c.id()},
                      {"stage", c.stage()},
                      {"index", c.index()},
                      {"offset", to_string(m.offset())},
                      {"scale", to_string(m.scale())},
                      {"bottom", to_string(m.bottom())},
                      {"height", to_string(m.height())}});
  }
  return json{{"schema", kStateSchema},
              {"parameters", {{"K", state.depth()}, {"N", state.truncation()}}},
              {"stages", stages},
              {"copies", copies}};
}

std::string state_dump(const ConstructionState& state) { return state_json(state).dump(1) + "\n"; }

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchema, "state schema error at " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + "/" + key, "missing");
  return *it;
}

long integer(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) schema_error(where + "/" + key, "expected an integer");
  return v.get<long>();
}

Rational rational(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) schema_error(where + "/" + key, "expected a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    schema_error(where + "/" + key, e.what());
  }
}

Address address(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) schema_error(where + "/" + key, "expected a bit string");
  try {
    return Address::parse(v.get<std::string>());
  } catch (const Error& e) {
    schema_error(where + "/" + key, e.what());
  }
}

const json& array(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) schema_error(where + "/" + key, "expected an array");
  return v;
}

}  // namespace

ConstructionState state_from_json(const json& doc) {
  const json& schema = field(doc, "schema", "");
  if (!schema.is_string() || schema.get<std::string>() != kStateSchema) {
    schema_error("/schema", std::string("expected \"") + kStateSchema + "\"");
  }
  const json& params = field(doc, "parameters", "");
  const long depth = integer(params, "K", "/parameters");
  const long truncation = integer(params, "N", "/parameters");
  if (truncation < 1 || truncation > 4096) schema_error("/parameters/N", "out of range");
  const json& stages = array(doc, "stages", "");
  if (static_cast<long>(stages.size()) != depth + 1) {
    schema_error("/stages", "expected K+1 = " + std::to_string(depth + 1) + " stages");
  }
  ConstructionState state(static_cast<int>(truncation));
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string where = "/stages/" + std::to_string(i);
    TilingStage stage;
    stage.n = static_cast<int>(integer(stages[i], "n", where));
    if (stage.n != static_cast<int>(i)) schema_error(where + "/n", "stages out of order");
    stage.flat_lifts = static_cast<int>(integer(stages[i], "flat_lifts", where));
    const json& rects = array(stages[i], "rects", where);
    for (std::size_t k = 0; k < rects.size(); ++k) {
      const std::string at = where + "/rects/" + std::to_string(k);
      Rect r{address(rects[k], "sigma", at), rational(rects[k], "a", at), rational(rects[k], "b", at)};
      if (!(r.bottom < r.top)) schema_error(at, "empty rect (a >= b)");
      stage.rects.push_back(std::move(r));
    }
    state.append(std::move(stage));
  }
  const json& copies = array(doc, "copies", "");
  if (copies.size() != state.copy_count()) {
    schema_error("/copies", "expected " + std::to_string(state.copy_count()) + " copies");
  }
  for (std::size_t i = 0; i < copies.size(); ++i) {
    const std::string at = "/copies/" + std::to_string(i);
    const PlacedCopy& c = state.copy(i);
    const AffineMap& m = c.map();
    const bool same = integer(copies[i], "id", at) == static_cast<long>(i) &&
                      integer(copies[i], "stage", at) == c.stage() &&
                      integer(copies[i], "index", at) == c.index() &&
                      rational(copies[i], "offset", at) == m.offset() &&
                      rational(copies[i], "scale", at) == m.scale() &&
                      rational(copies[i], "bottom", at) == m.bottom() &&
                      rational(copies[i], "height", at) == m.height();
    if (!same) schema_error(at, "copy parameters disagree with its rect");
  }
  return state;
}

ConstructionState state_parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("state is not valid JSON: ") + e.what());
  }
  return state_from_json(doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

ConstructionState load_state(const std::string& path) { return state_parse(read_file(path)); }

void save_state(const ConstructionState& state, const std::string& path) {
  write_file(path, state_dump(state));
}

}  // namespace fanforge
