#ifndef DYNFAIR_SRC_JSON_UTIL_HPP
#define DYNFAIR_SRC_JSON_UTIL_HPP

#include <json.hpp>

#include "dynfair/errors.hpp"
#include "dynfair/instance.hpp"
#include "dynfair/interval_set.hpp"
#include "dynfair/rational.hpp"
#include "dynfair/valuation.hpp"

namespace dynfair::detail {

// Insertion-ordered JSON keeps every serialization byte-deterministic.
using Json = nlohmann::ordered_json;

inline Json rat_json(const Rat& q) { return format_rat(q); }

inline Rat rat_from(const Json& j) {
  if (!j.is_string()) throw SchemaError("expected rational string");
  return parse_rat(j.get<std::string>());
}

inline Json interval_set_json(const IntervalSet& s) {
  Json out = Json::array();
  for (const auto& p : s.pieces()) out.push_back({format_rat(p.lo), format_rat(p.hi)});
  return out;
}

inline IntervalSet interval_set_from(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected interval list");
  std::vector<IntervalSet::Piece> pieces;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw SchemaError("expected [lo, hi] pair");
    pieces.push_back({rat_from(e[0]), rat_from(e[1])});
  }
  try {
    return IntervalSet::from_pieces(std::move(pieces));
  } catch (const ParameterError& err) {
    throw SchemaError(err.what());
  }
}

inline const Json& field(const Json& j, const char* name);

inline Json valuation_json(const ValuationRecord& v) {
  Json out;
  switch (v.kind) {
    case ValuationRecord::Kind::pwc: {
      out["kind"] = "pwc";
      Json segs = Json::array();
      for (const auto& s : v.segments)
        segs.push_back({format_rat(s.lo), format_rat(s.hi), format_rat(s.density)});
      out["segments"] = std::move(segs);
      break;
    }
    case ValuationRecord::Kind::pwu:
      out["kind"] = "pwu";
      out["support"] = interval_set_json(v.support);
      break;
    case ValuationRecord::Kind::demand:
      out["kind"] = "demand";
      out["d"] = format_rat(v.d);
      break;
  }
  return out;
}

inline ValuationRecord valuation_from(const Json& j) {
  ValuationRecord out;
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "pwc") {
    out.kind = ValuationRecord::Kind::pwc;
    for (const auto& e : field(j, "segments")) {
      if (!e.is_array() || e.size() != 3) throw SchemaError("expected [lo, hi, w] triple");
      out.segments.push_back({rat_from(e[0]), rat_from(e[1]), rat_from(e[2])});
    }
  } else if (kind == "pwu") {
    out.kind = ValuationRecord::Kind::pwu;
    out.support = interval_set_from(field(j, "support"));
  } else if (kind == "demand") {
    out.kind = ValuationRecord::Kind::demand;
    out.d = rat_from(field(j, "d"));
  } else {
    throw SchemaError("unknown valuation kind: " + kind);
  }
  return out;
}

inline Json parse_line(const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError("malformed record: " + line);
  return j;
}

inline const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field: ") + name);
  return *it;
}

}  // namespace dynfair::detail

#endif  // DYNFAIR_SRC_JSON_UTIL_HPP
