#include "dynfair/instance.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dynfair/errors.hpp"
#include "json_util.hpp"

namespace dynfair {

using detail::Json;

PiecewiseConstantValuation ValuationRecord::as_pwc() const {
  switch (kind) {
    case Kind::pwc:
      return PiecewiseConstantValuation(segments).normalized();
    case Kind::pwu:
      return PiecewiseConstantValuation::from_support(support);
    case Kind::demand:
      throw CompatibilityError("demand valuation has no piecewise-constant form");
  }
  throw CompatibilityError("unknown valuation kind");
}

long Instance::arrival_count() const {
  long n = 0;
  for (const auto& e : events) {
    if (std::holds_alternative<ArrivalEvent>(e)) ++n;
  }
  return n;
}

using detail::valuation_from;
using detail::valuation_json;

void write_instance(std::ostream& out, const Instance& instance) {
  Json header;
  header["type"] = "instance";
  header["n_max"] = instance.n_max;
  header["family"] = instance.family;
  header["seed"] = instance.seed;
  header["params"] = instance.params;
  out << header.dump() << "\n";
  for (const auto& event : instance.events) {
    Json rec;
    if (const auto* a = std::get_if<ArrivalEvent>(&event)) {
      rec["type"] = "arrival";
      rec["valuation"] = valuation_json(a->valuation);
    } else {
      rec["type"] = "departure";
      rec["player"] = std::get<DepartureEvent>(event).player;
    }
    out << rec.dump() << "\n";
  }
}

Instance read_instance(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty instance file");
  Json header = detail::parse_line(line);
  if (detail::field(header, "type") != "instance")
    throw SchemaError("not an instance file");
  Instance out;
  out.n_max = detail::field(header, "n_max").get<long>();
  out.family = detail::field(header, "family").get<std::string>();
  out.seed = detail::field(header, "seed").get<std::uint64_t>();
  out.params = header.value("params", std::string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json rec = detail::parse_line(line);
    std::string type = detail::field(rec, "type").get<std::string>();
    if (type == "arrival") {
      out.events.push_back(ArrivalEvent{valuation_from(detail::field(rec, "valuation"))});
    } else if (type == "departure") {
      out.events.push_back(DepartureEvent{detail::field(rec, "player").get<long>()});
    } else {
      throw SchemaError("unknown instance event: " + type);
    }
  }
  if (out.arrival_count() > out.n_max) throw SchemaError("more arrivals than n_max");
  return out;
}

std::string instance_to_string(const Instance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

Instance instance_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

}  // namespace dynfair
