#include "dynfair/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dynfair/errors.hpp"
#include "json_util.hpp"

namespace dynfair {

using detail::Json;

void write_trace(std::ostream& out, const Trace& trace) {
  Json header;
  header["type"] = "trace";
  header["algorithm"] = trace.algorithm;
  header["n_max"] = trace.n_max;
  header["params"] = trace.params;
  out << header.dump() << "\n";
  for (const auto& event : trace.events) {
    Json rec;
    if (const auto* a = std::get_if<DfdArrival>(&event)) {
      rec["type"] = "arrival";
      rec["step"] = a->step;
      rec["player"] = a->player;
      rec["valuation"] = detail::valuation_json(a->valuation);
      rec["granted"] = detail::interval_set_json(a->granted);
      Json recalls = Json::array();
      for (const auto& r : a->recalls) {
        recalls.push_back(
            {{"player", r.player}, {"removed", detail::interval_set_json(r.removed)}});
      }
      rec["recalls"] = std::move(recalls);
    } else if (const auto* u = std::get_if<UdArrival>(&event)) {
      rec["type"] = "arrival";
      rec["step"] = u->step;
      rec["player"] = u->player;
      rec["d"] = format_rat(u->demand);
      rec["size"] = format_rat(u->size);
      Json recalls = Json::array();
      for (const auto& r : u->recalls) {
        recalls.push_back({{"player", r.player}, {"new_size", format_rat(r.new_size)}});
      }
      rec["recalls"] = std::move(recalls);
    } else {
      const auto& d = std::get<TraceDeparture>(event);
      rec["type"] = "departure";
      rec["step"] = d.step;
      rec["player"] = d.player;
    }
    out << rec.dump() << "\n";
  }
}

Trace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty trace file");
  Json header = detail::parse_line(line);
  if (detail::field(header, "type") != "trace") throw SchemaError("not a trace file");
  Trace out;
  out.algorithm = detail::field(header, "algorithm").get<std::string>();
  out.n_max = detail::field(header, "n_max").get<long>();
  out.params = header.value("params", std::string());
  const bool ud = out.is_ud();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json rec = detail::parse_line(line);
    std::string type = detail::field(rec, "type").get<std::string>();
    if (type == "arrival") {
      if (ud) {
        UdArrival a;
        a.step = detail::field(rec, "step").get<long>();
        a.player = detail::field(rec, "player").get<long>();
        a.demand = detail::rat_from(detail::field(rec, "d"));
        a.size = detail::rat_from(detail::field(rec, "size"));
        for (const auto& r : detail::field(rec, "recalls")) {
          a.recalls.push_back({detail::field(r, "player").get<long>(),
                               detail::rat_from(detail::field(r, "new_size"))});
        }
        out.events.push_back(std::move(a));
      } else {
        DfdArrival a;
        a.step = detail::field(rec, "step").get<long>();
        a.player = detail::field(rec, "player").get<long>();
        a.valuation = detail::valuation_from(detail::field(rec, "valuation"));
        a.granted = detail::interval_set_from(detail::field(rec, "granted"));
        for (const auto& r : detail::field(rec, "recalls")) {
          a.recalls.push_back({detail::field(r, "player").get<long>(),
                               detail::interval_set_from(detail::field(r, "removed"))});
        }
        out.events.push_back(std::move(a));
      }
    } else if (type == "departure") {
      out.events.push_back(TraceDeparture{detail::field(rec, "step").get<long>(),
                                          detail::field(rec, "player").get<long>()});
    } else {
      throw SchemaError("unknown trace event: " + type);
    }
  }
  return out;
}

std::string trace_to_string(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

Trace trace_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_trace(in);
}

}  // namespace dynfair
