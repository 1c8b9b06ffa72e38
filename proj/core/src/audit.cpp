#include "dynfair/audit.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "dynfair/enclosure.hpp"
#include "dynfair/errors.hpp"
#include "dynfair/interval_set.hpp"
#include "dynfair/ud.hpp"
#include "dynfair/valuation.hpp"
#include "json_util.hpp"

namespace dynfair {

std::string ExtRat::str() const { return unbounded ? "unbounded" : format_rat(value); }

double ExtRat::to_double() const {
  if (unbounded) return std::numeric_limits<double>::infinity();
  return value.convert_to<double>();
}

namespace {

// Tolerance folded into the transcendental bounds: the allocators use a fixed
// rational under-approximation of 1/ln3, so their factors can exceed the real
// bound by the approximation error, which is far below 1e-29.
const Rat& bound_slack() {
  static const Rat slack = Rat(pow(Int(10), 29) + 1, pow(Int(10), 29));
  return slack;
}

std::map<std::string, std::string> parse_params(const std::string& params) {
  std::map<std::string, std::string> out;
  std::istringstream in(params);
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw SchemaError("malformed trace params: " + token);
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

Rat param_rat(const std::map<std::string, std::string>& params, const char* name) {
  auto it = params.find(name);
  if (it == params.end()) throw SchemaError(std::string("missing trace param: ") + name);
  return parse_rat(it->second);
}

void max_into(std::optional<ExtRat>& acc, const ExtRat& v) {
  if (!acc || *acc < v) acc = v;
}

/// Replays a DFD trace while summarizing the envy matrix M[j][k] = v_j(A_k)
/// one row at a time: each row keeps its exact maximum entry (top1 over live
/// columns, self included) plus top2, an upper bound on every other live
/// entry. A column update can invalidate top1 only by shrinking it below
/// top2, which triggers a full row rescan against the current allocations;
/// everything else is O(1) per row. Memory stays linear in the player count.
class DfdAuditor {
 public:
  DfdAuditor(AuditReport& report, const Trace& trace)
      : report_(report), dfd1_(trace.algorithm == "dfd1") {}

  void on_arrival(const DfdArrival& a) {
    const long p = arrivals_ + 1;
    if (a.player != p) throw SchemaError("non-sequential arrival player id");
    PiecewiseConstantValuation v = a.valuation.as_pwc();

    long changed = 0;
    IntervalSet sources = unallocated_;
    std::vector<long> maybe_rescan;
    std::optional<IntervalSet> single_held;  // reusable v_j(held) cache key
    std::vector<Rat> held_delta;
    for (const auto& r : a.recalls) {
      if (r.removed.empty()) continue;
      ++changed;
      if (r.player < 1 || r.player > arrivals_ || !live_[r.player - 1]) {
        recall_violation(a.step, "recall of an unknown or departed player");
        continue;
      }
      IntervalSet held = set_intersect(r.removed, alloc_[r.player - 1]);
      if (!(held == r.removed))
        recall_violation(a.step, "recalled resource not held by the player");
      if (changed == 1) {
        held_delta.assign(alloc_.size(), Rat(0));
      } else {
        single_held.reset();
      }
      for (long j = 0; j < static_cast<long>(alloc_.size()); ++j) {
        if (!live_[j]) continue;
        Rat delta = vals_[j].eval(held);
        if (changed == 1) held_delta[j] = delta;
        if (delta == 0) continue;
        if (j + 1 == r.player) diag_[j] -= delta;
        if (top1_col_[j] == r.player) {
          top1_[j] -= delta;
          maybe_rescan.push_back(j);
        }
      }
      alloc_[r.player - 1] = set_subtract(alloc_[r.player - 1], held);
      sources = set_union(sources, held);
      if (changed == 1) single_held = std::move(held);
    }
    if (changed > 1) recall_violation(a.step, "more than one prior player shrank");

    if (!a.granted.is_subset_of(sources)) {
      report_.conservation_ok = false;
      report_.structural_violations.push_back(
          {a.step, "granted resource not drawn from recalls or the unallocated pool"});
    }
    unallocated_ = set_subtract(sources, a.granted);
    if (!set_intersect(a.granted, v.zero_support()).empty()) {
      report_.non_wasteful_ok = false;
      report_.structural_violations.push_back(
          {a.step, "granted resource includes zero-value regions"});
    }

    alloc_.push_back(a.granted);
    vals_.push_back(std::move(v));
    live_.push_back(true);
    diag_.emplace_back(0);
    top1_.emplace_back(-1);
    top2_.emplace_back(-1);
    top1_col_.push_back(0);
    ++live_count_;
    ++arrivals_;
    rescan(p - 1);
    // The interval algorithms grant exactly the recalled set, so the recall
    // deltas double as the new column's values.
    const bool reuse = single_held && a.granted == *single_held;
    for (long j = 0; j + 1 < p; ++j) {
      if (!live_[j]) continue;
      Rat e = reuse ? held_delta[j] : vals_[j].eval(alloc_[p - 1]);
      if (e > top1_[j]) {
        // top1 may have just been decremented below top2; keep the larger as
        // the surviving upper bound on the other columns.
        if (top1_[j] > top2_[j]) top2_[j] = std::move(top1_[j]);
        top1_[j] = std::move(e);
        top1_col_[j] = p;
      } else if (e > top2_[j]) {
        top2_[j] = std::move(e);
      }
    }
    for (long j : maybe_rescan) {
      if (live_[j] && top1_[j] < top2_[j]) rescan(j);
    }

    record_metrics(a.step, true);
  }

  void on_departure(const TraceDeparture& d) {
    if (d.player < 1 || d.player > arrivals_ || !live_[d.player - 1])
      throw SchemaError("departure of an unknown or departed player");
    unallocated_ = set_union(unallocated_, alloc_[d.player - 1]);
    alloc_[d.player - 1] = IntervalSet();
    live_[d.player - 1] = false;
    --live_count_;
    for (long j = 0; j < static_cast<long>(alloc_.size()); ++j) {
      if (live_[j] && top1_col_[j] == d.player) rescan(j);
    }
    record_metrics(d.step, false);
  }

  void finish() {
    // All set operations are exact, so when every subset check passed the
    // allocations and the pool partition [0,1); the measure identity is a
    // final guard against drift.
    Rat total = unallocated_.measure();
    for (long j = 0; j < static_cast<long>(alloc_.size()); ++j) {
      if (live_[j]) total += alloc_[j].measure();
    }
    if (total != 1) {
      report_.conservation_ok = false;
      report_.structural_violations.push_back(
          {arrivals_, "allocations and pool do not measure up to 1"});
    }
  }

 private:
  void recall_violation(long step, const char* what) {
    report_.recallable_ok = false;
    report_.structural_violations.push_back({step, what});
  }

  void rescan(long j) {
    top1_[j] = -1;
    top2_[j] = -1;
    top1_col_[j] = 0;
    for (long k = 0; k < static_cast<long>(alloc_.size()); ++k) {
      if (!live_[k]) continue;
      Rat e = vals_[j].eval(alloc_[k]);
      if (k == j) diag_[j] = e;
      if (e > top1_[j]) {
        top2_[j] = std::move(top1_[j]);
        top1_[j] = std::move(e);
        top1_col_[j] = k + 1;
      } else if (e > top2_[j]) {
        top2_[j] = std::move(e);
      }
    }
  }

  void record_metrics(long step, bool arrival) {
    StepMetrics m;
    m.step = step;
    m.arrivals = arrivals_;
    m.live = live_count_;

    bool any = false;
    bool share_zero = false;
    Rat min_diag;
    bool xi_unbounded = false;
    Rat best_num(1), best_den(1);  // xi >= 1: the self pair always exists
    for (long j = 0; j < static_cast<long>(alloc_.size()); ++j) {
      if (!live_[j]) continue;
      if (diag_[j] == 0) {
        share_zero = true;
        if (top1_[j] > 0) xi_unbounded = true;
        any = true;
        continue;
      }
      if (!any || diag_[j] < min_diag) min_diag = diag_[j];
      any = true;
      if (!xi_unbounded && top1_[j] * best_den > best_num * diag_[j]) {
        best_num = top1_[j];
        best_den = diag_[j];
      }
    }
    if (!any) {
      m.sigma_live = ExtRat::of(Rat(1));
      m.sigma_arrivals = ExtRat::of(Rat(1));
      m.xi = ExtRat::of(Rat(1));
    } else if (share_zero) {
      m.sigma_live = ExtRat::inf();
      m.sigma_arrivals = ExtRat::inf();
      m.xi = xi_unbounded ? ExtRat::inf() : ExtRat::of(best_num / best_den);
    } else {
      m.sigma_live = ExtRat::of(Rat(1) / (live_count_ * min_diag));
      m.sigma_arrivals = ExtRat::of(Rat(1) / (arrivals_ * min_diag));
      m.xi = ExtRat::of(best_num / best_den);
    }

    if (arrival) {
      const long i = arrivals_;
      if (dfd1_) {
        m.bound = rat_to_decimal(dfd1_bound_enclosure(i).hi);
        if (m.sigma_arrivals->unbounded) {
          m.pass = false;
          report_.bound_violations.push_back(
              {step, "sigma <= 2i(3+ln i)", "unbounded", m.bound});
        } else {
          switch (leq_dfd1_bound(m.sigma_arrivals->value, i)) {
            case Cmp::kTrue:
              break;
            case Cmp::kFalse:
              m.pass = false;
              report_.bound_violations.push_back({step, "sigma <= 2i(3+ln i)",
                                                  m.sigma_arrivals->str(), m.bound});
              break;
            case Cmp::kInconclusive:
              m.pass = false;
              report_.inconclusive.push_back({step, "sigma <= 2i(3+ln i)"});
              break;
          }
        }
      } else {
        m.bound = std::to_string(i);
        if (m.xi->unbounded || m.xi->value > i) {
          m.pass = false;
          report_.bound_violations.push_back({step, "xi <= i", m.xi->str(), m.bound});
        }
      }
    }

    max_into(report_.sigma_live_max, *m.sigma_live);
    max_into(report_.sigma_arrivals_max, *m.sigma_arrivals);
    max_into(report_.xi_max, *m.xi);
    report_.per_step.push_back(std::move(m));
  }

  AuditReport& report_;
  bool dfd1_;
  std::vector<PiecewiseConstantValuation> vals_;
  std::vector<IntervalSet> alloc_;
  std::vector<bool> live_;
  IntervalSet unallocated_ = IntervalSet::unit();
  long live_count_ = 0;
  long arrivals_ = 0;
  std::vector<Rat> diag_;       // v_j(A_j)
  std::vector<Rat> top1_;       // exact max over live columns
  std::vector<Rat> top2_;       // upper bound on every other live entry
  std::vector<long> top1_col_;  // 1-based
};

class UdAuditor {
 public:
  UdAuditor(AuditReport& report, const Trace& trace)
      : report_(report), uds_(trace.algorithm == "ud_s") {
    if (uds_) {
      auto params = parse_params(trace.params);
      eta_param_ = param_rat(params, "eta");
      Rat c = param_rat(params, "c");
      if (eta_param_ <= 0 || c < 1) throw SchemaError("invalid ud_s trace params");
      scale_ = Rat(2) * c * eta_param_ * bound_slack();
      bound_name_ = "eta <= 2 c eta ln3";
    } else {
      if (trace.n_max < 1) throw SchemaError("ud trace requires n_max >= 1");
      scale_ = Rat(4) * (1 + ceil_log2(trace.n_max)) * bound_slack();
      bound_name_ = "eta <= 4 (1 + ceil(log2 n)) ln3";
    }
    bound_str_ = rat_to_decimal(scale_ * ln3_enclosure().hi);
  }

  void on_arrival(const UdArrival& a) {
    if (a.player != arrivals_ + 1) throw SchemaError("non-sequential arrival player id");
    if (a.demand <= 0 || a.demand > 1) throw SchemaError("demand outside (0,1]");
    long changed = 0;
    for (const auto& r : a.recalls) {
      if (r.player < 1 || r.player > arrivals_ || !live_[r.player - 1]) {
        recall_violation(a.step, "recall of an unknown or departed player");
        continue;
      }
      Rat& size = sizes_[r.player - 1];
      if (r.new_size == size) continue;
      ++changed;
      if (r.new_size > size) recall_violation(a.step, "a prior allocation grew");
      if (r.new_size < 0) recall_violation(a.step, "negative allocation size");
      total_size_ += r.new_size - size;
      size = r.new_size;
      note_value(r.player - 1);
    }
    if (changed > 1) recall_violation(a.step, "more than one prior player shrank");
    if (a.size < 0) recall_violation(a.step, "negative allocation size");

    sizes_.push_back(a.size);
    demands_.push_back(a.demand);
    live_.push_back(true);
    total_demand_ += a.demand;
    total_size_ += a.size;
    ++arrivals_;
    ++live_count_;
    note_value(arrivals_ - 1);

    record_metrics(a.step, true);
  }

  void on_departure(const TraceDeparture& d) {
    if (d.player < 1 || d.player > arrivals_ || !live_[d.player - 1])
      throw SchemaError("departure of an unknown or departed player");
    total_size_ -= sizes_[d.player - 1];
    live_[d.player - 1] = false;
    --live_count_;
    if (min_arg_ == d.player - 1) rescan_min();
    record_metrics(d.step, false);
  }

  void finish() {}

 private:
  void recall_violation(long step, const char* what) {
    report_.recallable_ok = false;
    report_.structural_violations.push_back({step, what});
  }

  Rat value_of(long j) const {
    Rat v = sizes_[j] / demands_[j];
    return v > 1 ? Rat(1) : v;
  }

  // Sizes only shrink while a player is live, so the minimum value is
  // monotone between departures.
  void note_value(long j) {
    Rat v = value_of(j);
    if (min_arg_ < 0 || v < min_val_) {
      min_val_ = std::move(v);
      min_arg_ = j;
    }
  }

  void rescan_min() {
    min_arg_ = -1;
    for (long j = 0; j < static_cast<long>(sizes_.size()); ++j) {
      if (live_[j]) note_value(j);
    }
  }

  void record_metrics(long step, bool arrival) {
    StepMetrics m;
    m.step = step;
    m.arrivals = arrivals_;
    m.live = live_count_;
    Rat denom = total_demand_ > 1 ? total_demand_ : Rat(1);
    if (min_arg_ < 0) {
      m.eta = ExtRat::of(Rat(1));
    } else if (min_val_ <= 0) {
      m.eta = ExtRat::inf();
    } else {
      m.eta = ExtRat::of(Rat(1) / (min_val_ * denom));
    }

    if (arrival) {
      m.bound = bound_str_;
      if (uds_) {
        Rat budget = Rat(1) / eta_param_;
        if (total_size_ > budget) {
          m.pass = false;
          report_.bound_violations.push_back(
              {step, "budget <= 1/eta", format_rat(total_size_), format_rat(budget)});
        }
      } else if (total_size_ > 1) {
        m.pass = false;
        report_.bound_violations.push_back(
            {step, "total size <= 1", format_rat(total_size_), "1"});
      }
      if (m.eta->unbounded) {
        m.pass = false;
        report_.bound_violations.push_back({step, bound_name_, "unbounded", bound_str_});
      } else {
        switch (leq_scaled_ln3(m.eta->value, scale_)) {
          case Cmp::kTrue:
            break;
          case Cmp::kFalse:
            m.pass = false;
            report_.bound_violations.push_back(
                {step, bound_name_, m.eta->str(), bound_str_});
            break;
          case Cmp::kInconclusive:
            m.pass = false;
            report_.inconclusive.push_back({step, bound_name_});
            break;
        }
      }
    }

    max_into(report_.eta_max, *m.eta);
    report_.per_step.push_back(std::move(m));
  }

  AuditReport& report_;
  bool uds_;
  Rat eta_param_{1};
  Rat scale_;
  std::string bound_name_;
  std::string bound_str_;
  std::vector<Rat> sizes_;
  std::vector<Rat> demands_;
  std::vector<bool> live_;
  Rat total_demand_{0};
  Rat total_size_{0};
  long arrivals_ = 0;
  long live_count_ = 0;
  Rat min_val_{0};
  long min_arg_ = -1;
};

void require_known_algorithm(const Trace& trace) {
  const std::string& a = trace.algorithm;
  if (a != "dfd1" && a != "dfd2" && a != "ud_s" && a != "ud")
    throw SchemaError("unknown algorithm tag: " + a);
}

}  // namespace

AuditReport audit_trace(const Trace& trace) {
  require_known_algorithm(trace);
  AuditReport report;
  report.algorithm = trace.algorithm;
  report.n_max = trace.n_max;
  if (trace.is_ud()) {
    UdAuditor auditor(report, trace);
    for (const auto& event : trace.events) {
      if (const auto* a = std::get_if<UdArrival>(&event)) {
        auditor.on_arrival(*a);
      } else if (const auto* d = std::get_if<TraceDeparture>(&event)) {
        auditor.on_departure(*d);
      } else {
        throw SchemaError("interval arrival in a uniform-demand trace");
      }
    }
    auditor.finish();
  } else {
    DfdAuditor auditor(report, trace);
    for (const auto& event : trace.events) {
      if (const auto* a = std::get_if<DfdArrival>(&event)) {
        auditor.on_arrival(*a);
      } else if (const auto* d = std::get_if<TraceDeparture>(&event)) {
        auditor.on_departure(*d);
      } else {
        throw SchemaError("uniform-demand arrival in an interval trace");
      }
    }
    auditor.finish();
  }
  return report;
}

CheckResult check_recallable(const Trace& trace, long tau) {
  require_known_algorithm(trace);
  if (tau < 1) throw ParameterError("tau must be >= 1");
  std::vector<IntervalSet> alloc;
  std::vector<Rat> sizes;
  std::vector<bool> live;
  for (const auto& event : trace.events) {
    if (const auto* a = std::get_if<DfdArrival>(&event)) {
      long changed = 0;
      for (const auto& r : a->recalls) {
        if (r.removed.empty()) continue;
        ++changed;
        if (r.player < 1 || r.player > static_cast<long>(alloc.size()) ||
            !live[r.player - 1])
          return {false, a->step, "recall of an unknown or departed player"};
        if (!r.removed.is_subset_of(alloc[r.player - 1]))
          return {false, a->step, "a prior allocation did not shrink"};
        alloc[r.player - 1] = set_subtract(alloc[r.player - 1], r.removed);
      }
      if (changed > tau) return {false, a->step, "too many prior players changed"};
      alloc.push_back(a->granted);
      live.push_back(true);
    } else if (const auto* u = std::get_if<UdArrival>(&event)) {
      long changed = 0;
      for (const auto& r : u->recalls) {
        if (r.player < 1 || r.player > static_cast<long>(sizes.size()) ||
            !live[r.player - 1])
          return {false, u->step, "recall of an unknown or departed player"};
        if (r.new_size == sizes[r.player - 1]) continue;
        ++changed;
        if (r.new_size > sizes[r.player - 1])
          return {false, u->step, "a prior allocation grew"};
        sizes[r.player - 1] = r.new_size;
      }
      if (changed > tau) return {false, u->step, "too many prior players changed"};
      sizes.push_back(u->size);
      live.push_back(true);
    } else {
      const auto& d = std::get<TraceDeparture>(event);
      if (d.player < 1 || d.player > static_cast<long>(live.size()) ||
          !live[d.player - 1])
        return {false, d.step, "departure of an unknown or departed player"};
      live[d.player - 1] = false;
    }
  }
  return {};
}

CheckResult check_non_wasteful(const Trace& trace) {
  require_known_algorithm(trace);
  if (trace.is_ud()) return {};  // no location, nothing to waste
  for (const auto& event : trace.events) {
    const auto* a = std::get_if<DfdArrival>(&event);
    if (!a) continue;
    IntervalSet zero = a->valuation.as_pwc().zero_support();
    if (!set_intersect(a->granted, zero).empty())
      return {false, a->step, "granted resource includes zero-value regions"};
  }
  return {};
}

namespace {

const StepMetrics& step_metrics(const AuditReport& report, long step) {
  for (const StepMetrics& m : report.per_step) {
    if (m.step == step) return m;
  }
  throw ParameterError("no such step in the trace");
}

}  // namespace

ExtRat proportionality_factor(const Trace& trace, long step) {
  AuditReport report = audit_trace(trace);
  const StepMetrics& m = step_metrics(report, step);
  if (!m.sigma_arrivals) throw CompatibilityError("not an interval-division trace");
  return *m.sigma_arrivals;
}

ExtRat envy_factor(const Trace& trace, long step) {
  AuditReport report = audit_trace(trace);
  const StepMetrics& m = step_metrics(report, step);
  if (!m.xi) throw CompatibilityError("not an interval-division trace");
  return *m.xi;
}

ExtRat ud_fairness_factor(const Trace& trace, long step) {
  AuditReport report = audit_trace(trace);
  const StepMetrics& m = step_metrics(report, step);
  if (!m.eta) throw CompatibilityError("not a uniform-demand trace");
  return *m.eta;
}

std::vector<BoundViolation> check_bounds(const Trace& trace) {
  return audit_trace(trace).bound_violations;
}

namespace {

using detail::Json;

void put_ext(Json& j, const char* name, const std::optional<ExtRat>& v) {
  if (v) j[name] = v->str();
}

}  // namespace

void write_report(std::ostream& out, const AuditReport& report) {
  Json header;
  header["type"] = "report";
  header["algorithm"] = report.algorithm;
  header["n_max"] = report.n_max;
  header["pass"] = report.pass();
  header["recallable_ok"] = report.recallable_ok;
  header["conservation_ok"] = report.conservation_ok;
  header["non_wasteful_ok"] = report.non_wasteful_ok;
  put_ext(header, "sigma_live_max", report.sigma_live_max);
  put_ext(header, "sigma_arrivals_max", report.sigma_arrivals_max);
  put_ext(header, "xi_max", report.xi_max);
  put_ext(header, "eta_max", report.eta_max);
  Json structural = Json::array();
  for (const auto& v : report.structural_violations)
    structural.push_back({{"step", v.step}, {"what", v.what}});
  header["structural_violations"] = std::move(structural);
  Json bounds = Json::array();
  for (const auto& v : report.bound_violations)
    bounds.push_back(
        {{"step", v.step}, {"bound", v.bound}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  header["bound_violations"] = std::move(bounds);
  Json inconclusive = Json::array();
  for (const auto& v : report.inconclusive)
    inconclusive.push_back({{"step", v.step}, {"what", v.what}});
  header["inconclusive"] = std::move(inconclusive);
  out << header.dump() << "\n";
  for (const StepMetrics& m : report.per_step) {
    Json rec;
    rec["type"] = "step";
    rec["step"] = m.step;
    rec["arrivals"] = m.arrivals;
    rec["live"] = m.live;
    put_ext(rec, "sigma_live", m.sigma_live);
    put_ext(rec, "sigma_arrivals", m.sigma_arrivals);
    put_ext(rec, "xi", m.xi);
    put_ext(rec, "eta", m.eta);
    if (!m.bound.empty()) rec["bound"] = m.bound;
    rec["pass"] = m.pass;
    out << rec.dump() << "\n";
  }
}

std::string report_to_json(const AuditReport& report) {
  std::ostringstream out;
  write_report(out, report);
  return out.str();
}

namespace {

std::string csv_ext(const std::optional<ExtRat>& v) {
  if (!v) return "";
  if (v->unbounded) return "unbounded";
  return rat_to_decimal(v->value);
}

}  // namespace

std::string report_to_csv(const AuditReport& report) {
  std::ostringstream out;
  out << "step,sigma,xi,eta,bound,pass\n";
  for (const StepMetrics& m : report.per_step) {
    out << m.step << "," << csv_ext(m.sigma_arrivals) << "," << csv_ext(m.xi) << ","
        << csv_ext(m.eta) << "," << m.bound << "," << (m.pass ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace dynfair
