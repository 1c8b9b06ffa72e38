#include "dynfair/valuation.hpp"

#include <algorithm>

#include "dynfair/errors.hpp"

namespace dynfair {

PiecewiseConstantValuation::PiecewiseConstantValuation(std::vector<Segment> segments) {
  if (segments.empty()) throw ParameterError("valuation needs at least one segment");
  if (segments.front().lo != 0 || segments.back().hi != 1)
    throw ParameterError("valuation segments must cover [0,1)");
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& seg = segments[k];
    if (seg.lo >= seg.hi) throw ParameterError("empty valuation segment");
    if (seg.density < 0) throw ParameterError("negative density");
    if (k > 0 && segments[k - 1].hi != seg.lo)
      throw ParameterError("valuation segments must be contiguous");
  }
  // Coalesce equal-density neighbours so equal valuations compare equal.
  for (Segment& seg : segments) {
    if (!segments_.empty() && segments_.back().density == seg.density) {
      segments_.back().hi = std::move(seg.hi);
    } else {
      segments_.push_back(std::move(seg));
    }
  }
}

PiecewiseConstantValuation PiecewiseConstantValuation::uniform() {
  return PiecewiseConstantValuation({Segment{Rat(0), Rat(1), Rat(1)}});
}

PiecewiseConstantValuation PiecewiseConstantValuation::from_support(const IntervalSet& support) {
  Rat mass = support.measure();
  if (mass == 0) throw ZeroValueError("piecewise-uniform valuation with empty support");
  Rat density = Rat(1) / mass;
  std::vector<Segment> segs;
  Rat cur(0);
  for (const auto& p : support.pieces()) {
    if (p.lo > cur) segs.push_back({cur, p.lo, Rat(0)});
    segs.push_back({p.lo, p.hi, density});
    cur = p.hi;
  }
  if (cur < 1) segs.push_back({std::move(cur), Rat(1), Rat(0)});
  return PiecewiseConstantValuation(std::move(segs));
}

Rat PiecewiseConstantValuation::total_mass() const {
  Rat mass(0);
  for (const Segment& seg : segments_) mass += seg.density * (seg.hi - seg.lo);
  return mass;
}

PiecewiseConstantValuation PiecewiseConstantValuation::normalized() const {
  Rat mass = total_mass();
  if (mass == 0) throw ZeroValueError("valuation with zero total mass");
  if (mass == 1) return *this;
  std::vector<Segment> segs = segments_;
  for (Segment& seg : segs) seg.density /= mass;
  return PiecewiseConstantValuation(std::move(segs));
}

Rat PiecewiseConstantValuation::eval(const IntervalSet& s) const {
  Rat total(0);
  std::size_t i = 0;
  for (const auto& p : s.pieces()) {
    while (i < segments_.size() && segments_[i].hi <= p.lo) ++i;
    for (std::size_t k = i; k < segments_.size() && segments_[k].lo < p.hi; ++k) {
      if (segments_[k].density == 0) continue;
      Rat lo = std::max(segments_[k].lo, p.lo);
      Rat hi = std::min(segments_[k].hi, p.hi);
      total += segments_[k].density * (hi - lo);
    }
  }
  return total;
}

IntervalSet PiecewiseConstantValuation::zero_support() const {
  std::vector<IntervalSet::Piece> pieces;
  for (const Segment& seg : segments_) {
    if (seg.density == 0) pieces.push_back({seg.lo, seg.hi});
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

Rat eval_demand(const DemandValuation& v, const Rat& size) {
  if (v.d <= 0 || v.d > 1) throw ParameterError("demand must be in (0,1]");
  if (size < 0) throw ParameterError("negative size");
  Rat value = size / v.d;
  return value > 1 ? Rat(1) : value;
}

namespace {

struct Span {
  Rat lo;
  Rat hi;
  Rat w;  // owner density
  Rat u;  // probe density (0 when no probe)
};

std::vector<Span> refine(const PiecewiseConstantValuation& v, const IntervalSet& s,
                         const PiecewiseConstantValuation* probe) {
  std::vector<Span> spans;
  const auto& vs = v.segments();
  const auto* ps = probe ? &probe->segments() : nullptr;
  std::size_t iv = 0, ip = 0;
  for (const auto& piece : s.pieces()) {
    Rat cur = piece.lo;
    while (cur < piece.hi) {
      while (iv < vs.size() && vs[iv].hi <= cur) ++iv;
      Rat end = std::min(piece.hi, vs[iv].hi);
      Rat u(0);
      if (ps) {
        while (ip < ps->size() && (*ps)[ip].hi <= cur) ++ip;
        end = std::min(end, (*ps)[ip].hi);
        u = (*ps)[ip].density;
      }
      spans.push_back({cur, end, vs[iv].density, std::move(u)});
      cur = end;
    }
  }
  return spans;
}

Rat spans_value(const std::vector<Span>& spans) {
  Rat total(0);
  for (const Span& sp : spans) {
    if (sp.w != 0) total += sp.w * (sp.hi - sp.lo);
  }
  return total;
}

}  // namespace

std::vector<IntervalSet> equal_partition(const PiecewiseConstantValuation& v,
                                         const IntervalSet& s, long m) {
  if (m <= 0) throw ParameterError("equal_partition requires m >= 1");
  std::vector<Span> spans = refine(v, s, nullptr);
  Rat total = spans_value(spans);
  if (total == 0) throw ZeroValueError("equal_partition of a zero-value set");
  Rat quantum = total / m;

  std::vector<IntervalSet> out;
  out.reserve(m);
  std::vector<IntervalSet::Piece> cur;
  long idx = 0;
  Rat acc(0);
  bool pending = false;  // current piece exactly full; absorbing zero spans
  auto close = [&] {
    out.push_back(IntervalSet::from_pieces(std::move(cur)));
    cur.clear();
    ++idx;
    acc = 0;
  };

  for (const Span& sp : spans) {
    if (sp.w == 0) {
      cur.push_back({sp.lo, sp.hi});
      continue;
    }
    if (pending) {
      close();
      pending = false;
    }
    Rat pos = sp.lo;
    while (idx < m - 1) {
      Rat cap = sp.w * (sp.hi - pos);
      Rat need = quantum - acc;
      if (cap < need) break;
      Rat x = pos + need / sp.w;
      if (x > pos) cur.push_back({pos, x});
      pos = x;
      if (pos == sp.hi) {
        pending = true;
        acc = quantum;
        break;
      }
      close();
    }
    if (!pending && pos < sp.hi) {
      acc += sp.w * (sp.hi - pos);
      cur.push_back({std::move(pos), sp.hi});
    }
  }
  if (pending && idx < m - 1)
    throw InfeasibleError("equal_partition: value exhausted before the last cut");
  out.push_back(IntervalSet::from_pieces(std::move(cur)));
  ++idx;
  if (idx != m) throw InfeasibleError("equal_partition produced the wrong piece count");
  return out;
}

std::vector<PieceGroup> piece_value_groups(const PiecewiseConstantValuation& v,
                                           const IntervalSet& s, long m,
                                           const PiecewiseConstantValuation& probe) {
  if (m <= 0) throw ParameterError("piece_value_groups requires m >= 1");
  std::vector<Span> spans = refine(v, s, &probe);
  Rat total = spans_value(spans);
  if (total == 0) throw ZeroValueError("piece_value_groups of a zero-value set");
  Rat quantum = total / m;

  std::vector<PieceGroup> out;
  long idx = 0;
  Rat acc_w(0), acc_u(0);
  bool pending = false;
  auto emit = [&](const Rat& value, long count) {
    if (!out.empty() && out.back().value == value) {
      out.back().count += count;
    } else {
      out.push_back({value, count, idx});
    }
    idx += count;
  };

  for (const Span& sp : spans) {
    Rat len = sp.hi - sp.lo;
    if (sp.w == 0) {
      if (sp.u != 0) acc_u += sp.u * len;
      continue;
    }
    if (pending) {
      emit(acc_u, 1);
      acc_w = 0;
      acc_u = 0;
      pending = false;
    }
    Rat pos = sp.lo;
    while (idx < m - 1) {
      Rat cap = sp.w * (sp.hi - pos);
      Rat need = quantum - acc_w;
      if (cap < need) break;
      Rat xlen = need / sp.w;
      acc_u += sp.u * xlen;
      pos += xlen;
      if (pos == sp.hi) {
        pending = true;
        acc_w = quantum;
        break;
      }
      emit(acc_u, 1);
      acc_w = 0;
      acc_u = 0;
      // Whole q-chunks inside the remainder of this constant-density span.
      Rat chunks = sp.w * (sp.hi - pos) / quantum;
      Int full_i = floor_rat(chunks);
      long full = full_i > Int(m - 1 - idx) ? m - 1 - idx : static_cast<long>(full_i);
      if (full > 0) {
        Rat piece_value = quantum * sp.u / sp.w;
        Rat advance = Rat(full) * quantum / sp.w;
        Rat newpos = pos + advance;
        if (newpos == sp.hi) {
          if (full > 1) emit(piece_value, full - 1);
          acc_w = quantum;
          acc_u = piece_value;
          pending = true;
          pos = sp.hi;
          break;
        }
        emit(piece_value, full);
        pos = std::move(newpos);
      }
    }
    if (!pending && pos < sp.hi) {
      acc_w += sp.w * (sp.hi - pos);
      acc_u += sp.u * (sp.hi - pos);
    }
  }
  if (pending && idx < m - 1)
    throw InfeasibleError("piece_value_groups: value exhausted before the last cut");
  emit(acc_u, 1);
  if (idx != m) throw InfeasibleError("piece_value_groups produced the wrong piece count");
  return out;
}

std::vector<Rat> partition_cut_positions(const PiecewiseConstantValuation& v,
                                         const IntervalSet& s, long m,
                                         const std::vector<long>& indices) {
  if (m <= 0) throw ParameterError("partition_cut_positions requires m >= 1");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 1 || indices[k] > m - 1 || (k > 0 && indices[k] <= indices[k - 1]))
      throw ParameterError("cut indices must be strictly increasing in [1, m-1]");
  }
  std::vector<Span> spans = refine(v, s, nullptr);
  Rat total = spans_value(spans);
  if (total == 0) throw ZeroValueError("partition_cut_positions of a zero-value set");
  Rat quantum = total / m;

  std::vector<Rat> out;
  out.reserve(indices.size());
  std::size_t ki = 0;
  Rat cum(0);
  bool pending = false;  // boundary at a span end: lands at the next positive span
  for (const Span& sp : spans) {
    if (ki == indices.size()) break;
    if (sp.w == 0) continue;
    if (pending) {
      out.push_back(sp.lo);
      ++ki;
      pending = false;
    }
    Rat pos = sp.lo;
    while (ki < indices.size()) {
      Rat target = indices[ki] * quantum;
      Rat cap = sp.w * (sp.hi - pos);
      if (cum + cap < target) break;
      Rat x = pos + (target - cum) / sp.w;
      cum = std::move(target);
      pos = std::move(x);
      if (pos == sp.hi) {
        pending = true;
        break;
      }
      out.push_back(pos);
      ++ki;
    }
    if (!pending && pos < sp.hi) cum += sp.w * (sp.hi - pos);
  }
  if (ki < indices.size())
    throw InfeasibleError("partition_cut_positions: value exhausted before the cuts");
  return out;
}

}  // namespace dynfair
