#include "dynfair/interval_set.hpp"

#include <algorithm>

#include "dynfair/errors.hpp"

namespace dynfair {

IntervalSet IntervalSet::from_pieces(std::vector<Piece> pieces) {
  for (const Piece& p : pieces) {
    if (p.lo > p.hi) throw ParameterError("interval piece with lo > hi");
    if (p.lo < 0 || p.hi > 1) throw ParameterError("interval piece outside [0,1]");
  }
  std::erase_if(pieces, [](const Piece& p) { return p.lo == p.hi; });
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  IntervalSet out;
  for (Piece& p : pieces) {
    if (!out.pieces_.empty() && p.lo <= out.pieces_.back().hi) {
      if (p.hi > out.pieces_.back().hi) out.pieces_.back().hi = std::move(p.hi);
    } else {
      out.pieces_.push_back(std::move(p));
    }
  }
  return out;
}

IntervalSet IntervalSet::single(Rat lo, Rat hi) {
  return from_pieces({Piece{std::move(lo), std::move(hi)}});
}

IntervalSet IntervalSet::unit() { return single(Rat(0), Rat(1)); }

Rat IntervalSet::measure() const {
  Rat total(0);
  for (const Piece& p : pieces_) total += p.hi - p.lo;
  return total;
}

bool IntervalSet::is_subset_of(const IntervalSet& other) const {
  std::size_t j = 0;
  for (const Piece& p : pieces_) {
    while (j < other.pieces_.size() && other.pieces_[j].hi < p.hi) ++j;
    if (j == other.pieces_.size()) return false;
    if (other.pieces_[j].lo > p.lo) return false;
  }
  return true;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Piece> all = a.pieces_;
  all.insert(all.end(), b.pieces_.begin(), b.pieces_.end());
  return IntervalSet::from_pieces(std::move(all));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < a.pieces_.size() && j < b.pieces_.size()) {
    const auto& x = a.pieces_[i];
    const auto& y = b.pieces_[j];
    Rat lo = std::max(x.lo, y.lo);
    Rat hi = std::min(x.hi, y.hi);
    if (lo < hi) out.pieces_.push_back({std::move(lo), std::move(hi)});
    if (x.hi < y.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t j = 0;
  for (const auto& x : a.pieces_) {
    Rat cur = x.lo;
    while (j < b.pieces_.size() && b.pieces_[j].hi <= cur) ++j;
    std::size_t k = j;
    while (k < b.pieces_.size() && b.pieces_[k].lo < x.hi) {
      if (b.pieces_[k].lo > cur) out.pieces_.push_back({cur, b.pieces_[k].lo});
      if (b.pieces_[k].hi > cur) cur = b.pieces_[k].hi;
      ++k;
    }
    if (cur < x.hi) out.pieces_.push_back({std::move(cur), x.hi});
  }
  return out;
}

}  // namespace dynfair
