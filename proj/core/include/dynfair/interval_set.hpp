#ifndef DYNFAIR_INTERVAL_SET_HPP
#define DYNFAIR_INTERVAL_SET_HPP

#include <vector>

#include "dynfair/rational.hpp"

namespace dynfair {

/// Finite union of half-open subintervals [a, b) of [0, 1), kept in canonical
/// form: pieces sorted, pairwise disjoint, non-touching (b_k < a_{k+1}), each
/// with a < b. Canonical form is unique, so set equality is operator==.
/// Values are immutable after construction.
class IntervalSet {
 public:
  struct Piece {
    Rat lo;
    Rat hi;
    bool operator==(const Piece&) const = default;
  };

  IntervalSet() = default;

  /// Canonicalizes an arbitrary piece list: drops empty pieces, sorts, merges
  /// overlapping and touching neighbours. Throws ParameterError when a piece
  /// leaves [0, 1] or has lo > hi.
  static IntervalSet from_pieces(std::vector<Piece> pieces);

  static IntervalSet single(Rat lo, Rat hi);
  static IntervalSet unit();  // [0, 1)

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  /// Total length, exact.
  Rat measure() const;

  bool is_subset_of(const IntervalSet& other) const;
  bool operator==(const IntervalSet&) const = default;

  friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b);

 private:
  std::vector<Piece> pieces_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b);

}  // namespace dynfair

#endif  // DYNFAIR_INTERVAL_SET_HPP
