#ifndef DYNFAIR_VALUATION_HPP
#define DYNFAIR_VALUATION_HPP

#include <vector>

#include "dynfair/interval_set.hpp"
#include "dynfair/rational.hpp"

namespace dynfair {

/// Additive valuation over [0, 1) as a piecewise-constant density. Segments
/// are contiguous and exhaustive; a normalized valuation has total mass 1.
class PiecewiseConstantValuation {
 public:
  struct Segment {
    Rat lo;
    Rat hi;
    Rat density;  // >= 0
    bool operator==(const Segment&) const = default;
  };

  /// Validates that the segments partition [0, 1) with nonnegative densities.
  explicit PiecewiseConstantValuation(std::vector<Segment> segments);

  static PiecewiseConstantValuation uniform();

  /// Piecewise-uniform valuation: density 1/|support| on the support, zero
  /// elsewhere, already normalized. Throws ZeroValueError on empty support.
  static PiecewiseConstantValuation from_support(const IntervalSet& support);

  /// Densities scaled so the total mass is exactly 1.
  PiecewiseConstantValuation normalized() const;

  Rat total_mass() const;
  bool is_normalized() const { return total_mass() == 1; }

  /// Exact value of a set: sum of density * overlap length.
  Rat eval(const IntervalSet& s) const;

  /// Region where the density is zero, as a canonical set.
  IntervalSet zero_support() const;

  const std::vector<Segment>& segments() const { return segments_; }
  bool operator==(const PiecewiseConstantValuation&) const = default;

 private:
  std::vector<Segment> segments_;
};

/// Uniform-with-demand valuation: v(size) = min(size / d, 1).
struct DemandValuation {
  Rat d;  // in (0, 1]
};

Rat eval_demand(const DemandValuation& v, const Rat& size);

/// Splits s into m pairwise-disjoint sets of exactly equal v-value by a
/// left-to-right cumulative sweep, cutting at value quantiles k*V/m.
/// Zero-density spans attach to the piece on their left; the last piece
/// absorbs any trailing zero-value span. Throws ZeroValueError when
/// eval(v, s) = 0.
std::vector<IntervalSet> equal_partition(const PiecewiseConstantValuation& v,
                                         const IntervalSet& s, long m);

/// Run-length-compressed probe values of the m equal_partition pieces:
/// groups in piece-index order, consecutive equal values coalesced.
/// piece_value_groups(v, s, m, probe)[...] lists exactly what
/// {probe.eval(p) for p in equal_partition(v, s, m)} would, in order, but in
/// time independent of m.
struct PieceGroup {
  Rat value;        // probe value of each piece in the group
  long count;       // number of consecutive pieces with this value
  long first_index; // 0-based index of the first piece in the group
};

std::vector<PieceGroup> piece_value_groups(const PiecewiseConstantValuation& v,
                                           const IntervalSet& s, long m,
                                           const PiecewiseConstantValuation& probe);

/// Positions of selected equal_partition boundaries: cut k (1 <= k <= m-1)
/// separates piece k-1 from piece k, so piece k = s intersected with
/// [cut_k, cut_{k+1}), taking cut_0 = 0 and cut_m = 1. Indices must be
/// strictly increasing. Runs in time independent of m, which lets callers
/// materialize a few pieces of a partition with many.
std::vector<Rat> partition_cut_positions(const PiecewiseConstantValuation& v,
                                         const IntervalSet& s, long m,
                                         const std::vector<long>& indices);

}  // namespace dynfair

#endif  // DYNFAIR_VALUATION_HPP
