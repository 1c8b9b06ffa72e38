#ifndef DYNFAIR_DFD_HPP
#define DYNFAIR_DFD_HPP

#include <optional>
#include <vector>

#include "dynfair/interval_set.hpp"
#include "dynfair/valuation.hpp"

namespace dynfair {

/// One reallocation event: at most one prior player's allocation shrinks per
/// arrival; `removed` is the part taken from them.
struct RecallRecord {
  long step = 0;
  std::optional<long> recalled_player;  // 1-based
  IntervalSet removed;
};

/// Allocation state for the interval-dividing algorithms: one set per player
/// plus the unallocated remainder; together they always partition [0, 1).
class DfdState {
 public:
  DfdState() : unallocated_(IntervalSet::unit()) {}

  long step() const { return step_; }  // arrivals so far
  long player_count() const { return static_cast<long>(allocations_.size()); }
  long live_count() const { return live_count_; }

  const IntervalSet& allocation(long player) const { return allocations_.at(player - 1); }
  const PiecewiseConstantValuation& valuation(long player) const {
    return valuations_.at(player - 1);
  }
  bool is_live(long player) const { return live_.at(player - 1); }
  const IntervalSet& unallocated() const { return unallocated_; }

  /// Registers an arrival: appends the valuation (normalizing it), grants the
  /// new player `granted`, and shrinks `recalled` (if any) by that set.
  void apply_arrival(PiecewiseConstantValuation v, IntervalSet granted,
                     const std::optional<long>& recalled);

  /// The player's allocation moves to unallocated and is never reassigned.
  /// Returns the released set.
  IntervalSet apply_departure(long player);

 private:
  std::vector<IntervalSet> allocations_;
  std::vector<PiecewiseConstantValuation> valuations_;
  std::vector<bool> live_;
  IntervalSet unallocated_;
  long step_ = 0;
  long live_count_ = 0;
};

struct DfdConfig {
  /// Test hook: fixes the partition count instead of sigma_of(i).
  std::optional<long> sigma_override;
};

/// One arrival of the proportionality-oriented allocator: partitions each
/// prior live player's holding into sigma equal-value sets and hands the new
/// player his best fixed-size bundle from the single best donor.
RecallRecord dfd1_arrival(DfdState& state, const PiecewiseConstantValuation& v_new,
                          const DfdConfig& config = {});

/// One arrival of the envy-oriented allocator: each prior live player's
/// holding is split into i equal-value sets; the new player takes the single
/// piece he values most.
RecallRecord dfd2_arrival(DfdState& state, const PiecewiseConstantValuation& v_new);

}  // namespace dynfair

#endif  // DYNFAIR_DFD_HPP
