#include "dynfair/dfd.hpp"

#include <algorithm>

#include "dynfair/enclosure.hpp"
#include "dynfair/errors.hpp"

namespace dynfair {

void DfdState::apply_arrival(PiecewiseConstantValuation v, IntervalSet granted,
                             const std::optional<long>& recalled) {
  if (recalled) {
    IntervalSet& prev = allocations_.at(*recalled - 1);
    if (!granted.is_subset_of(prev))
      throw InfeasibleError("granted set not drawn from the recalled player");
    prev = set_subtract(prev, granted);
  } else if (!granted.is_subset_of(unallocated_)) {
    throw InfeasibleError("granted set not drawn from the unallocated pool");
  }
  if (!recalled) unallocated_ = set_subtract(unallocated_, granted);
  allocations_.push_back(std::move(granted));
  valuations_.push_back(v.normalized());
  live_.push_back(true);
  ++live_count_;
  ++step_;
}

IntervalSet DfdState::apply_departure(long player) {
  if (player < 1 || player > player_count()) throw ParameterError("unknown player");
  if (!live_.at(player - 1)) throw ParameterError("player already departed");
  IntervalSet released = std::move(allocations_.at(player - 1));
  allocations_.at(player - 1) = IntervalSet();
  unallocated_ = set_union(unallocated_, released);
  live_.at(player - 1) = false;
  --live_count_;
  return released;
}

namespace {

/// Sum of the `k` largest probe values in a group list.
Rat top_k_sum(const std::vector<PieceGroup>& groups, long k) {
  std::vector<const PieceGroup*> order;
  order.reserve(groups.size());
  for (const PieceGroup& g : groups) order.push_back(&g);
  std::sort(order.begin(), order.end(), [](const PieceGroup* a, const PieceGroup* b) {
    return a->value > b->value;
  });
  Rat sum(0);
  for (const PieceGroup* g : order) {
    if (k <= 0) break;
    long take = std::min(k, g->count);
    sum += g->value * take;
    k -= take;
  }
  return sum;
}

/// Consecutive index ranges [first, second) of the top-k pieces by
/// (value descending, index ascending), merged and sorted by position.
std::vector<std::pair<long, long>> top_k_ranges(const std::vector<PieceGroup>& groups,
                                                long k) {
  std::vector<const PieceGroup*> order;
  order.reserve(groups.size());
  for (const PieceGroup& g : groups) order.push_back(&g);
  std::sort(order.begin(), order.end(), [](const PieceGroup* a, const PieceGroup* b) {
    if (a->value != b->value) return a->value > b->value;
    return a->first_index < b->first_index;
  });
  std::vector<std::pair<long, long>> ranges;
  for (const PieceGroup* g : order) {
    if (k <= 0) break;
    long take = std::min(k, g->count);
    ranges.emplace_back(g->first_index, g->first_index + take);
    k -= take;
  }
  std::sort(ranges.begin(), ranges.end());
  std::vector<std::pair<long, long>> merged;
  for (const auto& r : ranges) {
    if (!merged.empty() && merged.back().second == r.first) {
      merged.back().second = r.second;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

/// Union of the pieces with indices in `ranges`, out of the donor's
/// m-piece partition, materializing only the range boundaries.
IntervalSet pieces_in_ranges(const PiecewiseConstantValuation& v, const IntervalSet& s,
                             long m, const std::vector<std::pair<long, long>>& ranges) {
  std::vector<long> cut_idx;
  for (const auto& r : ranges) {
    if (r.first > 0) cut_idx.push_back(r.first);
    if (r.second < m) cut_idx.push_back(r.second);
  }
  std::vector<Rat> cuts = partition_cut_positions(v, s, m, cut_idx);
  auto pos_of = [&](long idx) -> Rat {
    if (idx == 0) return Rat(0);
    if (idx == m) return Rat(1);
    auto it = std::lower_bound(cut_idx.begin(), cut_idx.end(), idx);
    return cuts[static_cast<std::size_t>(it - cut_idx.begin())];
  };
  std::vector<IntervalSet::Piece> spans;
  for (const auto& r : ranges) spans.push_back({pos_of(r.first), pos_of(r.second)});
  return set_intersect(s, IntervalSet::from_pieces(std::move(spans)));
}

/// First arrival, or an arrival with no live prior player: the whole
/// unallocated pool goes to the newcomer, so every point always has an owner
/// and later arrivals find positive value at some live player.
bool grant_pool_if_no_donor(DfdState& state, const PiecewiseConstantValuation& v_new,
                            RecallRecord& rec) {
  if (state.live_count() > 0) return false;
  rec.step = state.step() + 1;
  rec.recalled_player = std::nullopt;
  state.apply_arrival(v_new, state.unallocated(), std::nullopt);
  return true;
}

}  // namespace

RecallRecord dfd1_arrival(DfdState& state, const PiecewiseConstantValuation& v_new,
                          const DfdConfig& config) {
  RecallRecord rec;
  if (grant_pool_if_no_donor(state, v_new, rec)) return rec;

  const long i = state.step() + 1;
  const long sigma = config.sigma_override ? *config.sigma_override : sigma_of(i);
  PiecewiseConstantValuation v = v_new.normalized();

  long best_j = 0;
  long best_pieces = 0;
  Rat best_score(-1);
  std::vector<PieceGroup> best_groups;
  for (long j = 1; j <= state.player_count(); ++j) {
    if (!state.is_live(j)) continue;
    Rat share = state.valuation(j).eval(state.allocation(j));
    if (share == 0)
      throw InfeasibleError("prior player holds a zero-value allocation");
    long sigma_j = static_cast<long>(ceil_rat(Rat(1) / share));
    if (sigma_j > sigma)
      throw InfeasibleError("sigma_j exceeds the partition count");
    auto groups = piece_value_groups(state.valuation(j), state.allocation(j), sigma, v);
    Rat score = top_k_sum(groups, sigma - sigma_j);
    if (score > best_score) {
      best_score = std::move(score);
      best_j = j;
      best_pieces = sigma - sigma_j;
      best_groups = std::move(groups);
    }
  }

  rec.step = i;
  rec.recalled_player = best_j;
  rec.removed = pieces_in_ranges(state.valuation(best_j), state.allocation(best_j),
                                 sigma, top_k_ranges(best_groups, best_pieces));
  state.apply_arrival(std::move(v), rec.removed, best_j);
  return rec;
}

RecallRecord dfd2_arrival(DfdState& state, const PiecewiseConstantValuation& v_new) {
  RecallRecord rec;
  if (grant_pool_if_no_donor(state, v_new, rec)) return rec;

  const long i = state.step() + 1;
  PiecewiseConstantValuation v = v_new.normalized();

  long best_j = 0;
  long best_k = -1;
  Rat best_value(-1);
  for (long j = 1; j <= state.player_count(); ++j) {
    if (!state.is_live(j)) continue;
    auto groups = piece_value_groups(state.valuation(j), state.allocation(j), i, v);
    for (const PieceGroup& g : groups) {
      if (g.value > best_value) {
        best_value = g.value;
        best_j = j;
        best_k = g.first_index;
      }
    }
  }

  rec.step = i;
  rec.recalled_player = best_j;
  rec.removed = pieces_in_ranges(state.valuation(best_j), state.allocation(best_j), i,
                                 {{best_k, best_k + 1}});
  state.apply_arrival(std::move(v), rec.removed, best_j);
  return rec;
}

}  // namespace dynfair
