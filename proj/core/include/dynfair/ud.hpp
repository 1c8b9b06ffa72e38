#ifndef DYNFAIR_UD_HPP
#define DYNFAIR_UD_HPP

#include <optional>
#include <queue>
#include <vector>

#include "dynfair/rational.hpp"

namespace dynfair {

/// A prior player's size was reduced to `new_size` by an arrival.
struct UdRecall {
  long player = 0;  // 1-based
  Rat new_size;
};

/// Per-player sizes for the uniform-with-demand algorithms: location is
/// irrelevant, only the allocated size matters.
struct UdState {
  std::vector<Rat> sizes;
  std::vector<Rat> demands;
  std::vector<int> class_of;   // demand class per player (A_UD only; -1 for A^S_UD)
  std::vector<bool> live;
  Rat total_demand = Rat(0);   // sum over all arrivals, exact
  Rat total_size = Rat(0);     // sum over live players, exact
  long step = 0;               // arrivals so far

  long player_count() const { return static_cast<long>(sizes.size()); }
};

struct UdParams {
  Rat d;            // minimum demand
  Rat c;            // max/min demand ratio, >= 1
  Rat eta;          // budget parameter
  Rat ln3_inv;      // rational under-approximation of 1/ln 3

  /// Validates d, c, eta (c*d <= 1 etc.) and fills in the 1/ln3 constant.
  static UdParams make(Rat d, Rat c, Rat eta);
};

/// Demand class: l in 1..m with d in (2^-l, 2^(1-l)], else 0 (d <= 2^-m).
int demand_class(const Rat& d, int m);

/// ceil(log2 n) for n >= 1.
int ceil_log2(long n);

/// Known-demand-range allocator. Every arriving size is
/// d/(2 eta ln3 max{d*i, 1}); the largest prior holding is shrunk to the same
/// target when that is an actual shrink.
class UdSAllocator {
 public:
  explicit UdSAllocator(UdParams params);

  std::optional<UdRecall> on_arrival(UdState& state, const Rat& d_new);
  void on_departure(UdState& state, long player);

  const UdParams& params() const { return params_; }

 private:
  UdParams params_;
  // Lazy max-heap of (size, player); stale entries skipped on pop.
  std::vector<std::pair<Rat, long>> heap_;
  std::optional<long> pop_max(const UdState& state);
  void push(const Rat& size, long player);
};

/// Arbitrary-demand allocator: dyadic demand classes, one A^S_UD-style budget
/// per class, eta = 1 + ceil(log2 n).
class UdAllocator {
 public:
  explicit UdAllocator(long n);

  std::optional<UdRecall> on_arrival(UdState& state, const Rat& d_new);
  void on_departure(UdState& state, long player);

  int m() const { return m_; }
  long eta() const { return 1 + m_; }

 private:
  long n_;
  int m_;
  Rat ln3_inv_;
  std::vector<std::vector<std::pair<Rat, long>>> class_heaps_;
  std::optional<long> pop_max(const UdState& state, int cls);
};

}  // namespace dynfair

#endif  // DYNFAIR_UD_HPP
