#include "dynfair/ud.hpp"

#include <algorithm>

#include "dynfair/enclosure.hpp"
#include "dynfair/errors.hpp"

namespace dynfair {
namespace {

// Max-heap order on (size, player): larger size first, smaller player breaks ties.
struct HeapLess {
  bool operator()(const std::pair<Rat, long>& a, const std::pair<Rat, long>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  }
};

std::optional<long> heap_pop_valid(std::vector<std::pair<Rat, long>>& heap,
                                   const UdState& state) {
  while (!heap.empty()) {
    const auto& top = heap.front();
    long p = top.second;
    if (state.live.at(p - 1) && state.sizes.at(p - 1) == top.first) return p;
    std::pop_heap(heap.begin(), heap.end(), HeapLess{});
    heap.pop_back();
  }
  return std::nullopt;
}

void heap_push(std::vector<std::pair<Rat, long>>& heap, const Rat& size, long player) {
  heap.emplace_back(size, player);
  std::push_heap(heap.begin(), heap.end(), HeapLess{});
}

}  // namespace

UdParams UdParams::make(Rat d, Rat c, Rat eta) {
  if (d <= 0 || d > 1) throw ParameterError("minimum demand must be in (0,1]");
  if (c < 1) throw ParameterError("demand ratio c must be >= 1");
  if (c * d > 1) throw ParameterError("c*d must be <= 1");
  if (eta <= 0) throw ParameterError("eta must be positive");
  return UdParams{std::move(d), std::move(c), std::move(eta), ln3_inv_lo()};
}

int ceil_log2(long n) {
  if (n < 1) throw ParameterError("ceil_log2 requires n >= 1");
  int m = 0;
  while ((1L << m) < n) ++m;
  return m;
}

int demand_class(const Rat& d, int m) {
  if (d <= 0 || d > 1) throw ParameterError("demand must be in (0,1]");
  // S_l = (2^-l, 2^(1-l)] checked first; S_0 = [0, 2^-m] is the fallback,
  // which also resolves the degenerate m = 0 overlap.
  Rat upper(1);
  for (int l = 1; l <= m; ++l) {
    Rat lower = upper / 2;
    if (d > lower && d <= upper) return l;
    upper = std::move(lower);
  }
  return 0;
}

UdSAllocator::UdSAllocator(UdParams params) : params_(std::move(params)) {}

std::optional<long> UdSAllocator::pop_max(const UdState& state) {
  return heap_pop_valid(heap_, state);
}

void UdSAllocator::push(const Rat& size, long player) { heap_push(heap_, size, player); }

std::optional<UdRecall> UdSAllocator::on_arrival(UdState& state, const Rat& d_new) {
  if (d_new < params_.d || d_new > params_.c * params_.d)
    throw DemandRangeError("demand outside [d, c*d]");
  const long i = state.step + 1;
  Rat di = params_.d * i;
  Rat denom = Rat(2) * params_.eta * (di > 1 ? di : Rat(1));
  Rat target = params_.d * params_.ln3_inv / denom;

  std::optional<UdRecall> recall;
  if (auto j = pop_max(state)) {
    if (state.sizes.at(*j - 1) > target) {
      state.total_size -= state.sizes.at(*j - 1) - target;
      state.sizes.at(*j - 1) = target;
      push(target, *j);
      recall = UdRecall{*j, target};
    }
  }
  state.sizes.push_back(target);
  state.demands.push_back(d_new);
  state.class_of.push_back(-1);
  state.live.push_back(true);
  state.total_demand += d_new;
  state.total_size += target;
  ++state.step;
  push(target, i);
  return recall;
}

void UdSAllocator::on_departure(UdState& state, long player) {
  if (player < 1 || player > state.player_count() || !state.live.at(player - 1))
    throw ParameterError("unknown or departed player");
  state.total_size -= state.sizes.at(player - 1);
  state.sizes.at(player - 1) = 0;
  state.live.at(player - 1) = false;
}

UdAllocator::UdAllocator(long n) : n_(n) {
  if (n < 1) throw ParameterError("n must be >= 1");
  m_ = ceil_log2(n);
  ln3_inv_ = ln3_inv_lo();
  class_heaps_.resize(m_ + 1);
}

std::optional<long> UdAllocator::pop_max(const UdState& state, int cls) {
  return heap_pop_valid(class_heaps_.at(cls), state);
}

std::optional<UdRecall> UdAllocator::on_arrival(UdState& state, const Rat& d_new) {
  if (d_new <= 0 || d_new > 1) throw DemandRangeError("demand must be in (0,1]");
  if (state.step + 1 > n_) throw ParameterError("more than n arrivals");
  const long i = state.step + 1;
  const int cls = demand_class(d_new, m_);
  Rat total = state.total_demand + d_new;
  Rat denom = Rat(eta()) * (total > 1 ? total : Rat(1));
  Rat target = Rat(1, Int(1) << cls) * ln3_inv_ / denom;

  std::optional<UdRecall> recall;
  if (auto j = pop_max(state, cls)) {
    if (state.sizes.at(*j - 1) > target) {
      state.total_size -= state.sizes.at(*j - 1) - target;
      state.sizes.at(*j - 1) = target;
      heap_push(class_heaps_.at(cls), target, *j);
      recall = UdRecall{*j, target};
    }
  }
  state.sizes.push_back(target);
  state.demands.push_back(d_new);
  state.class_of.push_back(cls);
  state.live.push_back(true);
  state.total_demand = std::move(total);
  state.total_size += target;
  ++state.step;
  heap_push(class_heaps_.at(cls), target, i);
  if (state.total_size > 1) throw CapacityError("total allocated size exceeds 1");
  return recall;
}

void UdAllocator::on_departure(UdState& state, long player) {
  if (player < 1 || player > state.player_count() || !state.live.at(player - 1))
    throw ParameterError("unknown or departed player");
  state.total_size -= state.sizes.at(player - 1);
  state.sizes.at(player - 1) = 0;
  state.live.at(player - 1) = false;
}

}  // namespace dynfair
