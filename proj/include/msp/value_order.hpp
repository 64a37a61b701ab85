#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace msp {

// Strict total preference order over element ids 0..n-1.
// rank 0 is the most valuable element; weights compatible with the order
// are strictly decreasing along increasing rank.
class ValueOrder {
 public:
  ValueOrder() = default;

  explicit ValueOrder(std::vector<int> best_to_worst)
      : rank_to_id_(std::move(best_to_worst)) {
    int n = (int)rank_to_id_.size();
    id_to_rank_.assign(n, -1);
    for (int k = 0; k < n; ++k) {
      int id = rank_to_id_[k];
      if (id < 0 || id >= n || id_to_rank_[id] != -1)
        throw std::invalid_argument("value order is not a permutation of 0..n-1");
      id_to_rank_[id] = k;
    }
  }

  static ValueOrder identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return ValueOrder(std::move(v));
  }

  int n() const { return (int)rank_to_id_.size(); }

  // k in [0, n): the element of rank k (0 = best).
  int element_at_rank(int k) const { return rank_to_id_.at(k); }
  int rank_of(int id) const { return id_to_rank_.at(id); }

  // a strictly more valuable than b
  bool higher(int a, int b) const { return id_to_rank_.at(a) < id_to_rank_.at(b); }

  const std::vector<int>& ranking() const { return rank_to_id_; }

 private:
  std::vector<int> rank_to_id_;
  std::vector<int> id_to_rank_;
};

}  // namespace msp
