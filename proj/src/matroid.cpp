#include "msp/matroid.hpp"

#include <algorithm>
#include <stdexcept>

namespace msp {

std::vector<int> OrderedMatroid::elements_by_value() const {
  return msp::sorted_by_value(*this, ground());
}

std::vector<int> sorted_by_value(const OrderedMatroid& m, const ElementSet& q) {
  std::vector<int> v = q.to_vector();
  std::sort(v.begin(), v.end(),
            [&](int a, int b) { return m.order.rank_of(a) < m.order.rank_of(b); });
  return v;
}

ElementSet greedy_opt(const OrderedMatroid& m, const ElementSet& q) {
  return m.matroid->greedy_max(sorted_by_value(m, q));
}

ElementSet greedy_opt(const OrderedMatroid& m) { return greedy_opt(m, m.ground()); }

int rank(const Matroid& m, const ElementSet& q) {
  // Any greedy order yields a base of q.
  return m.greedy_max(q.to_vector()).size();
}

ElementSet span(const Matroid& m, const ElementSet& q) {
  ElementSet base = m.greedy_max(q.to_vector());
  ElementSet result = q;
  m.ground().for_each([&](int r) {
    if (q.contains(r)) return;
    if (!m.independent(base.plus(r))) result.insert(r);
  });
  result &= m.ground();
  return result;
}

Minor::Minor(MatroidPtr base, ElementSet restricted, ElementSet contracted)
    : base_(std::move(base)),
      restricted_(std::move(restricted)),
      contracted_(std::move(contracted)) {
  if (restricted_.intersects(contracted_))
    throw std::invalid_argument("minor: restricted and contracted sets overlap");
  if (!contracted_.subset_of(base_->ground()) || !restricted_.subset_of(base_->ground()))
    throw std::invalid_argument("minor: sets outside the base ground set");
  contracted_base_ = base_->greedy_max(contracted_.to_vector());
}

bool Minor::independent(const ElementSet& x) const {
  // x is independent in the minor iff x plus a fixed base of the contracted
  // set is independent in the base matroid; equivalent to the rank identity
  // rank(x | contracted) - rank(contracted) == |x| at one oracle call.
  if (!x.subset_of(restricted_)) return false;
  if (contracted_base_.empty()) return base_->independent(x);
  return base_->independent(x | contracted_base_);
}

static OrderedMatroid make_minor(const OrderedMatroid& m, ElementSet restricted,
                                 ElementSet contracted) {
  // Flatten chains of minors onto the original base matroid.
  if (auto prev = std::dynamic_pointer_cast<const Minor>(m.matroid)) {
    contracted |= prev->contracted_set();
    return {std::make_shared<Minor>(prev->base(), std::move(restricted),
                                    std::move(contracted)),
            m.order};
  }
  return {std::make_shared<Minor>(m.matroid, std::move(restricted), std::move(contracted)),
          m.order};
}

OrderedMatroid restrict_to(const OrderedMatroid& m, const ElementSet& q) {
  ElementSet restricted = m.ground() & q;
  ElementSet contracted;
  if (auto prev = std::dynamic_pointer_cast<const Minor>(m.matroid))
    contracted = prev->contracted_set();
  return make_minor(m, std::move(restricted), std::move(contracted));
}

OrderedMatroid contract_out(const OrderedMatroid& m, const ElementSet& q) {
  ElementSet gone = m.ground() & q;
  ElementSet restricted = m.ground() - gone;
  return make_minor(m, std::move(restricted), std::move(gone));
}

ExplicitMatroid::ExplicitMatroid(int n, std::vector<ElementSet> independent_sets)
    : n_(n), sets_(std::move(independent_sets)) {}

bool ExplicitMatroid::independent(const ElementSet& x) const {
  for (const auto& s : sets_) {
    if (x == s) return true;
  }
  return false;
}

ElementSet brute_force_opt(const OrderedMatroid& m, const ElementSet& q,
                           const std::vector<double>& weights_by_id) {
  std::vector<int> items = sorted_by_value(m, q);
  int k = (int)items.size();
  if (k > 16) throw std::invalid_argument("brute_force_opt limited to 16 elements");
  double best_w = -1;
  uint32_t best_mask = 0;
  bool found = false;
  // Masks are over value-sorted positions, so a numerically smaller mask with
  // the same weight is lexicographically better in the value order.
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    ElementSet s;
    double w = 0;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        s.insert(items[i]);
        w += weights_by_id[items[i]];
      }
    }
    if (!m.independent(s)) continue;
    bool better = !found || w > best_w + 1e-12;
    if (!better && w > best_w - 1e-12) {
      // Tie: prefer the better elements at the earliest differing position.
      uint32_t diff = best_mask ^ mask;
      if (diff && (mask >> std::countr_zero(diff) & 1)) better = true;
    }
    if (better) {
      best_w = w;
      best_mask = mask;
      found = true;
    }
  }
  ElementSet result;
  for (int i = 0; i < k; ++i) {
    if (best_mask >> i & 1) result.insert(items[i]);
  }
  return result;
}

bool verify_matroid_axioms(const Matroid& m, std::string* why) {
  int n = m.id_space();
  if (n > 12) throw std::invalid_argument("verify_matroid_axioms limited to 12 elements");
  std::vector<int> ground = m.ground().to_vector();
  int g = (int)ground.size();
  auto set_of = [&](uint32_t mask) {
    ElementSet s;
    for (int i = 0; i < g; ++i) {
      if (mask >> i & 1) s.insert(ground[i]);
    }
    return s;
  };
  auto describe = [&](uint32_t mask) {
    std::string out = "{";
    for (int i = 0; i < g; ++i) {
      if (mask >> i & 1) out += std::to_string(ground[i]) + ",";
    }
    if (out.back() == ',') out.pop_back();
    return out + "}";
  };
  std::vector<bool> indep(size_t{1} << g);
  for (uint32_t mask = 0; mask < (1u << g); ++mask) indep[mask] = m.independent(set_of(mask));
  if (!indep[0]) {
    if (why) *why = "empty set is dependent";
    return false;
  }
  for (uint32_t mask = 1; mask < (1u << g); ++mask) {
    if (!indep[mask]) continue;
    uint32_t rest = mask;
    while (rest) {
      uint32_t sub = mask & ~(rest & -rest);
      rest &= rest - 1;
      if (!indep[sub]) {
        if (why)
          *why = "downward closure fails: " + describe(mask) + " independent but " +
                 describe(sub) + " is not";
        return false;
      }
    }
  }
  for (uint32_t a = 0; a < (1u << g); ++a) {
    if (!indep[a]) continue;
    for (uint32_t b = 0; b < (1u << g); ++b) {
      if (!indep[b] || std::popcount(a) >= std::popcount(b)) continue;
      bool augmented = false;
      uint32_t cand = b & ~a;
      while (cand) {
        uint32_t bit = cand & -cand;
        cand &= cand - 1;
        if (indep[a | bit]) {
          augmented = true;
          break;
        }
      }
      if (!augmented) {
        if (why)
          *why = "exchange fails between " + describe(a) + " and " + describe(b);
        return false;
      }
    }
  }
  return true;
}

bool OptTracker::add(int r) {
  // Merge r into the previous optimum, best first, and re-run greedy. The
  // prefix of the old optimum above r stays; after r is placed, at most one
  // old element can drop out, and once it does the rest are kept.
  const ValueOrder& ord = m_->order;
  size_t pos = 0;
  while (pos < opt_sorted_.size() && ord.higher(opt_sorted_[pos], r)) ++pos;

  ElementSet trial = opt_set_.plus(r);
  if (m_->independent(trial)) {
    opt_set_ = std::move(trial);
    opt_sorted_.insert(opt_sorted_.begin() + pos, r);
    return true;
  }

  ElementSet prefix;
  for (size_t i = 0; i < pos; ++i) prefix.insert(opt_sorted_[i]);
  if (!m_->independent(prefix.plus(r))) return false;  // optimum unchanged

  // r enters; find the single old element below r that greedy now drops.
  ElementSet kept = prefix.plus(r);
  std::vector<int> new_sorted(opt_sorted_.begin(), opt_sorted_.begin() + pos);
  new_sorted.push_back(r);
  for (size_t i = pos; i < opt_sorted_.size(); ++i) {
    int e = opt_sorted_[i];
    if (m_->independent(kept.plus(e))) {
      kept.insert(e);
      new_sorted.push_back(e);
    } else {
      // Unique eviction: everything after e is kept unconditionally.
      for (size_t j = i + 1; j < opt_sorted_.size(); ++j) {
        kept.insert(opt_sorted_[j]);
        new_sorted.push_back(opt_sorted_[j]);
      }
      break;
    }
  }
  opt_set_ = std::move(kept);
  opt_sorted_ = std::move(new_sorted);
  return true;
}

}  // namespace msp
