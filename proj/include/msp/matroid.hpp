#pragma once

#include <memory>
#include <string>
#include <vector>

#include "msp/element_set.hpp"
#include "msp/value_order.hpp"

namespace msp {

// Independence oracle over a ground set of dense ids. Oracles are stateless:
// queries depend only on the queried set, never on query history.
//
// id_space() is the size of the id universe; ground() is the subset of ids
// that belong to the matroid (minors shrink it). independent() expects
// X subset of ground() and must be exact.
class Matroid {
 public:
  virtual ~Matroid() = default;

  virtual int id_space() const = 0;
  virtual ElementSet ground() const { return ElementSet::full(id_space()); }
  virtual bool independent(const ElementSet& x) const = 0;

  // Greedy scan over `candidates` (already sorted, best first): keep each
  // element whose addition preserves independence. Families with cheap
  // incremental state override this; the result must equal the default.
  virtual ElementSet greedy_max(const std::vector<int>& candidates) const {
    ElementSet s;
    for (int c : candidates) {
      s.insert(c);
      if (!independent(s)) s.erase(c);
    }
    return s;
  }
};

using MatroidPtr = std::shared_ptr<const Matroid>;

// A matroid together with a value order on its id space.
struct OrderedMatroid {
  MatroidPtr matroid;
  ValueOrder order;

  int id_space() const { return matroid->id_space(); }
  ElementSet ground() const { return matroid->ground(); }
  int num_elements() const { return matroid->ground().size(); }
  bool independent(const ElementSet& x) const { return matroid->independent(x); }
  bool higher(int a, int b) const { return order.higher(a, b); }

  // Ground elements sorted best-first.
  std::vector<int> elements_by_value() const;
};

// Sorts the members of q best-first under m's order.
std::vector<int> sorted_by_value(const OrderedMatroid& m, const ElementSet& q);

// The greedy (lexicographically maximum) base of q. Unique because the value
// order is strict.
ElementSet greedy_opt(const OrderedMatroid& m, const ElementSet& q);
ElementSet greedy_opt(const OrderedMatroid& m);  // of the full ground set

int rank(const Matroid& m, const ElementSet& q);

// Elements of the ground set whose addition to q does not raise its rank.
ElementSet span(const Matroid& m, const ElementSet& q);

// Minor of a base matroid: contract `contracted`, restrict to `restricted`.
// Composable: taking a minor of a minor flattens onto the original base.
class Minor : public Matroid {
 public:
  Minor(MatroidPtr base, ElementSet restricted, ElementSet contracted);

  int id_space() const override { return base_->id_space(); }
  ElementSet ground() const override { return restricted_; }
  bool independent(const ElementSet& x) const override;

  const MatroidPtr& base() const { return base_; }
  const ElementSet& restricted_set() const { return restricted_; }
  const ElementSet& contracted_set() const { return contracted_; }

 private:
  MatroidPtr base_;
  ElementSet restricted_;
  ElementSet contracted_;
  ElementSet contracted_base_;  // fixed base of contracted_, reused per query
};

OrderedMatroid restrict_to(const OrderedMatroid& m, const ElementSet& q);
OrderedMatroid contract_out(const OrderedMatroid& m, const ElementSet& q);

// Test-oracle matroid defined by an explicit list of independent sets.
class ExplicitMatroid : public Matroid {
 public:
  ExplicitMatroid(int n, std::vector<ElementSet> independent_sets);
  int id_space() const override { return n_; }
  bool independent(const ElementSet& x) const override;

 private:
  int n_;
  std::vector<ElementSet> sets_;
};

// Enumeration oracle: maximum-weight independent subset of q, weights indexed
// by id. Ties broken toward the set that is lexicographically smallest in the
// value order (better elements preferred). Guarded to |ground| <= 16.
ElementSet brute_force_opt(const OrderedMatroid& m, const ElementSet& q,
                           const std::vector<double>& weights_by_id);

// Checks non-emptiness, downward closure and the exchange axiom by full
// enumeration. Guarded to id_space <= 12. On failure, fills `why` if given.
bool verify_matroid_axioms(const Matroid& m, std::string* why = nullptr);

// Incremental tracker of OPT(R_i) along an arrival sequence, maintained via
// OPT(R_i) = greedy(OPT(R_{i-1}) + r_i); at most one element is evicted per
// arrival.
class OptTracker {
 public:
  explicit OptTracker(const OrderedMatroid& m) : m_(&m) {}

  // Feeds the next arrival; returns true iff r is in the new current OPT.
  bool add(int r);

  const ElementSet& opt_set() const { return opt_set_; }
  const std::vector<int>& opt_sorted() const { return opt_sorted_; }  // best first

 private:
  const OrderedMatroid* m_;
  std::vector<int> opt_sorted_;
  ElementSet opt_set_;
};

}  // namespace msp
