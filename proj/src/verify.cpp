#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "msp/verify.hpp"
#include "msp/witness.hpp"

namespace msp {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

ElementSet set_of_prefix(const std::vector<int>& arrival, int len) {
  ElementSet s;
  for (int i = 0; i < len; ++i) s.insert(arrival[i]);
  return s;
}

}  // namespace

std::string ForbiddenPropertyReport::to_string() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << detail << " [arrival " << join_ints(arrival) << ", sample " << sample_size;
  if (position >= 0) os << ", position " << position;
  os << "]";
  return os.str();
}

ForbiddenPropertyReport verify_forbidden_property(const MarkingEngine& engine) {
  const OrderedMatroid& m = engine.ordered();
  int n = m.num_elements();
  if (n > 8) throw std::invalid_argument("exhaustive check guarded to n <= 8");
  int k = engine.blocking_size_bound();

  // forbidden_set is a pure function of (X, Y, r*): memoize across replays
  std::unordered_map<uint32_t, ElementSet> memo;
  auto forbidden = [&](uint32_t x_mask, uint32_t y_mask, int r_star,
                       const ElementSet& x, const ElementSet& y) -> const ElementSet& {
    uint32_t key = x_mask | (y_mask << 8) | ((uint32_t)r_star << 16);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, engine.forbidden_set(x, y, r_star)).first;
    return it->second;
  };

  ForbiddenPropertyReport rep;
  auto fail = [&](std::string why, const std::vector<int>& arrival, int s,
                  int t) -> ForbiddenPropertyReport& {
    rep.ok = false;
    rep.detail = std::move(why);
    rep.arrival = arrival;
    rep.sample_size = s;
    rep.position = t;
    return rep;
  };

  std::vector<int> arrival(n);
  std::iota(arrival.begin(), arrival.end(), 0);
  std::vector<char> in_opt(n + 1, 0);
  std::vector<uint32_t> prefix_mask(n + 1, 0);
  do {
    OptTracker opt(m);
    for (int i = 0; i < n; ++i) {
      in_opt[i + 1] = opt.add(arrival[i]);
      prefix_mask[i + 1] = prefix_mask[i] | (1u << arrival[i]);
    }
    for (int s = 0; s <= n; ++s) {
      ArrivalTrial trial;
      trial.arrival = arrival;
      trial.sample_size = s;
      ElementSet selected = engine.run(trial).selected;
      if (!m.independent(selected))
        return fail("replay picked a dependent set", arrival, s, -1);
      for (int i = 0; i < s; ++i) {
        if (selected.contains(arrival[i]))
          return fail("replay selected a sampled element", arrival, s, i + 1);
      }
      for (int t = s + 1; t <= n; ++t) {
        if (!in_opt[t]) continue;
        int r_star = arrival[t - 1];
        ElementSet y = set_of_prefix(arrival, t);
        bool dodged = true;
        for (int j = s + 1; j < t && dodged; ++j) {
          const ElementSet& f = forbidden(prefix_mask[j], prefix_mask[t], r_star,
                                          set_of_prefix(arrival, j), y);
          if (f.size() > k)
            return fail("forbidden set larger than the declared bound", arrival, s, j);
          if (f.contains(arrival[j - 1])) dodged = false;
        }
        if (dodged && !selected.contains(r_star))
          return fail("element dodged every forbidden set but was not selected",
                      arrival, s, t);
      }
    }
  } while (std::next_permutation(arrival.begin(), arrival.end()));
  return rep;
}

// ---------------------------------------------------------------------------
// Neighbour-window monotonicity.
// ---------------------------------------------------------------------------

namespace {

template <size_t N>
std::vector<int> window_set(const std::array<int, N>& w) {
  std::vector<int> v(w.begin(), w.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool window_fail(std::string* why, const std::string& what, uint32_t x_mask, int r_star,
                 int x) {
  if (why) {
    std::ostringstream os;
    os << what << " [X mask " << x_mask << ", r* " << r_star << ", removed " << x << "]";
    *why = os.str();
  }
  return false;
}

}  // namespace

bool check_window_monotonicity(int n, std::string* why) {
  if (n > 10) throw std::invalid_argument("exhaustive check guarded to n <= 10");
  for (uint32_t x_mask = 0; x_mask < (1u << n); ++x_mask) {
    ElementSet x;
    for (int v = 0; v < n; ++v) {
      if (x_mask >> v & 1) x.insert(v);
    }
    for (int r = 0; r < n; ++r) {
      if (x.contains(r)) continue;
      auto quad = neighbor_quad(x, r, n);
      std::vector<int> f = window_set(quad);
      for (int rem = 0; rem < n; ++rem) {
        if (!x.contains(rem)) continue;
        auto quad2 = neighbor_quad(x.minus(rem), r, n);
        bool member = std::find(f.begin(), f.end(), rem) != f.end();
        if (member) {
          if (quad2.front() > quad.front() || quad2.back() < quad.back())
            return window_fail(why, "interval shrank after removing a window member",
                               x_mask, r, rem);
        } else if (window_set(quad2) != f) {
          return window_fail(why, "window changed after removing an outside element",
                             x_mask, r, rem);
        }
      }
    }
  }
  return true;
}

bool check_representative_monotonicity(const LaminarMatroid& m, std::string* why) {
  int n = m.instance().n;
  if (n > 10) throw std::invalid_argument("exhaustive check guarded to n <= 10");
  for (uint32_t x_mask = 0; x_mask < (1u << n); ++x_mask) {
    ElementSet x;
    for (int v = 0; v < n; ++v) {
      if (x_mask >> v & 1) x.insert(v);
    }
    if (x.empty()) continue;
    for (int r = 0; r < n; ++r) {
      if (x.contains(r)) continue;
      auto triple = representative_triple(m, x, r);
      std::vector<int> f = window_set(triple);
      for (int rem = 0; rem < n; ++rem) {
        if (!x.contains(rem)) continue;
        ElementSet rest = x.minus(rem);
        bool member = std::find(f.begin(), f.end(), rem) != f.end();
        if (member) {
          // a singleton X collapses to the full sentinel interval
          int lo = -1, hi = n;
          if (!rest.empty()) {
            auto t2 = representative_triple(m, rest, r);
            lo = t2.front();
            hi = t2.back();
          }
          if (lo > triple.front() || hi < triple.back())
            return window_fail(why, "interval shrank after removing a window member",
                               x_mask, r, rem);
        } else if (window_set(representative_triple(m, rest, r)) != f) {
          return window_fail(why, "window changed after removing an outside element",
                             x_mask, r, rem);
        }
      }
    }
  }
  return true;
}

}  // namespace msp
