#pragma once

#include <cstdint>
#include <vector>

namespace msp {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Small self-contained generator (xoshiro256**). The standard distributions
// are implementation-defined, so sampling helpers below are hand-rolled to
// keep trial streams bitwise reproducible across toolchains and across any
// parallelism width: every trial gets its own generator derived from
// (master seed, trial index) by counter mixing.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) w = x = splitmix64(x);
  }

  static Rng for_trial(uint64_t master_seed, uint64_t trial_index) {
    return Rng(splitmix64(master_seed ^ (0xd1342543de82ef95ULL * (trial_index + 1))));
  }

  uint64_t next() {
    auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0,1)
  double next_double() { return (double)(next() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound)
  int next_int(int bound) { return bound <= 1 ? 0 : (int)(next() % (uint64_t)bound); }

  bool next_bool() { return next() >> 63; }

 private:
  uint64_t s_[4];
};

// Bin(n, p) by n Bernoulli draws; always consumes exactly n variates so the
// downstream stream layout does not depend on the outcome.
inline int binomial_draw(int n, double p, Rng& rng) {
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (rng.next_double() < p) ++c;
  }
  return c;
}

inline void shuffle_in_place(std::vector<int>& v, Rng& rng) {
  for (int i = (int)v.size() - 1; i > 0; --i) std::swap(v[i], v[rng.next_int(i + 1)]);
}

}  // namespace msp
