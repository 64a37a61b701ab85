#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace msp {

// Set of small non-negative integers on top of a growable bit vector.
// Ground sets in this project are dense ids 0..n-1, so a bitset covers
// every instance family; words are added lazily on insert.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe) : words_((universe + 63) / 64, 0) {}

  static ElementSet of(std::initializer_list<int> xs) {
    ElementSet s;
    for (int x : xs) s.insert(x);
    return s;
  }

  static ElementSet full(int n) {
    ElementSet s(n);
    for (int w = 0; w * 64 < n; ++w) {
      int hi = std::min(64, n - w * 64);
      s.words_[w] = hi == 64 ? ~uint64_t{0} : ((uint64_t{1} << hi) - 1);
    }
    return s;
  }

  bool contains(int x) const {
    int w = x >> 6;
    if (x < 0 || w >= (int)words_.size()) return false;
    return (words_[w] >> (x & 63)) & 1;
  }

  void insert(int x) {
    int w = x >> 6;
    if (w >= (int)words_.size()) words_.resize(w + 1, 0);
    words_[w] |= uint64_t{1} << (x & 63);
  }

  void erase(int x) {
    int w = x >> 6;
    if (w < (int)words_.size()) words_[w] &= ~(uint64_t{1} << (x & 63));
  }

  int size() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (uint64_t w : words_) {
      if (w) return false;
    }
    return true;
  }

  ElementSet& operator|=(const ElementSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  ElementSet& operator&=(const ElementSet& o) {
    for (size_t i = 0; i < words_.size(); ++i)
      words_[i] &= i < o.words_.size() ? o.words_[i] : 0;
    return *this;
  }

  ElementSet& operator-=(const ElementSet& o) {
    size_t m = std::min(words_.size(), o.words_.size());
    for (size_t i = 0; i < m; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  ElementSet plus(int x) const {
    ElementSet s = *this;
    s.insert(x);
    return s;
  }

  ElementSet minus(int x) const {
    ElementSet s = *this;
    s.erase(x);
    return s;
  }

  bool subset_of(const ElementSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~other) return false;
    }
    return true;
  }

  bool intersects(const ElementSet& o) const {
    size_t m = std::min(words_.size(), o.words_.size());
    for (size_t i = 0; i < m; ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  bool operator==(const ElementSet& o) const {
    size_t m = std::max(words_.size(), o.words_.size());
    for (size_t i = 0; i < m; ++i) {
      uint64_t a = i < words_.size() ? words_[i] : 0;
      uint64_t b = i < o.words_.size() ? o.words_[i] : 0;
      if (a != b) return false;
    }
    return true;
  }
  bool operator!=(const ElementSet& o) const { return !(*this == o); }

  template <class F>
  void for_each(F f) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f((int)(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(size());
    for_each([&](int x) { v.push_back(x); });
    return v;
  }

  int min_element() const {
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return (int)(i * 64 + std::countr_zero(words_[i]));
    }
    return -1;
  }

  uint64_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (size_t i = 0; i < words_.size(); ++i) {
      if (!words_[i]) continue;
      uint64_t x = words_[i] + 0x9e3779b97f4a7c15ULL * (i + 1);
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 27;
      h ^= x * 0x94d049bb133111ebULL;
    }
    return h;
  }

 private:
  std::vector<uint64_t> words_;
};

struct ElementSetHash {
  size_t operator()(const ElementSet& s) const { return (size_t)s.hash(); }
};

}  // namespace msp
