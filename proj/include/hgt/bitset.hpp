#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hgt {

// Fixed-width bit vector indexed by 1-based ids.  Hyperedges, pools and
// response vectors are all stored this way, giving word-parallel set algebra.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits)
      : nbits_(nbits), words_((static_cast<std::size_t>(nbits) + 63) / 64, 0) {}

  static Bitset of(int nbits, std::initializer_list<int> ids) {
    Bitset b(nbits);
    for (int v : ids) b.set(v);
    return b;
  }
  static Bitset of(int nbits, const std::vector<int>& ids) {
    Bitset b(nbits);
    for (int v : ids) b.set(v);
    return b;
  }

  int width() const { return nbits_; }

  bool test(int id) const {
    return (words_[static_cast<std::size_t>(id - 1) >> 6] >>
            ((id - 1) & 63)) & 1;
  }
  void set(int id) {
    words_[static_cast<std::size_t>(id - 1) >> 6] |= 1ULL << ((id - 1) & 63);
  }
  void reset(int id) {
    words_[static_cast<std::size_t>(id - 1) >> 6] &= ~(1ULL << ((id - 1) & 63));
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // In-place set difference.
  Bitset& subtract(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  Bitset minus(const Bitset& o) const {
    Bitset r = *this;
    r.subtract(o);
    return r;
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  int intersection_count(const Bitset& o) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }
  int difference_count(const Bitset& o) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & ~o.words_[i]);
    return c;
  }

  bool operator==(const Bitset& o) const = default;

  // Smallest set id strictly greater than `after` (pass 0 to start); 0 if none.
  int next_id(int after) const {
    // Id v lives at bit index v-1, so "id > after" means "bit index >= after".
    const std::size_t start = static_cast<std::size_t>(after) >> 6;
    for (std::size_t w = start; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      if (w == start) word &= ~0ULL << (after & 63);
      if (word) return static_cast<int>(w * 64 + std::countr_zero(word)) + 1;
    }
    return 0;
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int v = next_id(0); v != 0; v = next_id(v)) out.push_back(v);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : ids()) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }

  // Lexicographic order on the ascending id sequence; ties every deterministic
  // choice (witness order, pivot tie-break) to one canonical encoding.
  static bool canonical_less(const Bitset& a, const Bitset& b) {
    int va = a.next_id(0), vb = b.next_id(0);
    while (va != 0 && vb != 0) {
      if (va != vb) return va < vb;
      va = a.next_id(va);
      vb = b.next_id(vb);
    }
    return va == 0 && vb != 0;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(nbits_) * 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : words_) h = (h ^ w) * 0x100000001b3ULL;
    return h;
  }

 private:
  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hgt
