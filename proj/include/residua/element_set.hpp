#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace residua {

/// Index of an element inside a finite structure. Labels are display-only.
using Elem = std::uint32_t;

/// Bit-packed subset of {0, ..., n-1}.
///
/// Iteration yields members in increasing index order, which is the canonical
/// order for every set-valued result in the library.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}
  ElementSet(std::size_t universe, std::initializer_list<Elem> members) : ElementSet(universe) {
    for (Elem e : members) insert(e);
  }

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return n_; }

  bool contains(Elem e) const noexcept {
    return e < n_ && ((words_[e >> 6] >> (e & 63)) & 1u) != 0;
  }
  void insert(Elem e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(Elem e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest member, or universe() when empty.
  Elem first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] != 0) return static_cast<Elem>(i * 64 + std::countr_zero(words_[i]));
    return static_cast<Elem>(n_);
  }

  bool is_subset_of(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }

  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  ElementSet& operator-=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  ElementSet complement() const {
    ElementSet s(*this);
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  /// Total order used for canonical sorting: by universe, then lexicographic
  /// on the packed words from the highest index down.
  friend bool operator<(const ElementSet& a, const ElementSet& b) noexcept {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  std::vector<Elem> to_vector() const {
    std::vector<Elem> out;
    out.reserve(count());
    for (Elem e : *this) out.push_back(e);
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  class iterator {
   public:
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ElementSet* s, std::size_t word) : s_(s), word_(word) {
      if (s_ && word_ < s_->words_.size()) {
        cur_ = s_->words_[word_];
        advance();
      }
    }
    Elem operator*() const { return static_cast<Elem>(word_ * 64 + std::countr_zero(cur_)); }
    iterator& operator++() {
      cur_ &= cur_ - 1;
      advance();
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    bool operator==(const iterator& o) const { return word_ == o.word_ && cur_ == o.cur_; }

   private:
    void advance() {
      while (cur_ == 0 && ++word_ < s_->words_.size()) cur_ = s_->words_[word_];
      if (cur_ == 0) word_ = s_->words_.size();
    }
    const ElementSet* s_ = nullptr;
    std::size_t word_ = 0;
    std::uint64_t cur_ = 0;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, words_.size()); }

 private:
  void trim() noexcept {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace residua
