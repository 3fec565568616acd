#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace qpolish {

using Point = std::size_t;
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Extensional finite set of point indices living in a truncation of the
/// given depth: members are always < depth.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t depth) : bits_(depth) {}
  PointSet(std::size_t depth, std::initializer_list<Point> members);
  PointSet(std::size_t depth, const std::vector<Point>& members);

  static PointSet full(std::size_t depth);
  static PointSet range(std::size_t depth, std::size_t count);

  std::size_t depth() const { return bits_.size(); }
  bool contains(Point p) const { return p < bits_.size() && bits_.test(p); }
  void insert(Point p);
  void erase(Point p);

  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_singleton() const { return bits_.count() == 1; }

  /// Least member, or npos.
  Point first() const;
  /// Least member strictly greater than p, or npos.
  Point next(Point p) const;

  bool is_subset_of(const PointSet& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const PointSet& o) const { return bits_.intersects(o.bits_); }

  PointSet& operator&=(const PointSet& o);
  PointSet& operator|=(const PointSet& o);
  PointSet& operator-=(const PointSet& o);
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }
  friend bool operator==(const PointSet& a, const PointSet& b) { return a.bits_ == b.bits_; }

  std::vector<Point> members() const;
  /// "{0,3,5}"
  std::string str() const;

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Point;
    using difference_type = std::ptrdiff_t;
    using pointer = const Point*;
    using reference = Point;

    const_iterator() = default;
    const_iterator(const PointSet* s, Point p) : set_(s), cur_(p) {}
    Point operator*() const { return cur_; }
    const_iterator& operator++() {
      cur_ = set_->next(cur_);
      return *this;
    }
    const_iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.cur_ == b.cur_; }

   private:
    const PointSet* set_ = nullptr;
    Point cur_ = npos;
  };

  const_iterator begin() const { return {this, first()}; }
  const_iterator end() const { return {this, npos}; }

 private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

}  // namespace qpolish
