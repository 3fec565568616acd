#pragma once

#include "qpolish/point_set.hpp"
#include "qpolish/space.hpp"

#include <memory>
#include <vector>

namespace qpolish {

/// The finite window of a presented space that an operation may inspect:
/// points with index < depth and basic opens with index < depth. A window can
/// be restricted to a subspace; basic extents are then intersected with it.
///
/// The window's lower half (by position within the universe) is its
/// "resolved" part. Order-theoretic extremality near the top of the window is
/// a truncation artifact (the top visible point of S_D looks maximal), so
/// witnesses that depend on maximality are only trusted on resolved points.
/// When the whole space fits in the window nothing is an artifact and every
/// point is resolved.
class Truncation {
 public:
  Truncation(SpacePtr space, std::size_t depth);

  const Space& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t depth() const { return depth_; }
  const PointSet& universe() const { return universe_; }
  PointSet empty_set() const { return PointSet(depth_); }

  std::size_t basic_count() const { return basics_.size(); }
  /// Visible extent of basic i inside the universe.
  const PointSet& basic(std::size_t i) const { return basics_.at(i); }

  /// Sub-window with the given universe (intersected with the current one).
  Truncation restricted(const PointSet& subspace) const;
  bool is_restricted() const { return restricted_; }

  /// The whole (finite) space and all of its basics lie inside the window.
  bool fully_visible() const { return fully_visible_; }
  bool resolved(Point p) const;
  /// Points of the universe that are resolved.
  PointSet resolved_points() const;

 private:
  SpacePtr space_;
  std::size_t depth_;
  PointSet universe_;
  std::shared_ptr<const std::vector<PointSet>> raw_;
  std::vector<PointSet> basics_;
  std::vector<Point> order_;  // universe members, increasing
  bool restricted_ = false;
  bool fully_visible_ = false;
};

/// basic_open: extent of B_i among points 0..depth-1.
PointSet basic_open(const Truncation& t, std::size_t i);

/// B(x, n) = ⋂{B_i | x ∈ B_i, i <= n}, the empty intersection being the
/// whole window.
PointSet basis_nbhd(const Truncation& t, Point x, std::size_t n);

}  // namespace qpolish
