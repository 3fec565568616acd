#include "qpolish/truncation.hpp"

#include <stdexcept>

namespace qpolish {

Truncation::Truncation(SpacePtr space, std::size_t depth) : space_(std::move(space)), depth_(depth) {
  if (!space_) throw std::invalid_argument("null space");
  std::size_t points = depth_;
  if (auto c = space_->point_count()) points = std::min(points, *c);
  universe_ = PointSet::range(depth_, points);

  std::size_t nbasics = depth_;
  if (auto c = space_->basic_count()) nbasics = std::min(nbasics, *c);

  auto raw = std::make_shared<std::vector<PointSet>>();
  raw->reserve(nbasics);
  for (std::size_t i = 0; i < nbasics; ++i) {
    PointSet b(depth_);
    for (Point p = 0; p < points; ++p) {
      if (space_->in_basic(p, i)) b.insert(p);
    }
    raw->push_back(std::move(b));
  }
  raw_ = std::move(raw);
  basics_ = *raw_;
  order_ = universe_.members();

  const auto pc = space_->point_count();
  const auto bc = space_->basic_count();
  fully_visible_ = pc && bc && *pc <= depth_ && *bc <= depth_;
}

Truncation Truncation::restricted(const PointSet& subspace) const {
  Truncation t = *this;
  t.universe_ &= subspace;
  for (std::size_t i = 0; i < t.basics_.size(); ++i) t.basics_[i] = (*raw_)[i] & t.universe_;
  t.order_ = t.universe_.members();
  t.restricted_ = true;
  return t;
}

bool Truncation::resolved(Point p) const {
  if (!universe_.contains(p)) return false;
  if (fully_visible_) return true;
  // position of p in the universe
  auto it = std::lower_bound(order_.begin(), order_.end(), p);
  const auto pos = static_cast<std::size_t>(it - order_.begin());
  return 2 * pos < order_.size();
}

PointSet Truncation::resolved_points() const {
  PointSet out(depth_);
  for (Point p : universe_) {
    if (resolved(p)) out.insert(p);
  }
  return out;
}

PointSet basic_open(const Truncation& t, std::size_t i) {
  if (i >= t.depth()) throw std::out_of_range("basic index outside the truncation");
  if (i >= t.basic_count()) return t.empty_set();
  return t.basic(i);
}

PointSet basis_nbhd(const Truncation& t, Point x, std::size_t n) {
  if (x >= t.depth() || n >= t.depth()) throw std::out_of_range("basis_nbhd arguments outside the truncation");
  PointSet out = t.universe();
  const std::size_t last = std::min(n + 1, t.basic_count());
  for (std::size_t i = 0; i < last; ++i) {
    if (t.basic(i).contains(x)) out &= t.basic(i);
  }
  return out;
}

}  // namespace qpolish
