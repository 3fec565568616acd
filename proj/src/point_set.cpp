#include "qpolish/point_set.hpp"

#include <sstream>
#include <stdexcept>

namespace qpolish {

PointSet::PointSet(std::size_t depth, std::initializer_list<Point> members) : bits_(depth) {
  for (Point p : members) insert(p);
}

PointSet::PointSet(std::size_t depth, const std::vector<Point>& members) : bits_(depth) {
  for (Point p : members) insert(p);
}

PointSet PointSet::full(std::size_t depth) {
  PointSet s(depth);
  s.bits_.set();
  return s;
}

PointSet PointSet::range(std::size_t depth, std::size_t count) {
  PointSet s(depth);
  for (std::size_t i = 0; i < count && i < depth; ++i) s.bits_.set(i);
  return s;
}

void PointSet::insert(Point p) {
  if (p >= bits_.size()) {
    throw std::out_of_range("point " + std::to_string(p) + " outside truncation of depth " +
                            std::to_string(bits_.size()));
  }
  bits_.set(p);
}

void PointSet::erase(Point p) {
  if (p < bits_.size()) bits_.reset(p);
}

Point PointSet::first() const {
  auto f = bits_.find_first();
  return f == decltype(bits_)::npos ? npos : f;
}

Point PointSet::next(Point p) const {
  auto f = bits_.find_next(p);
  return f == decltype(bits_)::npos ? npos : f;
}

PointSet& PointSet::operator&=(const PointSet& o) {
  bits_ &= o.bits_;
  return *this;
}
PointSet& PointSet::operator|=(const PointSet& o) {
  bits_ |= o.bits_;
  return *this;
}
PointSet& PointSet::operator-=(const PointSet& o) {
  bits_ -= o.bits_;
  return *this;
}

std::vector<Point> PointSet::members() const { return {begin(), end()}; }

std::string PointSet::str() const {
  std::ostringstream os;
  os << '{';
  bool first_member = true;
  for (Point p : *this) {
    if (!first_member) os << ',';
    os << p;
    first_member = false;
  }
  os << '}';
  return os.str();
}

}  // namespace qpolish
