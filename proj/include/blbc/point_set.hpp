#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blbc/geometry.hpp"

namespace blbc {

/// 1-based point index; index n is the n-th point of a set.
using Index = std::uint32_t;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a structural precondition (e.g. duplicate points).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, std::vector<Index> indices)
      : std::invalid_argument(what), indices_(std::move(indices)) {}
  const std::vector<Index>& indices() const { return indices_; }

 private:
  std::vector<Index> indices_;
};

/// Ordered list of points addressed by 1-based index.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {}
  PointSet(std::initializer_list<Point> points) : points_(points) {}

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const Point& operator[](Index i) const { return points_[i - 1]; }
  const Point& at(Index i) const {
    check_index(i);
    return points_[i - 1];
  }

  void push_back(Point p) { points_.push_back(std::move(p)); }
  const std::vector<Point>& points() const { return points_; }

  /// The first n points.
  PointSet prefix(std::size_t n) const {
    return PointSet(std::vector<Point>(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size()))));
  }

  void check_index(Index i) const {
    if (i < 1 || i > size()) {
      throw ArgumentError("point index " + std::to_string(i) + " out of range 1.." + std::to_string(size()));
    }
  }

  /// Throws ValidationError naming the lexicographically first duplicated
  /// index pair.
  void validate_distinct() const {
    std::vector<Index> order(size());
    std::iota(order.begin(), order.end(), Index{1});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return (*this)[a] < (*this)[b]; });
    std::pair<Index, Index> worst{0, 0};
    for (std::size_t k = 1; k < order.size(); ++k) {
      if ((*this)[order[k - 1]] == (*this)[order[k]]) {
        std::pair<Index, Index> dup{std::min(order[k - 1], order[k]), std::max(order[k - 1], order[k])};
        if (worst.first == 0 || dup < worst) worst = dup;
      }
    }
    if (worst.first != 0) {
      throw ValidationError("duplicate points at indices " + std::to_string(worst.first) + " and " +
                                std::to_string(worst.second) + ": " + (*this)[worst.first].str(),
                            {worst.first, worst.second});
    }
  }

  std::vector<IntegerPoint> homogeneous() const {
    std::vector<IntegerPoint> out;
    out.reserve(size());
    for (const auto& p : points_) out.push_back(IntegerPoint::from(p));
    return out;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> points_;
};

}  // namespace blbc
