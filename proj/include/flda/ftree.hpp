#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "flda/error.hpp"

namespace flda {

/// Complete binary tree over an unnormalized multinomial of dimension T:
/// leaves hold the weights, every internal node the sum of its two children,
/// the root the total mass. Sampling walks the tree top-down and a single
/// weight change touches only the leaf-to-root path, so both cost O(log T).
///
/// Stored as a 1-based heap array of length 2*T' where T' is T rounded up to
/// a power of two; leaves beyond T stay exactly zero and are unreachable by
/// sample(). Topics are 0-based: topic t lives at array index T' + t.
class FTree {
 public:
  FTree() = default;

  explicit FTree(int size) { reset(size); }

  explicit FTree(std::span<const double> weights) { assign(weights); }

  /// Resize to `size` zero leaves.
  void reset(int size) {
    if (size < 1) throw ContractViolationError("FTree: size must be >= 1");
    size_ = size;
    leaf_base_ = static_cast<int>(std::bit_ceil(static_cast<unsigned>(size)));
    f_.assign(2 * static_cast<std::size_t>(leaf_base_), 0.0);
  }

  /// Rebuild from a full weight vector in Theta(T).
  void assign(std::span<const double> weights) {
    reset(static_cast<int>(weights.size()));
    for (std::size_t t = 0; t < weights.size(); ++t) {
      if (weights[t] < 0.0)
        throw InvalidDistributionError("FTree: negative weight");
      f_[leaf_base_ + t] = weights[t];
    }
    rebuild();
  }

  /// Recompute every internal node from the leaves (drift flush).
  void rebuild() {
    for (int i = leaf_base_ - 1; i >= 1; --i) f_[i] = f_[2 * i] + f_[2 * i + 1];
  }

  int size() const { return size_; }

  /// Total mass, i.e. the root value.
  double total() const { return size_ ? f_[1] : 0.0; }

  double leaf(int t) const { return f_[leaf_base_ + check_topic(t)]; }

  /// Raw heap-array access, 1-based: node(1) is the root, node(2i)/node(2i+1)
  /// the children of i, leaves from node(leaf_base()).
  double node(int i) const {
    if (i < 1 || i >= 2 * leaf_base_)
      throw ContractViolationError("FTree: node index out of range");
    return f_[i];
  }

  int leaf_base() const { return leaf_base_; }

  /// z = min{t : sum_{s<=t} w_s > u} for u in [0, total()). Descends right
  /// when u >= left-child sum (subtracting it), left otherwise. Never lands
  /// on a zero leaf: a right move requires positive mass on the right.
  int sample(double u) const {
    if (size_ < 1 || !(u >= 0.0) || !(u < f_[1]))
      throw ContractViolationError("FTree::sample: u out of range");
    std::size_t i = 1;
    const std::size_t base = static_cast<std::size_t>(leaf_base_);
    while (i < base) {
      const double left = f_[2 * i];
      if (u >= left && f_[2 * i + 1] > 0.0) {
        u -= left;
        i = 2 * i + 1;
      } else {
        i = 2 * i;
      }
      ++touched_;
    }
    if (f_[i] == 0.0) i = nearest_positive_leaf(i);
    return static_cast<int>(i - base);
  }

  /// Add delta to leaf t and every ancestor. A resulting leaf in
  /// [-1e-12 * max(1, total), 0) is cancellation noise and clamps to zero;
  /// anything more negative is a broken caller.
  void update(int t, double delta) {
    std::size_t i = static_cast<std::size_t>(leaf_base_) + check_topic(t);
    const double next = f_[i] + delta;
    if (next < 0.0) {
      const double tol = 1e-12 * (f_[1] > 1.0 ? f_[1] : 1.0);
      if (next < -tol)
        throw ContractViolationError("FTree::update: leaf driven negative");
      delta = -f_[i];
    }
    for (; i >= 1; i /= 2) {
      f_[i] += delta;
      ++touched_;
    }
  }

  /// Leaf-anchored update: set leaf t to `target` exactly, propagating the
  /// difference upward. Bounds per-leaf float error to one rounding step.
  void set_leaf(int t, double target) {
    update(t, target - f_[leaf_base_ + check_topic(t)]);
  }

  /// Cumulative count of tree nodes visited by sample/update, for
  /// per-step-cost assertions in tests.
  std::uint64_t nodes_touched() const { return touched_; }

 private:
  int check_topic(int t) const {
    if (t < 0 || t >= size_)
      throw ContractViolationError("FTree: topic index out of range");
    return t;
  }

  // Fallback for accumulated float drift in internal nodes; unreachable on a
  // freshly rebuilt tree.
  std::size_t nearest_positive_leaf(std::size_t i) const {
    const std::size_t base = static_cast<std::size_t>(leaf_base_);
    for (std::size_t j = i; j-- > base;)
      if (f_[j] > 0.0) return j;
    for (std::size_t j = i + 1; j < base + static_cast<std::size_t>(size_); ++j)
      if (f_[j] > 0.0) return j;
    throw InvalidDistributionError("FTree::sample: no positive leaf");
  }

  int size_ = 0;
  int leaf_base_ = 1;
  std::vector<double> f_;
  mutable std::uint64_t touched_ = 0;
};

}  // namespace flda
