#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace fitpa {

// Fenwick tree over per-vertex sampling weights. add/sample are O(log n);
// rebuild() recomputes all partial sums from the leaf values to cancel
// accumulated floating-point drift.
class WeightIndex {
 public:
  explicit WeightIndex(std::size_t capacity = 0) { reserve(capacity); }

  void reserve(std::size_t capacity) {
    leaf_.reserve(capacity);
    tree_.reserve(capacity + 1);
  }

  std::size_t size() const { return leaf_.size(); }

  void push_back(double w) {
    leaf_.push_back(w);
    tree_.push_back(0.0);
    const std::size_t i = leaf_.size();  // 1-based position of the new leaf
    double acc = leaf_[i - 1];
    // Node i covers (i - lowbit(i), i]; fold in the already-built sums.
    for (std::size_t j = i - 1; j > i - (i & (~i + 1)); j -= j & (~j + 1)) acc += tree_[j - 1];
    tree_[i - 1] = acc;  // tree_ stored 0-based
    total_ += w;
  }

  void add(std::size_t idx, double delta) {
    leaf_[idx] += delta;
    for (std::size_t i = idx + 1; i <= leaf_.size(); i += i & (~i + 1)) tree_[i - 1] += delta;
    total_ += delta;
  }

  double weight(std::size_t idx) const { return leaf_[idx]; }
  double total() const { return total_; }

  // Smallest idx with prefix_sum(idx) > r for r in [0, total). Standard
  // binary-lifting descent.
  std::size_t sample(double r) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while ((mask << 1) <= leaf_.size()) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next <= leaf_.size() && tree_[next - 1] <= r) {
        pos = next;
        r -= tree_[next - 1];
      }
    }
    return pos < leaf_.size() ? pos : leaf_.size() - 1;
  }

  void rebuild() {
    const std::size_t n = leaf_.size();
    for (std::size_t i = 0; i < n; ++i) tree_[i] = leaf_[i];
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t j = i + (i & (~i + 1));
      if (j <= n) tree_[j - 1] += tree_[i - 1];
    }
    total_ = 0.0;
    for (double w : leaf_) total_ += w;
  }

  // Exact total from the leaves, for drift monitoring.
  double exact_total() const {
    double s = 0.0;
    for (double w : leaf_) s += w;
    return s;
  }

 private:
  std::vector<double> leaf_;
  std::vector<double> tree_;  // tree_[i] is the classic fenwick node i+1
  double total_ = 0.0;
};

}  // namespace fitpa
