#pragma once

#include <numeric>
#include <vector>

namespace hypcover::detail {

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  int componentCount() {
    int count = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) {
      if (find(i) == i) ++count;
    }
    return count;
  }

private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

} // namespace hypcover::detail
