#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "coalgmin/error.hpp"
#include "coalgmin/functor.hpp"

namespace coalgmin {

/// A partition of {0, ..., n-1} in canonical form: members sorted inside each
/// block, blocks sorted by least member.
class Partition {
 public:
  Partition() = default;

  static Partition from_blocks(std::size_t carrier_size, std::vector<std::vector<StateIndex>> blocks) {
    std::vector<bool> seen(carrier_size, false);
    std::size_t covered = 0;
    for (auto& block : blocks) {
      if (block.empty()) throw Error(ErrorKind::NotAPartition, "empty block");
      for (auto x : block) {
        if (x >= carrier_size) throw Error(ErrorKind::NotAPartition, "block member outside the carrier", std::to_string(x));
        if (seen[x]) throw Error(ErrorKind::NotAPartition, "state occurs in two blocks", std::to_string(x));
        seen[x] = true;
        ++covered;
      }
    }
    if (covered != carrier_size) throw Error(ErrorKind::NotAPartition, "blocks do not cover the carrier");
    Partition p;
    p.blocks_ = std::move(blocks);
    p.canonicalize(carrier_size);
    return p;
  }

  /// Groups states with equal keys; keys[x] is any ordered value.
  template <class Key>
  static Partition from_keys(std::span<const Key> keys) {
    std::map<Key, std::size_t> index;
    std::vector<std::vector<StateIndex>> blocks;
    for (std::size_t x = 0; x < keys.size(); ++x) {
      auto [it, inserted] = index.emplace(keys[x], blocks.size());
      if (inserted) blocks.emplace_back();
      blocks[it->second].push_back(x);
    }
    Partition p;
    p.blocks_ = std::move(blocks);
    p.canonicalize(keys.size());
    return p;
  }

  static Partition discrete(std::size_t n) {
    std::vector<std::size_t> keys(n);
    std::iota(keys.begin(), keys.end(), std::size_t{0});
    return from_keys<std::size_t>(keys);
  }

  static Partition single_block(std::size_t n) {
    std::vector<std::size_t> keys(n, 0);
    return from_keys<std::size_t>(keys);
  }

  const std::vector<std::vector<StateIndex>>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t carrier_size() const noexcept { return block_of_.size(); }
  std::size_t block_of(StateIndex x) const { return block_of_.at(x); }
  bool is_discrete() const noexcept { return blocks_.size() == block_of_.size(); }

  /// State -> index of its block.
  const std::vector<std::size_t>& block_map() const noexcept { return block_of_; }

  /// State -> least member of its block.
  std::vector<StateIndex> representatives() const {
    std::vector<StateIndex> out(block_of_.size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = blocks_[block_of_[x]].front();
    return out;
  }

  /// True if every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const {
    if (coarser.carrier_size() != carrier_size()) return false;
    for (const auto& block : blocks_) {
      auto b = coarser.block_of(block.front());
      for (auto x : block)
        if (coarser.block_of(x) != b) return false;
    }
    return true;
  }

  /// Finest partition coarser than both.
  static Partition join(const Partition& a, const Partition& b) {
    if (a.carrier_size() != b.carrier_size()) throw Error(ErrorKind::DomainMismatch, "join of partitions over different carriers");
    std::vector<std::size_t> parent(a.carrier_size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto* p : {&a, &b}) {
      for (const auto& block : p->blocks_) {
        for (auto x : block) {
          auto r1 = find(block.front());
          auto r2 = find(x);
          if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
        }
      }
    }
    std::vector<std::size_t> keys(parent.size());
    for (std::size_t x = 0; x < keys.size(); ++x) keys[x] = find(x);
    return from_keys<std::size_t>(keys);
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  void canonicalize(std::size_t carrier_size) {
    for (auto& block : blocks_) std::sort(block.begin(), block.end());
    std::sort(blocks_.begin(), blocks_.end(), [](const auto& l, const auto& r) { return l.front() < r.front(); });
    block_of_.assign(carrier_size, 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (auto x : blocks_[b]) block_of_[x] = b;
  }

  std::vector<std::vector<StateIndex>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// Nonempty fibers of the map as a partition of its domain.
inline Partition kernel_partition(std::span<const StateIndex> map) { return Partition::from_keys<StateIndex>(map); }

}  // namespace coalgmin
