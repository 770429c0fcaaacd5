#include "hk/analysis.hpp"

#include <map>
#include <stdexcept>

namespace hk {

Partition::Partition(std::vector<Block> blocks, Index agents) : agents_(agents) {
  std::vector<bool> seen(static_cast<std::size_t>(agents), false);
  Index covered = 0;
  for (auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    std::sort(block.begin(), block.end());
    for (Index i : block) {
      if (i < 0 || i >= agents) throw std::invalid_argument("partition index out of range");
      if (seen[static_cast<std::size_t>(i)]) throw std::invalid_argument("partition blocks overlap");
      seen[static_cast<std::size_t>(i)] = true;
      ++covered;
    }
  }
  if (covered != agents) throw std::invalid_argument("partition does not cover every agent");
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  blocks_ = std::move(blocks);
}

Partition Partition::from_labels(const std::vector<Index>& labels) {
  std::map<Index, Block> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(static_cast<Index>(i));
  std::vector<Block> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, block] : groups) blocks.push_back(std::move(block));
  return Partition(std::move(blocks), static_cast<Index>(labels.size()));
}

std::vector<std::size_t> Partition::block_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& b : blocks_) sizes.push_back(b.size());
  return sizes;
}

std::vector<std::size_t> Partition::labels() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(agents_));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (Index i : blocks_[b]) out[static_cast<std::size_t>(i)] = b;
  }
  return out;
}

bool Partition::coarsens(const Partition& finer) const {
  if (finer.agents_ != agents_) return false;
  const auto mine = labels();
  // Each fine block must fall inside a single coarse block.
  for (const auto& block : finer.blocks_) {
    const std::size_t target = mine[static_cast<std::size_t>(block.front())];
    for (Index i : block) {
      if (mine[static_cast<std::size_t>(i)] != target) return false;
    }
  }
  return true;
}

}  // namespace hk
