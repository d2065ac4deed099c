#pragma once

#include <cstddef>
#include <span>

#include "sling/hp_index.hpp"
#include "sling/index.hpp"

namespace sling {

// Read access to an index for query processing. Implementations are safe to
// share between threads.
class IndexView {
 public:
  virtual ~IndexView() = default;

  virtual const SlingParams& params() const = 0;
  virtual std::size_t num_nodes() const = 0;
  virtual std::span<const double> correction() const = 0;
  virtual std::uint64_t graph_fingerprint() const = 0;
  // Stored set of v. May fill and return `scratch` (disk-resident indexes) or
  // return a reference into the index itself.
  virtual const HpSet& hp_set(NodeId v, HpSet& scratch) const = 0;
};

class MemoryIndexView final : public IndexView {
 public:
  explicit MemoryIndexView(const SlingIndex& index) noexcept : index_(&index) {}

  const SlingParams& params() const override { return index_->params; }
  std::size_t num_nodes() const override { return index_->num_nodes(); }
  std::span<const double> correction() const override { return index_->correction; }
  std::uint64_t graph_fingerprint() const override { return index_->graph_fingerprint; }
  const HpSet& hp_set(NodeId v, HpSet&) const override { return index_->hp[v]; }

 private:
  const SlingIndex* index_;
};

}  // namespace sling
