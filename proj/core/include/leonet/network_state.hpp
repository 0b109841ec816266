#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "leonet/site_grid.hpp"
#include "leonet/space_object.hpp"

namespace leonet {

// All objects of one species resident in one orbit site.
struct Node {
  Species species = Species::Fragment;
  int site_id = -1;
  std::vector<SpaceObject> objects;

  int count() const { return static_cast<int>(objects.size()); }
  bool empty() const { return objects.empty(); }
};

struct CollisionCounters {
  long catastrophic = 0;
  long non_catastrophic = 0;
  long small = 0;
  long total() const { return catastrophic + non_catastrophic + small; }
};

// Full population snapshot: 4 * n_sites nodes plus the clock and cumulative
// event counters. Copyable value; each Monte Carlo run owns its state.
class NetworkState {
 public:
  explicit NetworkState(std::shared_ptr<const SiteGrid> grid);

  const SiteGrid& grid() const { return *grid_; }
  std::shared_ptr<const SiteGrid> grid_ptr() const { return grid_; }

  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  // Nodes are site-major: index = site_id * 4 + species.
  int node_index(Species s, int site_id) const {
    return site_id * kNumSpecies + static_cast<int>(s);
  }
  Node& node(int index) { return nodes_[static_cast<std::size_t>(index)]; }
  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  Node& node(Species s, int site_id) { return nodes_[static_cast<std::size_t>(node_index(s, site_id))]; }
  const Node& node(Species s, int site_id) const {
    return nodes_[static_cast<std::size_t>(node_index(s, site_id))];
  }
  std::vector<Node>& nodes() { return nodes_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Places an object into the node its (a, i) bins to. Out-of-domain objects
  // are tallied instead of inserted. Returns the receiving node index or -1.
  int insert(SpaceObject obj);

  std::int64_t take_object_id() { return next_object_id_++; }
  // Reserves a contiguous id block; returns the first id.
  std::int64_t take_object_id_block(std::int64_t n) {
    const std::int64_t first = next_object_id_;
    next_object_id_ += n;
    return first;
  }
  void reserve_ids(std::int64_t first_free);

  long count(Species s) const;
  long total_count() const;

  double epoch_years = 0.0;
  CollisionCounters counters;
  long reentered_total = 0;
  long escaped_total = 0;

 private:
  std::shared_ptr<const SiteGrid> grid_;
  std::vector<Node> nodes_;
  std::int64_t next_object_id_ = 1;
};

// Builds a state at epoch 0 from a flat population, dropping (and counting)
// out-of-domain objects.
NetworkState make_state(std::shared_ptr<const SiteGrid> grid,
                        const std::vector<SpaceObject>& population);

}  // namespace leonet
