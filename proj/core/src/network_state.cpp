#include "leonet/network_state.hpp"

#include <algorithm>

namespace leonet {

NetworkState::NetworkState(std::shared_ptr<const SiteGrid> grid) : grid_(std::move(grid)) {
  nodes_.resize(static_cast<std::size_t>(grid_->n_sites()) * kNumSpecies);
  for (int site = 0; site < grid_->n_sites(); ++site) {
    for (Species s : kAllSpecies) {
      Node& n = nodes_[static_cast<std::size_t>(node_index(s, site))];
      n.species = s;
      n.site_id = site;
    }
  }
}

int NetworkState::insert(SpaceObject obj) {
  const SiteLookup where = grid_->site_of(obj.a_km, obj.inc_deg);
  if (where.placement == Placement::Reentered) {
    ++reentered_total;
    return -1;
  }
  if (where.placement == Placement::Escaped) {
    ++escaped_total;
    return -1;
  }
  const int idx = node_index(obj.species, where.site_id);
  nodes_[static_cast<std::size_t>(idx)].objects.push_back(std::move(obj));
  return idx;
}

void NetworkState::reserve_ids(std::int64_t first_free) {
  next_object_id_ = std::max(next_object_id_, first_free);
}

long NetworkState::count(Species s) const {
  long total = 0;
  for (int site = 0; site < grid_->n_sites(); ++site) {
    total += node(s, site).count();
  }
  return total;
}

long NetworkState::total_count() const {
  long total = 0;
  for (const Node& n : nodes_) total += n.count();
  return total;
}

NetworkState make_state(std::shared_ptr<const SiteGrid> grid,
                        const std::vector<SpaceObject>& population) {
  NetworkState state(std::move(grid));
  std::int64_t max_id = 0;
  for (const SpaceObject& obj : population) {
    max_id = std::max(max_id, obj.object_id);
    state.insert(obj);
  }
  state.reserve_ids(max_id + 1);
  return state;
}

}  // namespace leonet
