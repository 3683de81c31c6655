#include "sarf/decomposition.hpp"

#include <algorithm>

#include "sarf/error.hpp"

namespace sarf {

Decomposition::Decomposition(std::map<std::string, std::set<std::string>> clusters)
    : clusters_(std::move(clusters)) {
  for (const auto& [name, members] : clusters_) {
    if (members.empty()) throw DomainError("cluster '" + name + "' is empty");
    for (const auto& m : members) {
      auto [it, inserted] = owner_.emplace(m, name);
      if (!inserted) {
        throw DomainError("module '" + m + "' is in both '" + it->second + "' and '" + name +
                          "'");
      }
      universe_.insert(m);
    }
  }
}

Decomposition Decomposition::from_groups(const std::vector<std::set<std::string>>& groups) {
  std::vector<const std::set<std::string>*> order;
  for (const auto& g : groups) {
    if (g.empty()) throw DomainError("empty cluster");
    order.push_back(&g);
  }
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return *a->begin() < *b->begin(); });
  std::map<std::string, std::set<std::string>> named;
  for (std::size_t i = 0; i < order.size(); ++i) {
    named.emplace("C" + std::to_string(i + 1), *order[i]);
  }
  return Decomposition(std::move(named));
}

Decomposition Decomposition::single_cluster(const std::set<std::string>& universe,
                                            const std::string& name) {
  if (universe.empty()) return Decomposition();
  return Decomposition({{name, universe}});
}

Decomposition Decomposition::singletons(const std::set<std::string>& universe) {
  std::vector<std::set<std::string>> groups;
  for (const auto& m : universe) groups.push_back({m});
  return from_groups(groups);
}

const std::string& Decomposition::cluster_of(const std::string& module) const {
  auto it = owner_.find(module);
  if (it == owner_.end()) throw DomainError("module '" + module + "' not in decomposition");
  return it->second;
}

Decomposition Decomposition::restricted_to(const std::set<std::string>& keep) const {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [name, members] : clusters_) {
    std::set<std::string> kept;
    std::set_intersection(members.begin(), members.end(), keep.begin(), keep.end(),
                          std::inserter(kept, kept.end()));
    if (!kept.empty()) out.emplace(name, std::move(kept));
  }
  return Decomposition(std::move(out));
}

std::vector<std::set<std::string>> Decomposition::groups() const {
  std::vector<std::set<std::string>> out;
  for (const auto& [_, members] : clusters_) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

bool Decomposition::same_partition(const Decomposition& other) const {
  return groups() == other.groups();
}

}  // namespace sarf
