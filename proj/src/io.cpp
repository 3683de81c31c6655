#include "sarf/io.hpp"

#include <cerrno>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "sarf/error.hpp"

namespace sarf {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

}  // namespace

std::string decomposition_to_json(const Decomposition& d) {
  ordered_json clusters = ordered_json::object();
  for (const auto& [name, members] : d.clusters()) {
    clusters[name] = std::vector<std::string>(members.begin(), members.end());
  }
  ordered_json j;
  j["universe_size"] = d.universe_size();
  j["clusters"] = std::move(clusters);
  return dump(j);
}

Decomposition decomposition_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("clusters") || !j["clusters"].is_object()) {
      throw ParseError(0, "decomposition JSON needs a \"clusters\" object");
    }
    std::map<std::string, std::set<std::string>> clusters;
    for (const auto& [name, members] : j["clusters"].items()) {
      auto& set = clusters[name];
      for (const auto& m : members) {
        if (!set.insert(m.get<std::string>()).second) {
          throw ParseError(0, "cluster '" + name + "' lists a module twice");
        }
      }
    }
    Decomposition d(std::move(clusters));
    if (j.contains("universe_size") &&
        j["universe_size"].get<std::size_t>() != d.universe_size()) {
      throw ParseError(0, "universe_size " + j["universe_size"].dump() + " does not match " +
                              std::to_string(d.universe_size()) + " listed modules");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid decomposition JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(0, std::string("invalid decomposition: ") + e.what());
  }
}

std::string dendrogram_to_json(const Dendrogram& d) {
  ordered_json merges = ordered_json::array();
  for (const auto& m : d.merges) {
    ordered_json r;
    r["left"] = m.left;
    r["right"] = m.right;
    r["into"] = m.into;
    r["q_after"] = m.q_after;
    merges.push_back(std::move(r));
  }
  ordered_json j;
  j["leaves"] = d.leaves;
  j["merges"] = std::move(merges);
  return dump(j);
}

Dendrogram dendrogram_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Dendrogram d;
    d.leaves = j.at("leaves").get<std::vector<std::string>>();
    for (const auto& r : j.at("merges")) {
      d.merges.push_back({r.at("left").get<std::size_t>(), r.at("right").get<std::size_t>(),
                          r.at("into").get<std::size_t>(), r.at("q_after").get<double>()});
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid dendrogram JSON: ") + e.what());
  }
}

std::string report_to_json(const MetricReport& r) {
  ordered_json j = ordered_json::object();
  if (r.mojofm_value) j["mojofm"] = *r.mojofm_value;
  if (r.clusters) j["K"] = *r.clusters;
  if (r.reference_clusters) j["K_a"] = *r.reference_clusters;
  if (r.ned_value) j["ned"] = *r.ned_value;
  if (r.mojosim_value) j["mojosim"] = *r.mojosim_value;
  if (r.mojo_value) j["mojo"] = *r.mojo_value;
  if (r.mno_value) j["mno"] = *r.mno_value;
  if (r.max_mno_value) j["n_maxops"] = *r.max_mno_value;
  if (r.universe_size) j["N"] = *r.universe_size;
  return dump(j);
}

std::string report_to_text(const MetricReport& r) {
  std::vector<std::pair<std::string, std::string>> cols;
  if (r.mojofm_value) cols.emplace_back("MoJoFM", fixed(*r.mojofm_value, 2));
  if (r.clusters) cols.emplace_back("K", std::to_string(*r.clusters));
  if (r.reference_clusters) cols.emplace_back("K_a", std::to_string(*r.reference_clusters));
  if (r.ned_value) cols.emplace_back("NED", fixed(*r.ned_value, 3));
  if (r.mojosim_value) cols.emplace_back("MoJoSim", fixed(*r.mojosim_value, 2));
  if (r.mojo_value) cols.emplace_back("MoJo", std::to_string(*r.mojo_value));
  if (r.mno_value) cols.emplace_back("mno", std::to_string(*r.mno_value));
  if (r.max_mno_value) cols.emplace_back("N_maxops", std::to_string(*r.max_mno_value));
  if (r.universe_size) cols.emplace_back("N", std::to_string(*r.universe_size));

  std::string head, row;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const auto& [name, value] = cols[i];
    const std::size_t width = std::max(name.size(), value.size());
    const std::string sep = i ? "  " : "";
    head += sep + std::string(width - name.size(), ' ') + name;
    row += sep + std::string(width - value.size(), ' ') + value;
  }
  return head + "\n" + row + "\n";
}

std::string stability_to_json(const std::vector<StabilityStep>& steps) {
  ordered_json transitions = ordered_json::array();
  for (const auto& s : steps) {
    ordered_json t;
    t["from"] = s.from_label;
    t["to"] = s.to_label;
    t["shared"] = s.shared;
    t["stability"] = s.value;
    transitions.push_back(std::move(t));
  }
  ordered_json j;
  j["transitions"] = std::move(transitions);
  j["average"] = mean_stability(steps);
  return dump(j);
}

std::string stability_to_text(const std::vector<StabilityStep>& steps) {
  std::size_t from_w = 4, to_w = 2;
  for (const auto& s : steps) {
    from_w = std::max(from_w, s.from_label.size());
    to_w = std::max(to_w, s.to_label.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream out;
  out << pad("from", from_w) << "  " << pad("to", to_w) << "  shared  Stability\n";
  for (const auto& s : steps) {
    const std::string shared = std::to_string(s.shared);
    const std::string value = fixed(s.value, 2);
    out << pad(s.from_label, from_w) << "  " << pad(s.to_label, to_w) << "  "
        << std::string(6 - std::min<std::size_t>(6, shared.size()), ' ') << shared << "  "
        << std::string(9 - std::min<std::size_t>(9, value.size()), ' ') << value << "\n";
  }
  const std::string avg = fixed(mean_stability(steps), 2);
  out << pad("average", from_w + to_w + 12) << std::string(9 - std::min<std::size_t>(9, avg.size()), ' ')
      << avg << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write '" + path + "'");
}

}  // namespace sarf
