#include "sarf/distmap.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sarf/error.hpp"

namespace sarf {

namespace {

constexpr int kCell = 18;
constexpr int kGap = 2;
constexpr int kCellsPerRow = 16;
constexpr int kMargin = 10;
constexpr int kLabelHeight = 16;
constexpr int kGroupSpacing = 10;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Dark text on light fills, white on dark ones.
std::string_view text_color(std::string_view fill) {
  auto channel = [&](std::size_t at) { return std::stoi(std::string(fill.substr(at, 2)), nullptr, 16); };
  const int luma = (299 * channel(1) + 587 * channel(3) + 114 * channel(5)) / 1000;
  return luma > 140 ? "#000000" : "#ffffff";
}

}  // namespace

std::string cluster_code(std::size_t index) {
  std::string code;
  ++index;
  while (index > 0) {
    --index;
    code.insert(code.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return code;
}

DistributionMap DistributionMap::build(const Decomposition& computed,
                                       const Decomposition& reference) {
  if (computed.universe() != reference.universe()) {
    throw DomainError("distribution map needs decompositions over the same modules");
  }
  std::map<std::string, std::size_t> cluster_index;
  for (const auto& [name, _] : computed.clusters()) {
    cluster_index.emplace(name, cluster_index.size());
  }
  DistributionMap map;
  for (const auto& [group, modules] : reference.clusters()) {
    DistributionGroup g{group, {}};
    for (const auto& m : modules) {
      const std::string& cluster = computed.cluster_of(m);
      const std::size_t i = cluster_index.at(cluster);
      g.cells.push_back({m, cluster, cluster_code(i),
                         kDistributionPalette[i % kDistributionPalette.size()]});
    }
    map.groups.push_back(std::move(g));
  }
  return map;
}

std::string DistributionMap::to_svg() const {
  const int box_width = kCellsPerRow * (kCell + kGap) + kGap;
  std::ostringstream body;
  int y = kMargin;
  for (const auto& g : groups) {
    const int cells = static_cast<int>(g.cells.size());
    const int rows = std::max(1, (cells + kCellsPerRow - 1) / kCellsPerRow);
    const int box_height = rows * (kCell + kGap) + kGap;
    body << "  <g class=\"group\" data-name=\"" << xml_escape(g.name) << "\">\n";
    body << "    <text x=\"" << kMargin << "\" y=\"" << y + kLabelHeight - 4
         << "\" font-size=\"12\">" << xml_escape(g.name) << "</text>\n";
    const int top = y + kLabelHeight;
    body << "    <rect class=\"group-box\" x=\"" << kMargin << "\" y=\"" << top << "\" width=\""
         << box_width << "\" height=\"" << box_height
         << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (int i = 0; i < cells; ++i) {
      const auto& c = g.cells[static_cast<std::size_t>(i)];
      const int cx = kMargin + kGap + (i % kCellsPerRow) * (kCell + kGap);
      const int cy = top + kGap + (i / kCellsPerRow) * (kCell + kGap);
      body << "    <rect class=\"cell\" x=\"" << cx << "\" y=\"" << cy << "\" width=\"" << kCell
           << "\" height=\"" << kCell << "\" fill=\"" << c.color << "\" data-module=\""
           << xml_escape(c.module) << "\" data-cluster=\"" << xml_escape(c.cluster)
           << "\"><title>" << xml_escape(c.module) << " (" << xml_escape(c.cluster)
           << ")</title></rect>\n";
      body << "    <text x=\"" << cx + kCell / 2 << "\" y=\"" << cy + kCell - 5
           << "\" font-size=\"" << (c.code.size() > 1 ? 8 : 11)
           << "\" text-anchor=\"middle\" fill=\"" << text_color(c.color) << "\">" << c.code
           << "</text>\n";
    }
    body << "  </g>\n";
    y = top + box_height + kGroupSpacing;
  }
  const int width = box_width + 2 * kMargin;
  const int height = y - kGroupSpacing + kMargin;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\" font-family=\"monospace\">\n"
      << body.str() << "</svg>\n";
  return out.str();
}

std::string DistributionMap::to_text() const {
  std::ostringstream out;
  for (const auto& g : groups) {
    out << g.name << ":";
    for (const auto& c : g.cells) out << ' ' << c.code;
    out << '\n';
  }
  return out.str();
}

}  // namespace sarf
