#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sarf/clustering.hpp"
#include "sarf/decomposition.hpp"
#include "sarf/metrics.hpp"

namespace sarf {

/// {"universe_size": N, "clusters": {"C1": ["mod", ...], ...}}
std::string decomposition_to_json(const Decomposition& d);
/// Throws ParseError on malformed documents or a wrong universe_size.
Decomposition decomposition_from_json(std::string_view text);

/// {"leaves": [...], "merges": [{"left", "right", "into", "q_after"}, ...]}
std::string dendrogram_to_json(const Dendrogram& d);
Dendrogram dendrogram_from_json(std::string_view text);

std::string report_to_json(const MetricReport& r);
/// Aligned one-row table: MoJoFM, K, K_a, NED, MoJoSim, ... (requested only).
std::string report_to_text(const MetricReport& r);

std::string stability_to_json(const std::vector<StabilityStep>& steps);
std::string stability_to_text(const std::vector<StabilityStep>& steps);

/// Reads a whole file; throws std::system_error when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sarf
