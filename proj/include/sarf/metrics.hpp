#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sarf/decomposition.hpp"
#include "sarf/graph.hpp"

namespace sarf {

/// Minimum number of move and join operations turning `from` into `to`.
/// Both must partition the same universe.
std::size_t mno(const Decomposition& from, const Decomposition& to);

/// Same quantity by breadth-first search over partitions; at most
/// kMnoBruteForceLimit modules.
inline constexpr std::size_t kMnoBruteForceLimit = 8;
std::size_t mno_brute_force(const Decomposition& from, const Decomposition& to);

std::size_t mojo(const Decomposition& c, const Decomposition& a);

/// (1 - mojo / n) * 100
double mojosim_from_counts(std::size_t mojo_value, std::size_t n);
double mojosim(const Decomposition& c, const Decomposition& a);

/// Largest mno(X, a) over all partitions X of a's universe.
std::size_t max_mno(const Decomposition& a);
/// Enumerates every partition X; at most kMaxMnoExhaustiveLimit modules.
inline constexpr std::size_t kMaxMnoExhaustiveLimit = 10;
std::size_t max_mno_exhaustive(const Decomposition& a);
/// Closed form from a's cluster sizes s_1 >= s_2 >= ... >= s_g:
///   N - min over q in [0, g] of (q + s_{q+1}),  with s_{g+1} = 0.
std::size_t max_mno_from_sizes(const Decomposition& a);

/// (1 - mno / max_mno) * 100; throws DomainError when max_mno is 0.
double mojofm_from_counts(std::size_t mno_value, std::size_t max_mno_value);
double mojofm(const Decomposition& c, const Decomposition& a);

/// Fraction of modules in clusters whose size lies in [5, max(20, N/5)].
double ned(const Decomposition& c);

struct VersionedDecomposition {
  std::string label;
  Decomposition decomposition;
};
using VersionSeries = std::vector<VersionedDecomposition>;

struct StabilityStep {
  std::string from_label;
  std::string to_label;
  /// Size of the universe shared by both versions.
  std::size_t shared = 0;
  double value = 0.0;
};

/// MoJoSim between each pair of consecutive versions, both restricted to
/// the modules they share.
std::vector<StabilityStep> stability(const VersionSeries& series);
double mean_stability(const std::vector<StabilityStep>& steps);

/// Percent of modules in the most populous package.
double occupancy(const PackageMap& p);
inline constexpr double kOccupancyWarningPercent = 40.0;

inline constexpr std::size_t kDefaultAuthThreshold = 5;
/// One cluster per package; clusters with at most `threshold` modules are
/// folded into their parent package (created when absent) until none with
/// a parent remains. Clusters are named by package path.
Decomposition auth_decomposition(const PackageMap& p,
                                 std::size_t threshold = kDefaultAuthThreshold);

/// Measures of a computed decomposition against a reference. Only the
/// requested entries are filled.
struct MetricReport {
  std::optional<std::size_t> universe_size;       // N
  std::optional<std::size_t> clusters;            // K
  std::optional<std::size_t> reference_clusters;  // K_a
  std::optional<std::size_t> mno_value;
  std::optional<std::size_t> max_mno_value;
  std::optional<std::size_t> mojo_value;
  std::optional<double> mojofm_value;
  std::optional<double> mojosim_value;
  std::optional<double> ned_value;
};

/// Recognized names: mojofm, mojosim, mojo, mno, max_mno, ned, k (both
/// cluster counts), n (universe size).
MetricReport evaluate(const Decomposition& computed, const Decomposition& reference,
                      const std::vector<std::string>& measures);
std::vector<std::string> default_measures();
bool is_known_measure(const std::string& name);

}  // namespace sarf
