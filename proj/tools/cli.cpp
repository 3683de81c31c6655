#include "cli.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "sarf/clustering.hpp"
#include "sarf/dedication.hpp"
#include "sarf/distmap.hpp"
#include "sarf/error.hpp"
#include "sarf/graph.hpp"
#include "sarf/io.hpp"
#include "sarf/metrics.hpp"

namespace sarf::cli {

namespace {

/// Thrown for bad flag combinations discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string algorithm = "sarf";
  std::string level = "auto";
  std::string separator = std::string(1, kDefaultNestingSeparator);
  std::size_t threshold = kDefaultAuthThreshold;
  std::string measures;
  std::string output;
  std::string format;
  std::string dendrogram_output;
  std::string weighted_output;
  bool restrict_universe = false;
};

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output.empty()) {
    out << content;
  } else {
    write_file(cfg.output, content);
  }
}

char separator_of(const RunConfig& cfg) {
  if (cfg.separator.size() != 1) throw UsageError("--separator must be a single character");
  return cfg.separator.front();
}

bool member_level(const RunConfig& cfg, const std::string& text) {
  if (cfg.level == "member") return true;
  if (cfg.level == "module") return false;
  const std::size_t columns = leading_column_count(text);
  if (columns == 5) return true;
  if (columns == 2 || columns == 3) return false;
  throw ParseError(0, "cannot infer graph level from " + std::to_string(columns) +
                          " columns (expected 5 for member edges, 2 or 3 for module edges)");
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::pair<Decomposition, Decomposition> read_pair(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2) {
    throw UsageError("expected two --input files: computed then reference");
  }
  Decomposition computed = decomposition_from_json(read_file(cfg.inputs[0]));
  Decomposition reference = decomposition_from_json(read_file(cfg.inputs[1]));
  if (computed.universe() != reference.universe()) {
    if (!cfg.restrict_universe) {
      throw DomainError("decompositions cover different module sets; pass --restrict to compare "
                        "on the shared modules");
    }
    std::set<std::string> shared;
    std::set_intersection(computed.universe().begin(), computed.universe().end(),
                          reference.universe().begin(), reference.universe().end(),
                          std::inserter(shared, shared.end()));
    if (shared.empty()) throw DomainError("decompositions share no modules");
    computed = computed.restricted_to(shared);
    reference = reference.restricted_to(shared);
  }
  return {std::move(computed), std::move(reference)};
}

const std::string& single_input(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw UsageError("expected exactly one --input file");
  return cfg.inputs.front();
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out) {
  const char sep = separator_of(cfg);
  const std::string text = read_file(single_input(cfg));
  const bool newman = cfg.algorithm == "newman";
  ClusteringResult result;
  if (member_level(cfg, text)) {
    const MemberGraph g = parse_member_graph(text);
    result = newman ? cluster_newman_unweighted(g, sep) : cluster_sarf(g, sep);
  } else {
    const WeightedDigraph g = parse_class_graph(text);
    result = newman ? cluster_newman_unweighted(g) : cluster_sarf(g);
  }
  if (!cfg.dendrogram_output.empty()) {
    write_file(cfg.dendrogram_output, dendrogram_to_json(result.dendrogram));
  }
  if (!cfg.weighted_output.empty()) {
    write_file(cfg.weighted_output, write_class_graph(result.weighted));
  }
  emit(cfg, decomposition_to_json(result.decomposition), out);
  return kExitOk;
}

int cmd_dedication(const RunConfig& cfg, std::ostream& out) {
  const char sep = separator_of(cfg);
  const std::string text = read_file(single_input(cfg));
  const WeightedDigraph weighted =
      member_level(cfg, text)
          ? dedication_multilevel(normalize(parse_member_graph(text), sep))
          : dedication_simple(parse_class_graph(text));
  emit(cfg, write_class_graph(weighted), out);
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  auto measures = cfg.measures.empty() ? default_measures() : split_csv(cfg.measures);
  for (const auto& m : measures) {
    if (!is_known_measure(m)) throw UsageError("unknown measure '" + m + "'");
  }
  const auto [computed, reference] = read_pair(cfg);
  const MetricReport report = evaluate(computed, reference, measures);
  emit(cfg, cfg.format == "text" ? report_to_text(report) : report_to_json(report), out);
  return kExitOk;
}

int cmd_authdecomp(const RunConfig& cfg, std::ostream& out) {
  const PackageMap packages = parse_package_map(read_file(single_input(cfg)));
  if (packages.empty()) throw DomainError("package map is empty");
  emit(cfg, decomposition_to_json(auth_decomposition(packages, cfg.threshold)), out);
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() < 2) throw UsageError("stability needs at least two --input files");
  VersionSeries series;
  for (const auto& path : cfg.inputs) {
    series.push_back({path, decomposition_from_json(read_file(path))});
  }
  const auto steps = stability(series);
  emit(cfg, cfg.format == "json" ? stability_to_json(steps) : stability_to_text(steps), out);
  return kExitOk;
}

int cmd_occupancy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PackageMap packages = parse_package_map(read_file(single_input(cfg)));
  const double value = occupancy(packages);
  std::string largest;
  std::size_t largest_size = 0;
  for (const auto& [name, modules] : packages.packages()) {
    if (modules.size() > largest_size) {
      largest = name;
      largest_size = modules.size();
    }
  }
  std::string content;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["occupancy"] = value;
    j["largest_package"] = largest;
    j["largest_size"] = largest_size;
    j["modules"] = packages.size();
    content = j.dump(2) + "\n";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    content = "Occupancy: " + std::string(buf) + "% (package " + largest + ", " +
              std::to_string(largest_size) + " of " + std::to_string(packages.size()) +
              " modules)\n";
  }
  if (value > kOccupancyWarningPercent) {
    err << "warning: occupancy exceeds " << kOccupancyWarningPercent
        << "%; the package structure is a weak authoritative decomposition\n";
  }
  emit(cfg, content, out);
  return kExitOk;
}

int cmd_distmap(const RunConfig& cfg, std::ostream& out) {
  const auto [computed, reference] = read_pair(cfg);
  const DistributionMap map = DistributionMap::build(computed, reference);
  emit(cfg, cfg.format == "text" ? map.to_text() : map.to_svg(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependency-graph clustering with Dedication-weighted modularity, and "
               "decomposition evaluation",
               "sarf-kit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_inputs = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--input,-i", cfg.inputs, help)->required()->check(CLI::ExistingFile);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output, "Output file (default: standard output)");
  };
  auto add_graph_flags = [&](CLI::App* sub) {
    sub->add_option("--level", cfg.level, "Input graph level (auto: 5 columns = member)")
        ->check(CLI::IsMember({"auto", "member", "module"}));
    sub->add_option("--separator", cfg.separator, "Nesting separator in module names");
  };

  auto* cluster = app.add_subcommand("cluster", "Cluster a member- or module-level graph");
  add_inputs(cluster, "Dependency graph TSV");
  add_graph_flags(cluster);
  cluster->add_option("--algorithm", cfg.algorithm, "sarf (Dedication-weighted) or newman")
      ->check(CLI::IsMember({"sarf", "newman"}));
  cluster->add_option("--dendrogram", cfg.dendrogram_output, "Also write the dendrogram JSON");
  cluster->add_option("--weighted-graph", cfg.weighted_output,
                      "Also write the clustered weighted graph TSV");
  cluster->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json"}));
  add_output(cluster);

  auto* dedication = app.add_subcommand("dedication", "Emit the Dedication-weighted graph");
  add_inputs(dedication, "Dependency graph TSV");
  add_graph_flags(dedication);
  dedication->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"tsv"}));
  add_output(dedication);

  auto* eval = app.add_subcommand("eval", "Compare a computed decomposition to a reference");
  add_inputs(eval, "Computed decomposition JSON, then reference decomposition JSON");
  eval->add_option("--measures", cfg.measures,
                   "Comma-separated: mojofm,mojosim,mojo,mno,max_mno,ned,k,n");
  eval->add_flag("--restrict", cfg.restrict_universe, "Compare on the shared modules only");
  eval->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  add_output(eval);

  auto* authdecomp = app.add_subcommand("authdecomp", "Derive a decomposition from packages");
  add_inputs(authdecomp, "Package TSV");
  authdecomp->add_option("--threshold", cfg.threshold,
                         "Clusters of at most this size fold into their parent");
  authdecomp->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json"}));
  add_output(authdecomp);

  auto* stab = app.add_subcommand("stability", "MoJoSim between consecutive versions");
  add_inputs(stab, "Decomposition JSON files in version order");
  stab->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  add_output(stab);

  auto* occ = app.add_subcommand("occupancy", "Share of modules in the largest package");
  add_inputs(occ, "Package TSV");
  occ->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  add_output(occ);

  auto* distmap = app.add_subcommand("distmap", "Render a distribution map");
  add_inputs(distmap, "Computed decomposition JSON, then reference decomposition JSON");
  distmap->add_flag("--restrict", cfg.restrict_universe, "Render the shared modules only");
  distmap->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"svg", "text"}));
  add_output(distmap);

  std::vector<std::string> argv_storage{"sarf-kit"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cluster->parsed()) return cmd_cluster(cfg, out);
    if (dedication->parsed()) return cmd_dedication(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (authdecomp->parsed()) return cmd_authdecomp(cfg, out);
    if (stab->parsed()) return cmd_stability(cfg, out);
    if (occ->parsed()) return cmd_occupancy(cfg, out, err);
    if (distmap->parsed()) return cmd_distmap(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace sarf::cli
