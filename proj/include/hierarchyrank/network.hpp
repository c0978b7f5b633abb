#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hierarchyrank {

using NodeId = std::uint32_t;
using Weight = std::int64_t;

/// One placement: a person's doctoral institution and the institution that
/// hired them.
struct HiringRecord {
  std::string person_id;
  std::string phd_institution;
  int phd_year = 0;
  std::string discipline;
  std::string hire_institution;

  friend bool operator==(const HiringRecord&, const HiringRecord&) = default;
};

/// Bijection between institution names and dense ids. Ids follow the
/// lexicographic order of the names.
class NodeRegistry {
 public:
  NodeRegistry() = default;

  /// Sorts and deduplicates `names`.
  static NodeRegistry from_names(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(NodeId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<NodeId> find(const std::string& name) const;
  /// Throws ContractError for unknown names.
  NodeId id(const std::string& name) const;

  friend bool operator==(const NodeRegistry& a, const NodeRegistry& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  Weight weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct NamedEdge {
  std::string src;
  std::string dst;
  Weight weight = 1;
};

/// Net flow from a node to one neighbour: m(node, other) - m(other, node).
struct NetFlow {
  NodeId other = 0;
  Weight net = 0;
};

/// Immutable weighted directed network. m(i, j) counts Ph.D.s produced by i
/// and hired by j. Self-loops (self-hires) are kept.
class HiringNetwork {
 public:
  /// Aggregates duplicate (src, dst) pairs. Every weight must be positive.
  static HiringNetwork from_edges(NodeRegistry registry, std::vector<Edge> edges);
  /// Registry is the set of endpoint names.
  static HiringNetwork from_named_edges(const std::vector<NamedEdge>& edges);

  const NodeRegistry& registry() const noexcept { return registry_; }
  std::size_t n_nodes() const noexcept { return registry_.size(); }
  /// Stored edges sorted by (src, dst); all weights >= 1.
  std::span<const Edge> edges() const noexcept { return edges_; }
  Weight weight(NodeId src, NodeId dst) const;
  Weight total_weight() const noexcept { return total_weight_; }
  Weight self_loop_weight() const noexcept { return self_loop_weight_; }
  Weight non_self_loop_weight() const noexcept {
    return total_weight_ - self_loop_weight_;
  }

  /// Neighbours of `node` with a nonzero net flow, ascending by id.
  std::span<const NetFlow> net_flows(NodeId node) const;

  friend bool operator==(const HiringNetwork& a, const HiringNetwork& b) {
    return a.registry_ == b.registry_ && a.edges_ == b.edges_;
  }

 private:
  NodeRegistry registry_;
  std::vector<Edge> edges_;
  Weight total_weight_ = 0;
  Weight self_loop_weight_ = 0;
  std::vector<std::size_t> flow_offsets_;
  std::vector<NetFlow> flows_;
};

struct YearRange {
  int start = 0;  ///< inclusive
  int end = 0;    ///< exclusive

  /// Throws ContractError unless start < end.
  YearRange(int start_year, int end_year);
  bool contains(int year) const noexcept { return start <= year && year < end; }
};

/// Record filter. A record survives only if it passes every present clause;
/// the whitelist requires both endpoints to be listed.
struct NetworkFilter {
  std::optional<YearRange> years;
  std::optional<std::set<std::string>> disciplines;
  std::optional<std::set<std::string>> whitelist;

  bool admits(const HiringRecord& record) const;
};

struct DegreeSequences {
  std::vector<Weight> out_degree;
  std::vector<Weight> in_degree;

  friend bool operator==(const DegreeSequences&, const DegreeSequences&) = default;
};

/// Parses the records CSV (header
/// `person_id,phd_institution,phd_year,discipline,hire_institution`).
std::vector<HiringRecord> load_records(std::istream& in);
std::vector<HiringRecord> load_records_file(const std::string& path);
void write_records(std::ostream& out, const std::vector<HiringRecord>& records);

/// One institution per line; blank lines ignored.
std::set<std::string> load_whitelist(std::istream& in);
std::set<std::string> load_whitelist_file(const std::string& path);

std::vector<HiringRecord> filter_records(const std::vector<HiringRecord>& records,
                                         const NetworkFilter& filter);

/// Throws EmptyNetworkError when no record survives the filter.
HiringNetwork build_network(const std::vector<HiringRecord>& records,
                            const NetworkFilter& filter = {});

DegreeSequences degree_sequences(const HiringNetwork& net);

/// `src,dst,weight` rows sorted by (src name, dst name).
void write_edge_list(std::ostream& out, const HiringNetwork& net);
HiringNetwork load_edge_list(std::istream& in);
HiringNetwork load_edge_list_file(const std::string& path);

}  // namespace hierarchyrank
