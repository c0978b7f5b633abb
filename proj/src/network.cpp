#include "hierarchyrank/network.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>

#include "hierarchyrank/csv.hpp"
#include "hierarchyrank/errors.hpp"

namespace hierarchyrank {

namespace {

constexpr std::array<const char*, 5> kRecordColumns = {
    "person_id", "phd_institution", "phd_year", "discipline", "hire_institution"};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open input file '" + path + "'");
  return in;
}

bool is_blank(const csv::Row& row) {
  return row.fields.size() == 1 && csv::trim(row.fields[0]).empty();
}

template <typename Int>
std::optional<Int> parse_int(const std::string& text) {
  Int value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

void check_header(const std::optional<csv::Row>& header,
                  std::span<const char* const> expected) {
  if (!header) {
    throw FormatError(std::string("missing header; expected column '") +
                      expected[0] + "'", 1);
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i >= header->fields.size() || csv::trim(header->fields[i]) != expected[i]) {
      throw FormatError(std::string("malformed header: missing column '") +
                        expected[i] + "'", header->line);
    }
  }
  if (header->fields.size() != expected.size()) {
    throw FormatError("malformed header: unexpected extra column '" +
                      header->fields[expected.size()] + "'", header->line);
  }
}

}  // namespace

// ---------------------------------------------------------------- registry

NodeRegistry NodeRegistry::from_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  NodeRegistry reg;
  reg.names_ = std::move(names);
  reg.index_.reserve(reg.names_.size());
  for (std::size_t i = 0; i < reg.names_.size(); ++i) {
    reg.index_.emplace(reg.names_[i], static_cast<NodeId>(i));
  }
  return reg;
}

std::optional<NodeId> NodeRegistry::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId NodeRegistry::id(const std::string& name) const {
  auto found = find(name);
  if (!found) throw ContractError("unknown institution '" + name + "'");
  return *found;
}

// ----------------------------------------------------------------- network

HiringNetwork HiringNetwork::from_edges(NodeRegistry registry, std::vector<Edge> edges) {
  const auto n = registry.size();
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) throw ContractError("edge endpoint outside registry");
    if (e.weight < 1) throw ContractError("edge weights must be positive");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  // merge duplicates
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!merged.empty() && merged.back().src == e.src && merged.back().dst == e.dst) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  HiringNetwork net;
  net.registry_ = std::move(registry);
  net.edges_ = std::move(merged);
  for (const Edge& e : net.edges_) {
    net.total_weight_ += e.weight;
    if (e.src == e.dst) net.self_loop_weight_ += e.weight;
  }

  // Net-flow adjacency in CSR form.
  std::vector<std::map<NodeId, Weight>> flow(n);
  for (const Edge& e : net.edges_) {
    if (e.src == e.dst) continue;
    flow[e.src][e.dst] += e.weight;
    flow[e.dst][e.src] -= e.weight;
  }
  net.flow_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [other, w] : flow[i]) {
      if (w != 0) net.flows_.push_back({other, w});
    }
    net.flow_offsets_[i + 1] = net.flows_.size();
  }
  return net;
}

HiringNetwork HiringNetwork::from_named_edges(const std::vector<NamedEdge>& edges) {
  std::vector<std::string> names;
  names.reserve(edges.size() * 2);
  for (const NamedEdge& e : edges) {
    names.push_back(e.src);
    names.push_back(e.dst);
  }
  auto registry = NodeRegistry::from_names(std::move(names));
  std::vector<Edge> ids;
  ids.reserve(edges.size());
  for (const NamedEdge& e : edges) {
    ids.push_back({registry.id(e.src), registry.id(e.dst), e.weight});
  }
  return from_edges(std::move(registry), std::move(ids));
}

Weight HiringNetwork::weight(NodeId src, NodeId dst) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{src, dst, 0},
                             [](const Edge& a, const Edge& b) {
                               return a.src != b.src ? a.src < b.src : a.dst < b.dst;
                             });
  if (it != edges_.end() && it->src == src && it->dst == dst) return it->weight;
  return 0;
}

std::span<const NetFlow> HiringNetwork::net_flows(NodeId node) const {
  const auto begin = flow_offsets_.at(node);
  const auto end = flow_offsets_.at(node + 1);
  return std::span<const NetFlow>(flows_).subspan(begin, end - begin);
}

// ------------------------------------------------------------------ filter

YearRange::YearRange(int start_year, int end_year) : start(start_year), end(end_year) {
  if (start >= end) {
    throw ContractError("year range requires start < end, got " +
                        std::to_string(start) + ":" + std::to_string(end));
  }
}

bool NetworkFilter::admits(const HiringRecord& r) const {
  if (years && !years->contains(r.phd_year)) return false;
  if (disciplines && !disciplines->contains(r.discipline)) return false;
  if (whitelist &&
      (!whitelist->contains(r.phd_institution) || !whitelist->contains(r.hire_institution))) {
    return false;
  }
  return true;
}

// --------------------------------------------------------------------- I/O

std::vector<HiringRecord> load_records(std::istream& in) {
  csv::Reader reader(in);
  check_header(reader.next(), kRecordColumns);

  std::vector<HiringRecord> records;
  while (auto row = reader.next()) {
    if (is_blank(*row)) continue;
    if (row->fields.size() != kRecordColumns.size()) {
      throw FormatError("expected 5 fields, found " + std::to_string(row->fields.size()),
                        row->line);
    }
    HiringRecord rec;
    rec.person_id = csv::trim(row->fields[0]);
    rec.phd_institution = csv::trim(row->fields[1]);
    rec.discipline = csv::trim(row->fields[3]);
    rec.hire_institution = csv::trim(row->fields[4]);
    const auto year_text = csv::trim(row->fields[2]);
    const auto year = parse_int<int>(year_text);
    if (!year) throw FormatError("phd_year '" + year_text + "' is not an integer", row->line);
    if (*year <= 0) throw FormatError("phd_year must be positive", row->line);
    rec.phd_year = *year;
    if (rec.phd_institution.empty()) throw FormatError("empty phd_institution", row->line);
    if (rec.hire_institution.empty()) throw FormatError("empty hire_institution", row->line);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<HiringRecord> load_records_file(const std::string& path) {
  auto in = open_input(path);
  return load_records(in);
}

void write_records(std::ostream& out, const std::vector<HiringRecord>& records) {
  csv::write_row(out, {kRecordColumns.begin(), kRecordColumns.end()});
  for (const auto& r : records) {
    csv::write_row(out, {r.person_id, r.phd_institution, std::to_string(r.phd_year),
                         r.discipline, r.hire_institution});
  }
}

std::set<std::string> load_whitelist(std::istream& in) {
  std::set<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    auto name = csv::trim(line);
    if (!name.empty()) names.insert(std::move(name));
  }
  return names;
}

std::set<std::string> load_whitelist_file(const std::string& path) {
  auto in = open_input(path);
  return load_whitelist(in);
}

std::vector<HiringRecord> filter_records(const std::vector<HiringRecord>& records,
                                         const NetworkFilter& filter) {
  std::vector<HiringRecord> kept;
  std::copy_if(records.begin(), records.end(), std::back_inserter(kept),
               [&](const HiringRecord& r) { return filter.admits(r); });
  return kept;
}

HiringNetwork build_network(const std::vector<HiringRecord>& records,
                            const NetworkFilter& filter) {
  std::vector<NamedEdge> edges;
  for (const auto& r : records) {
    if (filter.admits(r)) edges.push_back({r.phd_institution, r.hire_institution, 1});
  }
  if (edges.empty()) throw EmptyNetworkError("empty network: no records survive the filter");
  return HiringNetwork::from_named_edges(edges);
}

DegreeSequences degree_sequences(const HiringNetwork& net) {
  DegreeSequences d;
  d.out_degree.assign(net.n_nodes(), 0);
  d.in_degree.assign(net.n_nodes(), 0);
  for (const Edge& e : net.edges()) {
    d.out_degree[e.src] += e.weight;
    d.in_degree[e.dst] += e.weight;
  }
  return d;
}

void write_edge_list(std::ostream& out, const HiringNetwork& net) {
  csv::write_row(out, {"src", "dst", "weight"});
  const auto& reg = net.registry();
  // Ids are lexicographic, so id order is name order.
  for (const Edge& e : net.edges()) {
    csv::write_row(out, {reg.name(e.src), reg.name(e.dst), std::to_string(e.weight)});
  }
}

HiringNetwork load_edge_list(std::istream& in) {
  static constexpr std::array<const char*, 3> columns = {"src", "dst", "weight"};
  csv::Reader reader(in);
  check_header(reader.next(), columns);

  std::vector<NamedEdge> edges;
  while (auto row = reader.next()) {
    if (is_blank(*row)) continue;
    if (row->fields.size() != columns.size()) {
      throw FormatError("expected 3 fields, found " + std::to_string(row->fields.size()),
                        row->line);
    }
    NamedEdge e{csv::trim(row->fields[0]), csv::trim(row->fields[1]), 0};
    if (e.src.empty() || e.dst.empty()) throw FormatError("empty institution", row->line);
    const auto w_text = csv::trim(row->fields[2]);
    const auto w = parse_int<Weight>(w_text);
    if (!w || *w < 1) {
      throw FormatError("weight '" + w_text + "' is not a positive integer", row->line);
    }
    e.weight = *w;
    edges.push_back(std::move(e));
  }
  if (edges.empty()) throw EmptyNetworkError("empty network: edge list has no rows");
  return HiringNetwork::from_named_edges(edges);
}

HiringNetwork load_edge_list_file(const std::string& path) {
  auto in = open_input(path);
  return load_edge_list(in);
}

}  // namespace hierarchyrank
