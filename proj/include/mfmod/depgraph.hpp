#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfmod/ast.hpp"

#include <nlohmann/json.hpp>

namespace mfmod {

enum class EdgeLabel { control, data };

// Directed dependency edge between paragraphs. `detail` names the data item
// carrying a data edge and is empty for control edges.
struct GraphEdge {
    std::string from;
    std::string to;
    EdgeLabel label = EdgeLabel::control;
    std::string detail;

    bool operator==(const GraphEdge&) const = default;
};

struct DependencyGraph {
    std::vector<std::string> vertices; // declaration order
    std::vector<GraphEdge> edges;      // deterministic order
};

struct DependencyMatrix {
    std::vector<std::string> order;
    std::vector<std::vector<bool>> cells; // cells[i][j] = 1 iff any edge i->j
};

struct GraphMetrics {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0; // distinct (from, to) pairs
    std::vector<std::vector<std::string>> scc_list;
    bool has_cycle = false;
    std::optional<std::vector<std::string>> topological_order;
    std::map<std::string, std::size_t> fan_in;
    std::map<std::string, std::size_t> fan_out;
};

// Paragraph-level read/write sets, the basis for data edges. Targets of
// in-place arithmetic count as reads as well as writes.
struct AccessSets {
    std::vector<std::string> reads;  // sorted, distinct
    std::vector<std::string> writes; // sorted, distinct
};

AccessSets paragraph_accesses(const Paragraph& paragraph);

DependencyGraph build_graph(const Program& program);

DependencyMatrix to_matrix(const DependencyGraph& graph);

GraphMetrics analyze(const DependencyGraph& graph);

std::string export_dot(const DependencyGraph& graph);

// Stable text key for set comparisons across representations.
std::string edge_key(const GraphEdge& edge);

nlohmann::json graph_to_json(const DependencyGraph& graph);
nlohmann::json matrix_to_json(const DependencyMatrix& matrix);
nlohmann::json metrics_to_json(const GraphMetrics& metrics);

} // namespace mfmod
