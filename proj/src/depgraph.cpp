#include "mfmod/depgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mfmod {

namespace {

void add_expr_reads(const ExprRef& expr, std::set<std::string>& reads) {
    std::vector<std::string> vars;
    collect_vars(expr, vars);
    reads.insert(vars.begin(), vars.end());
}

void scan_statements(const std::vector<Stmt>& statements, std::set<std::string>& reads,
                     std::set<std::string>& writes, std::set<std::string>& performs) {
    for (const auto& stmt : statements) {
        if (const auto* move = std::get_if<MoveStmt>(&stmt.node)) {
            add_expr_reads(move->source, reads);
            writes.insert(move->targets.begin(), move->targets.end());
        } else if (const auto* compute = std::get_if<ComputeStmt>(&stmt.node)) {
            add_expr_reads(compute->expr, reads);
            writes.insert(compute->target);
        } else if (const auto* arith = std::get_if<ArithStmt>(&stmt.node)) {
            for (const auto& operand : arith->operands)
                add_expr_reads(operand, reads);
            // The stored value is an operand of in-place arithmetic, so
            // targets are read as well as written.
            for (const auto& target : arith->targets) {
                reads.insert(target);
                writes.insert(target);
            }
        } else if (const auto* branch = std::get_if<IfStmt>(&stmt.node)) {
            add_expr_reads(branch->condition, reads);
            scan_statements(branch->then_branch, reads, writes, performs);
            scan_statements(branch->else_branch, reads, writes, performs);
        } else if (const auto* perform = std::get_if<PerformStmt>(&stmt.node)) {
            performs.insert(perform->target);
            if (perform->kind == PerformKind::times)
                add_expr_reads(perform->count, reads);
            if (perform->kind == PerformKind::until)
                add_expr_reads(perform->condition, reads);
        } else if (const auto* display = std::get_if<DisplayStmt>(&stmt.node)) {
            for (const auto& operand : display->operands)
                add_expr_reads(operand, reads);
        } else if (const auto* accept = std::get_if<AcceptStmt>(&stmt.node)) {
            writes.insert(accept->target);
        }
    }
}

} // namespace

AccessSets paragraph_accesses(const Paragraph& paragraph) {
    std::set<std::string> reads, writes, performs;
    scan_statements(paragraph.statements, reads, writes, performs);
    AccessSets sets;
    sets.reads.assign(reads.begin(), reads.end());
    sets.writes.assign(writes.begin(), writes.end());
    return sets;
}

DependencyGraph build_graph(const Program& program) {
    DependencyGraph graph;
    std::vector<std::set<std::string>> reads(program.paragraphs.size());
    std::vector<std::set<std::string>> writes(program.paragraphs.size());
    std::vector<std::set<std::string>> performs(program.paragraphs.size());

    for (std::size_t i = 0; i < program.paragraphs.size(); ++i) {
        graph.vertices.push_back(program.paragraphs[i].name);
        scan_statements(program.paragraphs[i].statements, reads[i], writes[i],
                        performs[i]);
    }

    // Emit edges in (from, to) vertex order: control first, then data edges
    // ordered by item name, so output is deterministic.
    for (std::size_t u = 0; u < graph.vertices.size(); ++u) {
        for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
            if (u == v)
                continue;
            if (performs[u].count(graph.vertices[v]) > 0)
                graph.edges.push_back(GraphEdge{graph.vertices[u], graph.vertices[v],
                                                EdgeLabel::control, ""});
            for (const auto& item : writes[u]) {
                if (reads[v].count(item) > 0)
                    graph.edges.push_back(GraphEdge{graph.vertices[u],
                                                    graph.vertices[v], EdgeLabel::data,
                                                    item});
            }
        }
    }
    return graph;
}

DependencyMatrix to_matrix(const DependencyGraph& graph) {
    DependencyMatrix matrix;
    matrix.order = graph.vertices;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i)
        index.emplace(graph.vertices[i], i);
    matrix.cells.assign(graph.vertices.size(),
                        std::vector<bool>(graph.vertices.size(), false));
    for (const auto& edge : graph.edges)
        matrix.cells[index.at(edge.from)][index.at(edge.to)] = true;
    return matrix;
}

GraphMetrics analyze(const DependencyGraph& graph) {
    GraphMetrics metrics;
    metrics.vertex_count = graph.vertices.size();

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i)
        index.emplace(graph.vertices[i], i);

    // Distinct (from, to) pairs drive edge_count, fan-in/out, and topology.
    std::vector<std::set<std::size_t>> succ(graph.vertices.size());
    bool self_edge = false;
    for (const auto& edge : graph.edges) {
        std::size_t u = index.at(edge.from);
        std::size_t v = index.at(edge.to);
        if (u == v)
            self_edge = true;
        succ[u].insert(v);
    }
    for (const auto& name : graph.vertices) {
        metrics.fan_in[name] = 0;
        metrics.fan_out[name] = 0;
    }
    for (std::size_t u = 0; u < succ.size(); ++u) {
        metrics.edge_count += succ[u].size();
        metrics.fan_out[graph.vertices[u]] = succ[u].size();
        for (std::size_t v : succ[u])
            ++metrics.fan_in[graph.vertices[v]];
    }

    // Tarjan strongly connected components, iterative.
    const std::size_t n = graph.vertices.size();
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> disc(n, none), low(n, none);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t timer = 0;
    std::vector<std::vector<std::size_t>> components;

    struct Frame {
        std::size_t v;
        std::set<std::size_t>::const_iterator next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (disc[root] != none)
            continue;
        std::vector<Frame> frames;
        disc[root] = low[root] = timer++;
        stack.push_back(root);
        on_stack[root] = true;
        frames.push_back(Frame{root, succ[root].begin()});
        while (!frames.empty()) {
            Frame& frame = frames.back();
            if (frame.next != succ[frame.v].end()) {
                std::size_t w = *frame.next++;
                if (disc[w] == none) {
                    disc[w] = low[w] = timer++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back(Frame{w, succ[w].begin()});
                } else if (on_stack[w]) {
                    low[frame.v] = std::min(low[frame.v], disc[w]);
                }
            } else {
                std::size_t v = frame.v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == disc[v]) {
                    std::vector<std::size_t> component;
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component.push_back(w);
                        if (w == v)
                            break;
                    }
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& component : components) {
        std::vector<std::string> names;
        for (std::size_t v : component)
            names.push_back(graph.vertices[v]);
        if (component.size() > 1)
            metrics.has_cycle = true;
        metrics.scc_list.push_back(std::move(names));
    }
    if (self_edge)
        metrics.has_cycle = true;

    if (!metrics.has_cycle) {
        // Kahn's algorithm; ties resolved by declaration order.
        std::vector<std::size_t> in_degree(n, 0);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v : succ[u])
                ++in_degree[v];
        std::vector<bool> placed(n, false);
        std::vector<std::string> order;
        for (std::size_t placed_count = 0; placed_count < n; ++placed_count) {
            std::size_t pick = none;
            for (std::size_t v = 0; v < n; ++v) {
                if (!placed[v] && in_degree[v] == 0) {
                    pick = v;
                    break;
                }
            }
            placed[pick] = true;
            order.push_back(graph.vertices[pick]);
            for (std::size_t v : succ[pick])
                --in_degree[v];
        }
        metrics.topological_order = std::move(order);
    }
    return metrics;
}

std::string export_dot(const DependencyGraph& graph) {
    std::ostringstream out;
    out << "digraph dependencies {\n";
    out << "  rankdir=LR;\n";
    for (const auto& vertex : graph.vertices)
        out << "  \"" << vertex << "\";\n";

    // One DOT edge per (from, to, label); data items carried by the same
    // pair merge into a single comma-separated label.
    for (std::size_t u = 0; u < graph.vertices.size(); ++u) {
        for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
            bool control = false;
            std::vector<std::string> items;
            for (const auto& edge : graph.edges) {
                if (edge.from != graph.vertices[u] || edge.to != graph.vertices[v])
                    continue;
                if (edge.label == EdgeLabel::control)
                    control = true;
                else
                    items.push_back(edge.detail);
            }
            if (control)
                out << "  \"" << graph.vertices[u] << "\" -> \"" << graph.vertices[v]
                    << "\" [label=\"control\"];\n";
            if (!items.empty()) {
                out << "  \"" << graph.vertices[u] << "\" -> \"" << graph.vertices[v]
                    << "\" [label=\"data: ";
                for (std::size_t i = 0; i < items.size(); ++i) {
                    if (i > 0)
                        out << ", ";
                    out << items[i];
                }
                out << "\", style=dashed];\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

std::string edge_key(const GraphEdge& edge) {
    std::string key = edge.label == EdgeLabel::control ? "control|" : "data|";
    key += edge.from;
    key += '|';
    key += edge.to;
    if (edge.label == EdgeLabel::data) {
        key += '|';
        key += edge.detail;
    }
    return key;
}

nlohmann::json graph_to_json(const DependencyGraph& graph) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& edge : graph.edges) {
        nlohmann::json entry = {
            {"from", edge.from},
            {"to", edge.to},
            {"label", edge.label == EdgeLabel::control ? "control" : "data"},
        };
        if (edge.label == EdgeLabel::data)
            entry["item"] = edge.detail;
        edges.push_back(std::move(entry));
    }
    return nlohmann::json{{"vertices", graph.vertices}, {"edges", std::move(edges)}};
}

nlohmann::json matrix_to_json(const DependencyMatrix& matrix) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : matrix.cells) {
        nlohmann::json cells = nlohmann::json::array();
        for (bool cell : row)
            cells.push_back(cell ? 1 : 0);
        rows.push_back(std::move(cells));
    }
    return nlohmann::json{{"order", matrix.order}, {"cells", std::move(rows)}};
}

nlohmann::json metrics_to_json(const GraphMetrics& metrics) {
    nlohmann::json json{
        {"vertex_count", metrics.vertex_count},
        {"edge_count", metrics.edge_count},
        {"scc_list", metrics.scc_list},
        {"has_cycle", metrics.has_cycle},
        {"fan_in", metrics.fan_in},
        {"fan_out", metrics.fan_out},
    };
    if (metrics.topological_order)
        json["topological_order"] = *metrics.topological_order;
    else
        json["topological_order"] = nullptr;
    return json;
}

} // namespace mfmod
