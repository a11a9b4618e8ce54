#include <algorithm>
#include <numeric>
#include <sstream>

#include "mfmod/errors.hpp"
#include "mfmod/migrate.hpp"

namespace mfmod {

namespace {

double payload_seconds(const TransferTask& task) {
    return static_cast<double>(task.payload_bytes) * task.seconds_per_byte;
}

} // namespace

SchedulePlan schedule(const std::vector<TransferTask>& tasks,
                      const std::vector<NodeSpec>& nodes) {
    if (nodes.empty()) {
        throw InfeasibleError("no nodes available");
    }
    for (const auto& node : nodes) {
        if (!(node.efficiency > 0.0)) {
            throw Error("bad-nodes", "node " + node.id +
                                         " must have positive efficiency");
        }
    }
    std::uint64_t total_payload = 0;
    std::uint64_t total_capacity = 0;
    for (const auto& task : tasks) {
        total_payload += task.payload_bytes;
    }
    for (const auto& node : nodes) {
        total_capacity += node.capacity_bytes;
    }
    if (total_capacity < total_payload) {
        std::ostringstream message;
        message << "capacity shortfall: " << total_capacity << " bytes available for "
                << total_payload << " bytes of payload";
        throw InfeasibleError(message.str());
    }

    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = payload_seconds(tasks[a]);
        const double sb = payload_seconds(tasks[b]);
        if (sa != sb) {
            return sa > sb;
        }
        return a < b;
    });

    SchedulePlan plan;
    plan.tasks = tasks;
    plan.nodes = nodes;
    plan.assignment.assign(tasks.size(), 0);
    std::vector<std::uint64_t> remaining;
    remaining.reserve(nodes.size());
    for (const auto& node : nodes) {
        remaining.push_back(node.capacity_bytes);
    }

    for (const std::size_t task_index : order) {
        const TransferTask& task = tasks[task_index];
        std::size_t chosen = nodes.size();
        double chosen_cost = 0.0;
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            if (remaining[n] < task.payload_bytes) {
                continue;
            }
            const double cost = payload_seconds(task) / nodes[n].efficiency;
            if (chosen == nodes.size() || cost < chosen_cost) {
                chosen = n;
                chosen_cost = cost;
            }
        }
        if (chosen == nodes.size()) {
            std::ostringstream message;
            message << "no node can hold task " << task.id << " ("
                    << task.payload_bytes << " bytes)";
            throw InfeasibleError(message.str());
        }
        remaining[chosen] -= task.payload_bytes;
        plan.assignment[task_index] = chosen;
        plan.objective += chosen_cost;
    }
    return plan;
}

std::vector<TransferTask> make_tasks(std::size_t record_count,
                                     std::size_t record_width,
                                     std::size_t batch_records,
                                     double seconds_per_byte) {
    if (batch_records == 0) {
        batch_records = 1;
    }
    std::vector<TransferTask> tasks;
    for (std::size_t start = 0; start < record_count; start += batch_records) {
        const std::size_t count = std::min(batch_records, record_count - start);
        TransferTask task;
        task.id = tasks.size();
        task.payload_bytes = static_cast<std::uint64_t>(count) * record_width;
        task.seconds_per_byte = seconds_per_byte;
        tasks.push_back(task);
    }
    return tasks;
}

std::vector<NodeSpec> parse_node_specs(const std::string& text) {
    std::vector<NodeSpec> nodes;
    std::istringstream stream(text);
    std::string entry;
    while (std::getline(stream, entry, ',')) {
        const std::size_t first = entry.find(':');
        const std::size_t second =
            first == std::string::npos ? std::string::npos : entry.find(':', first + 1);
        if (first == std::string::npos || second == std::string::npos ||
            first == 0) {
            throw Error("bad-nodes",
                        "expected id:efficiency:capacity, got \"" + entry + "\"");
        }
        NodeSpec node;
        node.id = entry.substr(0, first);
        try {
            std::size_t used = 0;
            const std::string efficiency = entry.substr(first + 1, second - first - 1);
            node.efficiency = std::stod(efficiency, &used);
            if (used != efficiency.size() || !(node.efficiency > 0.0)) {
                throw std::invalid_argument(efficiency);
            }
            const std::string capacity = entry.substr(second + 1);
            node.capacity_bytes = std::stoull(capacity, &used);
            if (used != capacity.size()) {
                throw std::invalid_argument(capacity);
            }
        } catch (const std::exception&) {
            throw Error("bad-nodes",
                        "expected id:efficiency:capacity, got \"" + entry + "\"");
        }
        nodes.push_back(std::move(node));
    }
    if (nodes.empty()) {
        throw Error("bad-nodes", "node list is empty");
    }
    return nodes;
}

} // namespace mfmod
