#include <algorithm>

#include "mfmod/errors.hpp"
#include "mfmod/migrate.hpp"

namespace mfmod {

SlaReport monitor(const std::vector<MonitorSample>& samples,
                  double sla_uptime_threshold) {
    if (samples.empty()) {
        throw Error("no-samples", "monitoring requires at least one sample");
    }
    SlaReport report;
    std::size_t up_count = 0;
    double bandwidth_sum = 0.0;
    report.peak_bandwidth = samples.front().bandwidth;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const MonitorSample& sample = samples[i];
        if (sample.up) {
            ++up_count;
        }
        bandwidth_sum += sample.bandwidth;
        report.peak_bandwidth = std::max(report.peak_bandwidth, sample.bandwidth);
        // Warm-up: the first ten ticks never breach, the running share is
        // too coarse to mean anything there.
        if (i >= 10) {
            const double running =
                100.0 * static_cast<double>(up_count) / static_cast<double>(i + 1);
            if (running < sla_uptime_threshold) {
                report.breaches.push_back({sample.tick, running});
            }
        }
    }
    report.uptime = 100.0 * static_cast<double>(up_count) /
                    static_cast<double>(samples.size());
    report.mean_bandwidth = bandwidth_sum / static_cast<double>(samples.size());
    return report;
}

nlohmann::json sla_to_json(const SlaReport& report) {
    nlohmann::json breaches = nlohmann::json::array();
    for (const auto& breach : report.breaches) {
        breaches.push_back(
            {{"tick", breach.tick}, {"running_uptime", breach.running_uptime}});
    }
    return {{"uptime", report.uptime},
            {"peak_bandwidth", report.peak_bandwidth},
            {"mean_bandwidth", report.mean_bandwidth},
            {"breaches", std::move(breaches)}};
}

} // namespace mfmod
