#pragma once

#include <optional>
#include <string>

#include "mfmod/depgraph.hpp"
#include "mfmod/mir.hpp"

namespace mfmod {

struct BackendEndpoint {
    std::string url; // scheme://host:port
    int timeout_seconds = 30;
};

// Reads MFMOD_BACKEND_URL and MFMOD_BACKEND_TIMEOUT_SECS. Returns nullopt
// when no URL is configured; malformed timeouts fall back to the default.
std::optional<BackendEndpoint> backend_from_env();

// POSTs {source, graph, dialect} as JSON to <url>/transform and expects a
// {mir_text} reply. Throws BackendError("backend-unavailable") on transport
// failure or a non-200 status, and BackendError("backend-parse") when the
// reply is not the expected JSON or the returned text fails parsing or
// well-formedness checks. A returned IR still goes through differential
// verification downstream; this function only guarantees it is executable.
ModernIR request_backend_transform(const BackendEndpoint& endpoint,
                                   const std::string& source,
                                   const DependencyGraph& graph);

} // namespace mfmod
