#include "mfmod/backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "mfmod/errors.hpp"

namespace mfmod {

std::optional<BackendEndpoint> backend_from_env() {
    const char* url = std::getenv("MFMOD_BACKEND_URL");
    if (url == nullptr || *url == '\0') {
        return std::nullopt;
    }
    BackendEndpoint endpoint{url, 30};
    if (const char* timeout = std::getenv("MFMOD_BACKEND_TIMEOUT_SECS")) {
        char* end = nullptr;
        const long parsed = std::strtol(timeout, &end, 10);
        if (end != timeout && *end == '\0' && parsed > 0) {
            endpoint.timeout_seconds = static_cast<int>(parsed);
        }
    }
    return endpoint;
}

ModernIR request_backend_transform(const BackendEndpoint& endpoint,
                                   const std::string& source,
                                   const DependencyGraph& graph) {
    const nlohmann::json payload = {{"source", source},
                                    {"graph", graph_to_json(graph)},
                                    {"dialect", "cobol-subset-1"}};

    httplib::Client client(endpoint.url);
    client.set_connection_timeout(endpoint.timeout_seconds, 0);
    client.set_read_timeout(endpoint.timeout_seconds, 0);
    client.set_write_timeout(endpoint.timeout_seconds, 0);

    httplib::Result result =
        client.Post("/transform", payload.dump(), "application/json");
    if (!result) {
        throw BackendError("backend-unavailable",
                           "no response from " + endpoint.url + ": " +
                               httplib::to_string(result.error()));
    }
    if (result->status != 200) {
        throw BackendError("backend-unavailable",
                           endpoint.url + " answered with status " +
                               std::to_string(result->status));
    }

    const nlohmann::json reply = nlohmann::json::parse(result->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object() || !reply.contains("mir_text") ||
        !reply.at("mir_text").is_string()) {
        throw BackendError("backend-parse",
                           "reply is not a JSON object with a mir_text string");
    }

    MirParseResult parsed = parse_mir(reply.at("mir_text").get<std::string>());
    if (!parsed.ir.has_value()) {
        std::string detail = "returned text is not well-formed";
        if (!parsed.diagnostics.empty()) {
            detail += ": " + parsed.diagnostics.front().message;
        }
        throw BackendError("backend-parse", detail);
    }
    const std::vector<Diagnostic> issues = check_ir(*parsed.ir);
    if (!issues.empty()) {
        throw BackendError("backend-parse",
                           "returned unit rejected: " + issues.front().message);
    }
    return std::move(*parsed.ir);
}

} // namespace mfmod
