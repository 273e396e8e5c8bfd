#pragma once

#include <optional>
#include <string>

#include "nspm/resultset.hpp"
#include "nspm/sparql.hpp"

namespace nspm {

/// Remote SPARQL endpoint over the SPARQL Protocol:
///   GET <endpoint>?query=<url-encoded> with Accept: application/sparql-results+json
struct EndpointConfig {
    std::string url;
    double timeout_s = 30.0;
    /// Minimum spacing between requests to the same host. Concurrent callers
    /// are allowed; the delay is enforced per host across threads.
    int politeness_ms = 200;
    /// When set, responses are cached as <cache_dir>/<sha256-of-query>.json
    /// and replayed on later runs, keeping pipelines reproducible offline.
    std::optional<std::string> cache_dir;
};

ResultSet query_endpoint(const EndpointConfig& endpoint, const sparql::Query& query,
                         const PrefixTable& prefixes);

/// Raw-text variant used by both the client above and the tests.
ResultSet query_endpoint_text(const EndpointConfig& endpoint, const std::string& sparql_text);

std::string url_encode(const std::string& s);

}  // namespace nspm
