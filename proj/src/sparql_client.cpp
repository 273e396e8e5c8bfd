#include "nspm/sparql_client.hpp"

#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "nspm/errors.hpp"
#include "nspm/hash.hpp"

namespace nspm {

namespace fs = std::filesystem;

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

namespace {

struct UrlParts {
    std::string scheme, host, path;
    int port;
};

UrlParts split_url(const std::string& url) {
    UrlParts u;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw NetworkError("malformed endpoint URL: " + url);
    u.scheme = url.substr(0, scheme_end);
    auto rest = url.substr(scheme_end + 3);
    auto slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    u.path = slash == std::string::npos ? "/" : rest.substr(slash);
    auto colon = hostport.find(':');
    if (colon == std::string::npos) {
        u.host = hostport;
        u.port = u.scheme == "https" ? 443 : 80;
    } else {
        u.host = hostport.substr(0, colon);
        u.port = std::stoi(hostport.substr(colon + 1));
    }
    if (u.host.empty()) throw NetworkError("malformed endpoint URL: " + url);
    return u;
}

// Per-host politeness bookkeeping, shared across client instances.
std::mutex g_host_mutex;
std::unordered_map<std::string, std::chrono::steady_clock::time_point> g_last_request;

void politeness_wait(const std::string& host, int politeness_ms) {
    if (politeness_ms <= 0) return;
    std::chrono::steady_clock::time_point wake;
    {
        std::lock_guard<std::mutex> lock(g_host_mutex);
        auto now = std::chrono::steady_clock::now();
        auto it = g_last_request.find(host);
        auto earliest = it == g_last_request.end()
                            ? now
                            : it->second + std::chrono::milliseconds(politeness_ms);
        wake = std::max(now, earliest);
        g_last_request[host] = wake;
    }
    std::this_thread::sleep_until(wake);
}

std::optional<std::string> cache_read(const EndpointConfig& ep, const std::string& key) {
    if (!ep.cache_dir) return std::nullopt;
    fs::path p = fs::path(*ep.cache_dir) / (key + ".json");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void cache_write(const EndpointConfig& ep, const std::string& key, const std::string& body) {
    if (!ep.cache_dir) return;
    fs::create_directories(*ep.cache_dir);
    fs::path p = fs::path(*ep.cache_dir) / (key + ".json");
    std::ofstream out(p, std::ios::binary);
    out << body;
}

}  // namespace

ResultSet query_endpoint_text(const EndpointConfig& ep, const std::string& sparql_text) {
    const std::string key = sha256_hex(sparql_text);
    if (auto cached = cache_read(ep, key)) return resultset_from_json(*cached);

    UrlParts url = split_url(ep.url);
    politeness_wait(url.host, ep.politeness_ms);

    auto run = [&](auto& client) {
        client.set_connection_timeout(std::chrono::milliseconds(static_cast<int>(ep.timeout_s * 1000)));
        client.set_read_timeout(std::chrono::milliseconds(static_cast<int>(ep.timeout_s * 1000)));
        httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
        std::string target = url.path + "?query=" + url_encode(sparql_text);
        return client.Get(target, headers);
    };

    httplib::Result res = [&]() {
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        if (url.scheme == "https") {
            httplib::SSLClient client(url.host, url.port);
            return run(client);
        }
#endif
        if (url.scheme != "http") throw NetworkError("unsupported URL scheme: " + url.scheme);
        httplib::Client client(url.host, url.port);
        return run(client);
    }();

    if (!res)
        throw NetworkError("request to " + ep.url + " failed: " + httplib::to_string(res.error()));
    if (res->status >= 400) throw EndpointError(res->status, res->body.substr(0, 200));

    ResultSet rs = resultset_from_json(res->body);  // validate before caching
    cache_write(ep, key, res->body);
    return rs;
}

ResultSet query_endpoint(const EndpointConfig& ep, const sparql::Query& query,
                         const PrefixTable& prefixes) {
    return query_endpoint_text(ep, sparql::to_sparql(query, prefixes));
}

}  // namespace nspm
