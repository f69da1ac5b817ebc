#pragma once

// HTTP/JSON facade. The handlers are pure functions of the request, so they
// can be tested without a socket; run_server binds them to cpp-httplib.

#include <map>
#include <string>

namespace ringdesign::api {

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

using Query = std::map<std::string, std::string>;

/// Upper bound on samples per channel in simulate responses.
inline constexpr std::size_t max_chart_points = 2000;
/// Upper bound on requested grid points.
inline constexpr int max_grid_points = 100000;

Response handle_health();
Response handle_design(const std::string& body);
Response handle_simulate(const std::string& body);
Response handle_polarization(const std::string& body);
Response handle_sweep(const std::string& figure, const Query& query);

/// Routes a request to a handler; 404 for unknown paths, 405 for wrong methods.
Response dispatch(const std::string& method, const std::string& path, const Query& query,
                  const std::string& body);

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;            // 0 picks a free port
    std::string static_dir;     // served at / when non-empty
};

/// Runs until the process is stopped. Returns false when binding fails.
bool run_server(const ServerOptions& opts);

/// Server on a background thread, for tests and embedding.
class BackgroundServer {
public:
    explicit BackgroundServer(const ServerOptions& opts);
    ~BackgroundServer();
    BackgroundServer(const BackgroundServer&) = delete;
    BackgroundServer& operator=(const BackgroundServer&) = delete;

    int port() const { return port_; }
    void stop();

private:
    struct Impl;
    Impl* impl_;
    int port_ = 0;
};

}  // namespace ringdesign::api
