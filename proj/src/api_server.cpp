#include <httplib.h>

#include <iostream>
#include <thread>

#include "ringdesign/api.hpp"
#include "ringdesign/error.hpp"

namespace ringdesign::api {

namespace {

void configure(httplib::Server& srv, const ServerOptions& opts) {
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    if (!opts.static_dir.empty() && !srv.set_mount_point("/", opts.static_dir))
        throw Error(ErrorCode::invalid_argument, "static directory '" + opts.static_dir + "' does not exist");

    auto forward = [](const httplib::Request& req, httplib::Response& res) {
        Query q;
        for (const auto& [k, v] : req.params) q[k] = v;
        const Response r = dispatch(req.method, req.path, q, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    const std::string api_pattern = R"(/api/v1/.*)";
    srv.Get("/healthz", forward);
    srv.Get(api_pattern, forward);
    srv.Post(api_pattern, forward);
    srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

}  // namespace

bool run_server(const ServerOptions& opts) {
    httplib::Server srv;
    configure(srv, opts);
    if (opts.port == 0) {
        const int port = srv.bind_to_any_port(opts.host);
        if (port < 0) return false;
        std::cerr << "listening on " << opts.host << ":" << port << "\n";
        return srv.listen_after_bind();
    }
    std::cerr << "listening on " << opts.host << ":" << opts.port << "\n";
    return srv.listen(opts.host, opts.port);
}

struct BackgroundServer::Impl {
    httplib::Server srv;
    std::thread thread;
};

BackgroundServer::BackgroundServer(const ServerOptions& opts) : impl_(new Impl) {
    configure(impl_->srv, opts);
    port_ = opts.port == 0 ? impl_->srv.bind_to_any_port(opts.host)
                           : (impl_->srv.bind_to_port(opts.host, opts.port) ? opts.port : -1);
    if (port_ < 0) {
        delete impl_;
        throw Error(ErrorCode::invalid_argument, "could not bind " + opts.host);
    }
    impl_->thread = std::thread([this] { impl_->srv.listen_after_bind(); });
    impl_->srv.wait_until_ready();
}

BackgroundServer::~BackgroundServer() {
    stop();
    delete impl_;
}

void BackgroundServer::stop() {
    if (impl_->thread.joinable()) {
        impl_->srv.stop();
        impl_->thread.join();
    }
}

}  // namespace ringdesign::api
