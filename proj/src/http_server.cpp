#include <httplib.h>

#include <mutex>

#include "orgrisk/service.hpp"

namespace orgrisk {

struct HttpServer::Impl {
    httplib::Server server;
    std::mutex log_mutex;
};

HttpServer::HttpServer(Service& service, std::ostream* log) : impl_(std::make_unique<Impl>()) {
    auto route = [&service](const httplib::Request& req, httplib::Response& res) {
        Request r{req.method, req.path, {}, req.body};
        for (const auto& [k, v] : req.params) r.query[k] = v;
        Response out = service.handle(r);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    const char* pattern = R"(/.*)";
    impl_->server.Get(pattern, route);
    impl_->server.Post(pattern, route);
    impl_->server.Put(pattern, route);
    impl_->server.Delete(pattern, route);
    impl_->server.Patch(pattern, route);
    // No SO_REUSEPORT: a second server must not share an occupied port.
    impl_->server.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    if (log)
        impl_->server.set_logger([log, impl = impl_.get()](const httplib::Request& req, const httplib::Response& res) {
            std::lock_guard lock(impl->log_mutex);
            *log << req.method << " " << req.path << " " << res.status << "\n";
            log->flush();
        });
}

HttpServer::~HttpServer() = default;

bool HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        port_ = impl_->server.bind_to_any_port(host);
        return port_ > 0;
    }
    if (!impl_->server.bind_to_port(host, port)) return false;
    port_ = port;
    return true;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace orgrisk
