#pragma once

// HTTP/JSON service over sessions. The routing core (Service::handle) is
// transport-free; HttpServer adapts it to a listening socket.
//
//   POST /scenarios                        create a session from a scenario document
//   GET  /scenarios/{id}                   canonical scenario and branch names
//   PUT  /scenarios/{id}                   replace the base scenario (drops branches)
//   POST /scenarios/{id}/infer[?branch=b]  report, facts, derivation index
//   GET  /scenarios/{id}/explain/{factId}[?branch=b]
//   POST /scenarios/{id}/whatif            {"branch": b, "interventions": [...ops] | {...}}

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>

#include "orgrisk/engine.hpp"
#include "orgrisk/whatif.hpp"

namespace orgrisk {

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

struct ServiceOptions {
    // Session journals live here when set; otherwise sessions are in memory.
    std::optional<std::filesystem::path> store;
};

class Service {
public:
    // Replays every journal under options.store. Throws Error("StoreError")
    // when the store cannot be created or written.
    explicit Service(ServiceOptions options = {});
    ~Service();

    Response handle(const Request& request);

    std::size_t session_count() const;

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& id) const;
    std::string new_session_id();
    void persist(const std::string& id, const nlohmann::json& entry);

    Response create(const Request& r);
    Response show(Session& s);
    Response replace(Session& s, const Request& r, const std::string& id);
    Response infer(Session& s, const Request& r);
    Response explain(Session& s, const Request& r, const std::string& fact_id);
    Response whatif(Session& s, const Request& r, const std::string& id);

    ServiceOptions options_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

// Splits "host:port" ("8080" alone means loopback). Throws Error("InvalidAddress").
std::pair<std::string, int> parse_address(const std::string& text);

inline constexpr const char* kDefaultAddress = "127.0.0.1:8731";

class HttpServer {
public:
    explicit HttpServer(Service& service, std::ostream* log = nullptr);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Binds without serving. Port 0 picks a free port. Returns false on failure.
    bool bind(const std::string& host, int port);
    int port() const { return port_; }

    // Serves until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
};

}  // namespace orgrisk
