#include "orgrisk/service.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "orgrisk/explain.hpp"
#include "orgrisk/scenario_io.hpp"
#include "orgrisk/validate.hpp"

namespace orgrisk {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kJournal = "journal.log";

Response reply(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

Response error_reply(int status, const std::string& code, const std::string& message,
                     json extra = json::object()) {
    extra["error"] = code;
    extra["message"] = message;
    return reply(status, extra);
}

json parse_errors_json(const ScenarioParseError& e) {
    json arr = json::array();
    for (const auto& pe : e.errors())
        arr.push_back(json{{"line", pe.location.line},
                           {"column", pe.location.column},
                           {"pointer", pe.location.pointer},
                           {"code", pe.code},
                           {"message", pe.message}});
    return arr;
}

json violations_json(const std::vector<Violation>& vs) {
    json arr = json::array();
    for (const auto& v : vs)
        arr.push_back(json{{"severity", std::string(to_string(v.severity))},
                           {"code", v.code},
                           {"message", v.message},
                           {"entityIds", v.entity_ids}});
    return arr;
}

Response parse_failure(const ScenarioParseError& e) {
    return error_reply(400, "ParseErrors", e.what(), json{{"errors", parse_errors_json(e)}});
}

Response invalid_model(const std::vector<Violation>& vs) {
    return error_reply(422, "InvalidModel", "scenario has validation errors",
                       json{{"violations", violations_json(vs)}});
}

json inference_json(const InferenceResult& r) {
    json facts = json::array();
    json index = json::object();
    for (const auto& [f, s] : r.facts) {
        const std::string id = fact_id(f);
        const bool asserted = r.is_asserted(f);
        facts.push_back(json{{"fact", to_string(f)},
                             {"factId", id},
                             {"stratum", std::string(to_string(s))},
                             {"asserted", asserted}});
        if (asserted) continue;
        json ds = json::array();
        for (const auto& d : r.derivations_of(f)) {
            json premises = json::array();
            for (const auto& p : d.premises) premises.push_back(fact_id(p));
            json entry{{"rule", d.rule}, {"premises", std::move(premises)}};
            if (!d.absent.empty()) {
                json absent = json::array();
                for (const auto& a : d.absent) absent.push_back(to_string(a));
                entry["absent"] = std::move(absent);
            }
            ds.push_back(std::move(entry));
        }
        index[id] = std::move(ds);
    }
    RiskReport report = build_report(r);
    return json{{"modelId", report.model_id},
                {"report", report_to_json(report)},
                {"facts", std::move(facts)},
                {"derivations", std::move(index)}};
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> out;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '/'))
        if (!part.empty()) out.push_back(part);
    return out;
}

}  // namespace

struct Service::Session {
    struct Branch {
        Intervention interventions;
        OrgModel model;
        InferenceResult result;
    };

    std::mutex mutex;
    OrgModel base;
    std::optional<InferenceResult> base_result;
    std::map<std::string, Branch> branches;

    const InferenceResult& base_inference() {
        if (!base_result) base_result = orgrisk::infer(base);
        return *base_result;
    }

    void reset(OrgModel model) {
        base = std::move(model);
        base_result.reset();
        branches.clear();
    }

    // Replaces a branch's interventions. Throws on invalid interventions and
    // leaves the branch untouched.
    const Branch& set_branch(const std::string& name, Intervention iv) {
        OrgModel model = apply_intervention(base, iv);
        InferenceResult result = orgrisk::infer(model);
        auto& b = branches[name];
        b = Branch{std::move(iv), std::move(model), std::move(result)};
        return b;
    }

    // nullptr when the branch does not exist.
    const InferenceResult* inference(const std::optional<std::string>& branch) {
        if (!branch) return &base_inference();
        auto it = branches.find(*branch);
        return it == branches.end() ? nullptr : &it->second.result;
    }
};

Service::Service(ServiceOptions options) : options_(std::move(options)) {
    if (!options_.store) return;
    const fs::path& dir = *options_.store;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw Error("StoreError", "cannot use '" + dir.string() + "' as a session store" +
                                      (ec ? ": " + ec.message() : std::string(": not a directory")));
    {
        const fs::path probe = dir / ".probe";
        std::ofstream out(probe);
        if (!out) throw Error("StoreError", "session store '" + dir.string() + "' is not writable");
        out.close();
        fs::remove(probe, ec);
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_directory()) continue;
        std::ifstream in(entry.path() / kJournal);
        if (!in) continue;
        auto session = std::make_shared<Session>();
        std::string line;
        std::size_t n = 0;
        try {
            while (std::getline(in, line)) {
                ++n;
                if (line.empty()) continue;
                json e = json::parse(line);
                const std::string type = e.at("type").get<std::string>();
                if (type == "scenario")
                    session->reset(scenario_from_json(e.at("document")));
                else if (type == "branch")
                    session->set_branch(e.at("name").get<std::string>(),
                                        intervention_from_json(e.at("interventions")));
            }
        } catch (const std::exception& ex) {
            throw Error("StoreError", "cannot replay " + (entry.path() / kJournal).string() + " line " +
                                          std::to_string(n) + ": " + ex.what());
        }
        sessions_[entry.path().filename().string()] = std::move(session);
    }
}

Service::~Service() = default;

std::size_t Service::session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::string Service::new_session_id() {
    static thread_local std::random_device rd;
    std::string id;
    char buf[9];
    for (int i = 0; i < 4; ++i) {
        std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(rd()));
        id += buf;
    }
    return id;
}

void Service::persist(const std::string& id, const json& entry) {
    if (!options_.store) return;
    const fs::path dir = *options_.store / id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream out(dir / kJournal, std::ios::app);
    out << entry.dump() << "\n";
    out.flush();
    if (!out) throw Error("StoreError", "cannot append to the journal of session " + id);
}

Response Service::handle(const Request& r) {
    try {
        const auto parts = split_path(r.path);
        if (parts.empty() || parts[0] != "scenarios") return error_reply(404, "NotFound", "no such endpoint");
        if (parts.size() == 1) {
            if (r.method != "POST") return error_reply(405, "MethodNotAllowed", "use POST");
            return create(r);
        }
        auto session = find(parts[1]);
        if (!session) return error_reply(404, "UnknownSession", "no session '" + parts[1] + "'");
        std::lock_guard lock(session->mutex);
        if (parts.size() == 2) {
            if (r.method == "GET") return show(*session);
            if (r.method == "PUT") return replace(*session, r, parts[1]);
            return error_reply(405, "MethodNotAllowed", "use GET or PUT");
        }
        const std::string& action = parts[2];
        if (action == "infer" && parts.size() == 3) {
            if (r.method != "POST") return error_reply(405, "MethodNotAllowed", "use POST");
            return infer(*session, r);
        }
        if (action == "explain" && parts.size() == 4) {
            if (r.method != "GET") return error_reply(405, "MethodNotAllowed", "use GET");
            return explain(*session, r, parts[3]);
        }
        if (action == "whatif" && parts.size() == 3) {
            if (r.method != "POST") return error_reply(405, "MethodNotAllowed", "use POST");
            return whatif(*session, r, parts[1]);
        }
        return error_reply(404, "NotFound", "no such endpoint");
    } catch (const Error& e) {
        return error_reply(500, e.code(), e.what());
    } catch (const std::exception& e) {
        return error_reply(500, "Internal", e.what());
    }
}

Response Service::create(const Request& r) {
    OrgModel model;
    try {
        model = parse_scenario(r.body);
    } catch (const ScenarioParseError& e) {
        return parse_failure(e);
    }
    auto violations = validate_model(model);
    if (has_errors(violations)) return invalid_model(violations);

    auto session = std::make_shared<Session>();
    session->reset(model);
    std::string id;
    {
        std::lock_guard lock(mutex_);
        do id = new_session_id();
        while (sessions_.contains(id));
        sessions_[id] = session;
    }
    persist(id, json{{"type", "scenario"}, {"document", scenario_to_json(model)}});
    return reply(201, json{{"sessionId", id}, {"validation", violations_json(violations)}});
}

Response Service::show(Session& s) {
    json branches = json::array();
    for (const auto& [name, _] : s.branches) branches.push_back(name);
    return reply(200, json{{"scenario", scenario_to_json(s.base)}, {"branches", std::move(branches)}});
}

Response Service::replace(Session& s, const Request& r, const std::string& id) {
    OrgModel model;
    try {
        model = parse_scenario(r.body);
    } catch (const ScenarioParseError& e) {
        return parse_failure(e);
    }
    auto violations = validate_model(model);
    if (has_errors(violations)) return invalid_model(violations);
    persist(id, json{{"type", "scenario"}, {"document", scenario_to_json(model)}});
    s.reset(std::move(model));
    return reply(200, json{{"validation", violations_json(violations)}});
}

namespace {

std::optional<std::string> branch_of(const Request& r) {
    auto it = r.query.find("branch");
    if (it == r.query.end() || it->second.empty()) return std::nullopt;
    return it->second;
}

}  // namespace

Response Service::infer(Session& s, const Request& r) {
    auto branch = branch_of(r);
    const InferenceResult* result = s.inference(branch);
    if (!result) return error_reply(404, "UnknownBranch", "no branch '" + *branch + "'");
    json body = inference_json(*result);
    if (branch) body["branch"] = *branch;
    return reply(200, body);
}

Response Service::explain(Session& s, const Request& r, const std::string& id) {
    auto branch = branch_of(r);
    const InferenceResult* result = s.inference(branch);
    if (!result) return error_reply(404, "UnknownBranch", "no branch '" + *branch + "'");
    try {
        return reply(200, proof_to_json(orgrisk::explain(*result, fact_by_id(*result, id))));
    } catch (const FactNotFoundError& e) {
        return error_reply(404, "FactNotFound", e.what());
    }
}

Response Service::whatif(Session& s, const Request& r, const std::string& id) {
    json body;
    try {
        body = json::parse(r.body);
    } catch (const json::parse_error& e) {
        return error_reply(400, "ParseErrors", e.what());
    }
    if (!body.is_object() || !body.contains("branch") || !body["branch"].is_string() ||
        body["branch"].get_ref<const std::string&>().empty())
        return error_reply(400, "ParseErrors", "body needs a non-empty 'branch' string");
    const std::string name = body["branch"].get<std::string>();

    Intervention iv;
    try {
        json doc = body.value("interventions", json::array());
        if (doc.is_array()) doc = json{{"ops", doc}};
        iv = intervention_from_json(doc);
    } catch (const ScenarioParseError& e) {
        return parse_failure(e);
    }

    const InferenceResult& before = s.base_inference();
    try {
        const auto& b = s.set_branch(name, std::move(iv));
        persist(id, json{{"type", "branch"},
                         {"name", name},
                         {"interventions", intervention_to_json(b.interventions)}});
        return reply(200, json{{"branch", name},
                               {"interventions", b.interventions.ops.size()},
                               {"diff", diff_to_json(diff_inferences(before, b.result))}});
    } catch (const WouldInvalidateError& e) {
        return error_reply(422, e.code(), e.what(), json{{"violations", violations_json(e.violations())}});
    } catch (const UnknownTargetError& e) {
        return error_reply(422, e.code(), e.what());
    } catch (const ScenarioParseError& e) {
        return parse_failure(e);
    }
}

std::pair<std::string, int> parse_address(const std::string& text) {
    std::string host = "127.0.0.1";
    std::string port = text;
    if (auto colon = text.rfind(':'); colon != std::string::npos) {
        host = text.substr(0, colon);
        port = text.substr(colon + 1);
        if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
        if (host.empty()) host = "127.0.0.1";
    }
    try {
        std::size_t used = 0;
        int p = std::stoi(port, &used);
        if (used != port.size() || p < 0 || p > 65535) throw std::out_of_range(port);
        return {host, p};
    } catch (const std::exception&) {
        throw Error("InvalidAddress", "'" + text + "' is not a host:port address");
    }
}

}  // namespace orgrisk
