#include "orgrisk/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "orgrisk/explain.hpp"
#include "orgrisk/scenario_io.hpp"
#include "orgrisk/service.hpp"
#include "orgrisk/validate.hpp"
#include "orgrisk/whatif.hpp"

namespace orgrisk {

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kSyntax = 2;

struct Exit {
    int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << path << ": cannot read file\n";
        throw Exit{kSyntax};
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_parse_errors(const std::string& path, const ScenarioParseError& e, std::ostream& err) {
    for (const auto& pe : e.errors()) err << path << ":" << format_parse_error(pe) << "\n";
}

OrgModel load_model(const std::string& path, std::ostream& err) {
    const std::string text = read_file(path, err);
    try {
        return parse_scenario(text);
    } catch (const ScenarioParseError& e) {
        print_parse_errors(path, e, err);
        throw Exit{kSyntax};
    }
}

// Prints violations and stops on Errors.
void require_valid(const OrgModel& m, std::ostream& err) {
    auto vs = validate_model(m);
    for (const auto& v : vs) err << format_violation(v) << "\n";
    if (has_errors(vs)) throw Exit{kSemantic};
}

ReportFormat report_format(const std::string& name) {
    return name == "structured" ? ReportFormat::Structured : ReportFormat::Text;
}

int cmd_check(const std::string& file, bool verbose, std::ostream& out, std::ostream& err) {
    OrgModel m = load_model(file, err);
    auto vs = validate_model(m);
    for (const auto& v : vs) out << format_violation(v) << "\n";
    if (verbose)
        err << file << ": " << m.entity_count() << " entities, " << m.relations.size() << " relations, "
            << vs.size() << " violations\n";
    return has_errors(vs) ? kSemantic : kOk;
}

int cmd_infer(const std::string& file, const std::string& format, const std::string& explain_pred,
              bool verbose, std::ostream& out, std::ostream& err) {
    if (!explain_pred.empty() && !is_known_predicate(explain_pred)) {
        err << "unknown predicate '" << explain_pred << "'\n";
        return kSyntax;
    }
    OrgModel m = load_model(file, err);
    require_valid(m, err);
    InferenceResult r = infer(m);
    if (verbose) err << file << ": " << r.facts.size() << " facts\n";
    const RiskReport report = build_report(r);
    const ReportFormat fmt = report_format(format);
    if (explain_pred.empty()) {
        out << render_report(report, fmt);
        return kOk;
    }
    if (fmt == ReportFormat::Structured) {
        nlohmann::json proofs = nlohmann::json::array();
        for (const auto& f : r.of(explain_pred)) proofs.push_back(proof_to_json(explain(r, f)));
        out << nlohmann::json{{"report", report_to_json(report)}, {"proofs", std::move(proofs)}}.dump(2) << "\n";
        return kOk;
    }
    out << render_report(report, fmt);
    out << "\nProofs for " << explain_pred << "\n";
    for (const auto& f : r.of(explain_pred)) out << "\n" << render_proof(explain(r, f));
    return kOk;
}

int cmd_whatif(const std::string& file, const std::string& apply, const std::string& format,
               bool verbose, std::ostream& out, std::ostream& err) {
    OrgModel base = load_model(file, err);
    require_valid(base, err);
    Intervention iv;
    {
        const std::string text = read_file(apply, err);
        try {
            iv = parse_intervention(text);
        } catch (const ScenarioParseError& e) {
            print_parse_errors(apply, e, err);
            return kSyntax;
        }
    }
    OrgModel after;
    try {
        after = apply_intervention(base, iv);
    } catch (const WouldInvalidateError& e) {
        err << e.code() << ": " << e.what() << "\n";
        for (const auto& v : e.violations()) err << format_violation(v) << "\n";
        return kSemantic;
    } catch (const UnknownTargetError& e) {
        err << e.code() << ": " << e.what() << "\n";
        return kSemantic;
    } catch (const ScenarioParseError& e) {
        print_parse_errors(apply, e, err);
        return kSyntax;
    }
    if (verbose) err << apply << ": " << iv.ops.size() << " ops applied\n";
    InferenceDiff d = diff_inferences(infer(base), infer(after));
    if (report_format(format) == ReportFormat::Structured)
        out << diff_to_json(d).dump(2) << "\n";
    else
        out << render_diff(d);
    return kOk;
}

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
    if (g_server) g_server->stop();
}

int cmd_serve(std::string addr, const std::string& store, bool verbose, std::ostream& err) {
    if (addr.empty()) {
        const char* env = std::getenv("ORGRISK_ADDR");
        addr = env && *env ? env : kDefaultAddress;
    }
    std::pair<std::string, int> hp;
    try {
        hp = parse_address(addr);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kSyntax;
    }
    ServiceOptions opts;
    if (!store.empty()) opts.store = store;
    std::unique_ptr<Service> service;
    try {
        service = std::make_unique<Service>(opts);
    } catch (const Error& e) {
        err << "store error: " << e.what() << "\n";
        return kSemantic;
    }
    HttpServer server(*service, &err);
    if (!server.bind(hp.first, hp.second)) {
        err << "bind error: cannot listen on " << addr << "\n";
        return kSemantic;
    }
    err << "listening on " << hp.first << ":" << server.port() << "\n";
    if (verbose) err << service->session_count() << " sessions restored\n";
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    g_server = nullptr;
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Organizational dependence and risk analysis", "orgrisk"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Print diagnostics to standard error");

    std::string file, format = "text", explain_pred, apply, addr, store;

    auto* check = app.add_subcommand("check", "Validate a scenario");
    check->add_option("file", file, "Scenario document")->required();

    auto* inf = app.add_subcommand("infer", "Infer dependences and risks and print a report");
    inf->add_option("file", file, "Scenario document")->required();
    inf->add_option("--report", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    inf->add_option("--explain", explain_pred, "Append proof trees for every fact of this predicate");

    auto* wi = app.add_subcommand("whatif", "Apply an intervention and print the inference diff");
    wi->add_option("file", file, "Scenario document")->required();
    wi->add_option("--apply", apply, "Intervention document")->required();
    wi->add_option("--report", format, "Diff format")->check(CLI::IsMember({"text", "structured"}));

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--addr", addr, "host:port to listen on (default $ORGRISK_ADDR or 127.0.0.1:8731)");
    serve->add_option("--store", store, "Directory for session journals");

    for (auto* sub : {check, inf, wi, serve})
        sub->add_flag("-v,--verbose", verbose, "Print diagnostics to standard error");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        if (!app.get_subcommands().empty())
            err << "run '" << app.get_name() << " " << app.get_subcommands().front()->get_name()
                << " --help' for usage\n";
        return kSyntax;
    }

    try {
        if (*check) return cmd_check(file, verbose, out, err);
        if (*inf) return cmd_infer(file, format, explain_pred, verbose, out, err);
        if (*wi) return cmd_whatif(file, apply, format, verbose, out, err);
        if (*serve) return cmd_serve(addr, store, verbose, err);
    } catch (const Exit& e) {
        return e.code;
    } catch (const InvalidModelError& e) {
        for (const auto& v : e.violations()) err << format_violation(v) << "\n";
        return kSemantic;
    } catch (const Error& e) {
        err << e.code() << ": " << e.what() << "\n";
        return kSemantic;
    }
    return kSyntax;
}

}  // namespace orgrisk
