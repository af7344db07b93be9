#include "orgrisk/fact.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>

namespace orgrisk {

std::string_view to_string(Stratum s) {
    switch (s) {
        case Stratum::S0: return "S0";
        case Stratum::S1: return "S1";
        case Stratum::S2: return "S2";
        case Stratum::S3: return "S3";
    }
    return "?";
}

std::optional<Stratum> parse_stratum(std::string_view text) {
    if (text == "S0") return Stratum::S0;
    if (text == "S1") return Stratum::S1;
    if (text == "S2") return Stratum::S2;
    if (text == "S3") return Stratum::S3;
    return std::nullopt;
}

std::string to_string(const Fact& f) {
    std::string out = f.predicate;
    out += '(';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ", ";
        out += f.args[i];
    }
    out += ')';
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::optional<Fact> parse_fact(std::string_view text) {
    text = trim(text);
    auto open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')') return std::nullopt;
    Fact f;
    f.predicate = std::string(trim(text.substr(0, open)));
    if (f.predicate.empty()) return std::nullopt;
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    if (trim(inner).empty()) return f;
    while (true) {
        auto comma = inner.find(',');
        auto arg = trim(inner.substr(0, comma));
        if (arg.empty() || arg.find_first_of("()") != std::string_view::npos) return std::nullopt;
        f.args.emplace_back(arg);
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
    }
    return f;
}

std::string fact_id(const Fact& f) { return content_hash(to_string(f)); }

std::string content_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace orgrisk
