#include "json_locator.hpp"

#include <cctype>

namespace orgrisk::detail {

std::string pointer_escape(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

TextPosition position_of(std::string_view text, std::size_t offset) {
    TextPosition p{1, 1};
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

JsonLocator::JsonLocator(std::string_view text) : text_(text) {
    skip_ws();
    if (pos_ < text_.size()) value("");
}

TextPosition JsonLocator::at(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
        if (auto it = positions_.find(p); it != positions_.end()) return it->second;
        if (p.empty()) return {1, 1};
        p.erase(p.rfind('/'));
    }
}

void JsonLocator::advance() {
    if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
    } else {
        ++column_;
    }
    ++pos_;
}

void JsonLocator::skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
}

void JsonLocator::skip_string() { read_string(); }

std::string JsonLocator::read_string() {
    std::string out;
    advance();  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\') {
            advance();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            switch (c) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u':
                    // Keys with \u escapes are rare; keep the raw escape so
                    // lookups simply fall back to the parent position.
                    out += "\\u";
                    break;
                default: out += c; break;
            }
            advance();
            continue;
        }
        out += text_[pos_];
        advance();
    }
    if (pos_ < text_.size()) advance();  // closing quote
    return out;
}

void JsonLocator::value(const std::string& pointer) {
    positions_.emplace(pointer, TextPosition{line_, column_});
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
        advance();
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] != '}') {
            std::string key = read_string();
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ':') advance();
            skip_ws();
            value(pointer + "/" + pointer_escape(key));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                advance();
                skip_ws();
            }
        }
        if (pos_ < text_.size()) advance();
    } else if (c == '[') {
        advance();
        skip_ws();
        std::size_t index = 0;
        while (pos_ < text_.size() && text_[pos_] != ']') {
            value(pointer + "/" + std::to_string(index++));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                advance();
                skip_ws();
            }
        }
        if (pos_ < text_.size()) advance();
    } else if (c == '"') {
        skip_string();
    } else {
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
               text_[pos_] != ']' && !std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }
}

}  // namespace orgrisk::detail
