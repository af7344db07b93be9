#pragma once

// Maps JSON pointers to the line/column where the pointed-to value starts.
// nlohmann::json drops source positions, so schema errors found after
// parsing are located by re-scanning the (already validated) text.

#include <string>
#include <string_view>
#include <unordered_map>

namespace orgrisk::detail {

struct TextPosition {
    int line = 0;
    int column = 0;
};

std::string pointer_escape(std::string_view key);

class JsonLocator {
public:
    JsonLocator() = default;
    // `text` must be well-formed JSON.
    explicit JsonLocator(std::string_view text);

    // Position of the value at `pointer`, or of its closest located ancestor.
    TextPosition at(const std::string& pointer) const;

private:
    void value(const std::string& pointer);
    void skip_ws();
    void skip_string();
    std::string read_string();
    void advance();

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    std::unordered_map<std::string, TextPosition> positions_;
};

// 1-based line/column of byte offset `offset` in `text`.
TextPosition position_of(std::string_view text, std::size_t offset);

}  // namespace orgrisk::detail
