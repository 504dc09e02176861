#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "copson/errors.hpp"

namespace copson::detail {

// Cursor over the weight/step grammar. Whitespace is insignificant.
class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string identifier();
    // Decimal number, 'inf', or a fraction of two such.
    double number();
    std::vector<double> list();
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
    std::size_t position() const { return pos_; }

private:
    double atom();

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace copson::detail
