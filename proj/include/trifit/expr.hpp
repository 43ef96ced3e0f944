#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <numbers>
#include <string>

#include "trifit/errors.hpp"

// Arithmetic over named parameters, just big enough for linked-parameter
// sweep expressions like (pi - angC) / 2: the four operators, unary sign,
// parentheses, numeric literals, pi, and identifiers from the caller's map.

namespace trifit {

namespace detail {

class ExprParser {
  public:
    ExprParser(const std::string& text, const std::map<std::string, double>& vars)
        : text_(text), vars_(vars) {}

    double parse() {
        const double value = sum();
        skip_space();
        if (pos_ != text_.size())
            throw RequestInvalid("trailing characters in expression: " + text_);
        return value;
    }

  private:
    double sum() {
        double value = term();
        for (;;) {
            skip_space();
            if (take('+'))
                value += term();
            else if (take('-'))
                value -= term();
            else
                return value;
        }
    }

    double term() {
        double value = factor();
        for (;;) {
            skip_space();
            if (take('*'))
                value *= factor();
            else if (take('/'))
                value /= factor();
            else
                return value;
        }
    }

    double factor() {
        skip_space();
        if (take('+')) return factor();
        if (take('-')) return -factor();
        if (take('(')) {
            const double value = sum();
            skip_space();
            if (!take(')')) throw RequestInvalid("missing ')' in expression: " + text_);
            return value;
        }
        if (pos_ < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            char* end = nullptr;
            const double value = std::strtod(text_.c_str() + pos_, &end);
            pos_ = static_cast<std::size_t>(end - text_.c_str());
            return value;
        }
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                    text_[pos_] == '_')) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                ++pos_;
            const std::string name = text_.substr(start, pos_ - start);
            if (name == "pi") return std::numbers::pi;
            const auto it = vars_.find(name);
            if (it == vars_.end())
                throw RequestInvalid("unknown identifier in expression: " + name);
            return it->second;
        }
        throw RequestInvalid("malformed expression: " + text_);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool take(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    const std::string& text_;
    const std::map<std::string, double>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline double eval_expr(const std::string& text, const std::map<std::string, double>& vars) {
    return detail::ExprParser(text, vars).parse();
}

}  // namespace trifit
