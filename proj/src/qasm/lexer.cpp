// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <cctype>

#include "hqec/errors.hpp"

namespace hqec::qasm {

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n = 1) {
        for (; n > 0 && i < src.size(); --n, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto peek = [&](std::size_t k = 0) { return i + k < src.size() ? src[i + k] : '\0'; };

    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance();
            continue;
        }
        if (ch == '/' && peek(1) == '/') {
            std::size_t j = i + 2;
            while (j < src.size() && (src[j] == ' ' || src[j] == '\t')) {
                ++j;
            }
            if (j < src.size() && src[j] == '@') {
                advance(2);
                while (peek() == ' ' || peek() == '\t') {
                    advance();
                }
                out.push_back({Tok::Pragma, "@", line, col});
                advance();
                continue;
            }
            while (i < src.size() && src[i] != '\n') {
                advance();
            }
            continue;
        }
        if (ch == '/' && peek(1) == '*') {
            const std::size_t l0 = line, c0 = col;
            advance(2);
            while (i < src.size() && !(src[i] == '*' && peek(1) == '/')) {
                advance();
            }
            if (i >= src.size()) {
                throw ParseError(l0, c0, "unterminated comment");
            }
            advance(2);
            continue;
        }
        Token t{Tok::End, {}, line, col};
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            t.kind = Tok::Ident;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                t.text += peek();
                advance();
            }
        } else if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            t.kind = Tok::Int;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                t.text += peek();
                advance();
            }
            if (peek() == '.') {
                t.kind = Tok::Real;
                t.text += '.';
                advance();
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    t.text += peek();
                    advance();
                }
            }
            if (peek() == 'e' || peek() == 'E') {
                t.kind = Tok::Real;
                t.text += 'e';
                advance();
                if (peek() == '+' || peek() == '-') {
                    t.text += peek();
                    advance();
                }
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    throw ParseError(line, col, "malformed exponent");
                }
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    t.text += peek();
                    advance();
                }
            }
        } else if (ch == '"') {
            t.kind = Tok::String;
            advance();
            while (i < src.size() && src[i] != '"' && src[i] != '\n') {
                t.text += src[i];
                advance();
            }
            if (peek() != '"') {
                throw ParseError(t.line, t.col, "unterminated string");
            }
            advance();
        } else if ((ch == '-' && peek(1) == '>') || (ch == '=' && peek(1) == '=')) {
            t.kind = Tok::Symbol;
            t.text = std::string(src.substr(i, 2));
            advance(2);
        } else if (std::string_view(";,[](){}+-*/^&").find(ch) != std::string_view::npos) {
            t.kind = Tok::Symbol;
            t.text = std::string(1, ch);
            advance();
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, {}, line, col});
    return out;
}

}  // namespace hqec::qasm
