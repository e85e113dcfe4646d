// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hqec::qasm {

enum class Tok : std::uint8_t {
    Ident,
    Int,
    Real,
    String,
    Pragma,  // `// @` opens a pragma statement
    Symbol,  // ; , [ ] ( ) { } -> == + - * / ^ &
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

/// Throws ParseError on characters outside the language.
std::vector<Token> lex(std::string_view src);

}  // namespace hqec::qasm
