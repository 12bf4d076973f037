#include "qrtw/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qrtw {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
    std::string integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected integer at '" + s.substr(start, 8) + "'");
        return s.substr(start, pos - start);
    }
};

struct Parser {
    Lexer lex;
    SymbolsPtr syms;

    RationalFunction expr() {
        RationalFunction r = term();
        while (true) {
            if (lex.accept('+')) r = r + term();
            else if (lex.accept('-')) r = r - term();
            else return r;
        }
    }

    RationalFunction term() {
        RationalFunction r = factor();
        while (true) {
            if (lex.accept('*')) r = r * factor();
            else if (lex.accept('/')) r = r / factor();
            else return r;
        }
    }

    RationalFunction factor() {
        if (lex.accept('-')) return -factor();
        if (lex.accept('+')) return factor();
        return power();
    }

    RationalFunction power() {
        RationalFunction base = atom();
        if (lex.accept('^')) {
            long e = std::stol(lex.integer());
            return base.pow_int(e);
        }
        return base;
    }

    RationalFunction atom() {
        char c = lex.peek();
        if (c == '(') {
            lex.accept('(');
            RationalFunction r = expr();
            if (!lex.accept(')')) throw ParseError("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return RationalFunction::constant(syms, parse_rational(lex.integer()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = lex.ident();
            int idx = syms->index_of(name);
            if (idx < 0) throw ParseError("unknown symbol '" + name + "'");
            return RationalFunction::variable(syms, static_cast<size_t>(idx));
        }
        throw ParseError(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

RationalFunction parse_expression(const std::string& text, const SymbolsPtr& syms) {
    Parser p{Lexer{text}, syms};
    RationalFunction r = p.expr();
    if (!p.lex.eof())
        throw ParseError("trailing input at '" + text.substr(p.lex.pos) + "'");
    return r;
}

std::vector<Definition> parse_definitions(const std::string& text) {
    std::vector<Definition> defs;
    SymbolsPtr syms;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);
        if (body.rfind("@vars", 0) == 0) {
            std::istringstream vs(body.substr(5));
            std::vector<std::string> names;
            std::string n;
            while (vs >> n) names.push_back(n);
            if (names.empty())
                throw ParseError("line " + std::to_string(lineno) + ": empty @vars");
            syms = make_symbols(names);
            continue;
        }
        size_t sep = body.find(":=");
        if (sep == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'name := expression'");
        std::string name = body.substr(0, sep);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
            name.pop_back();
        if (name.empty())
            throw ParseError("line " + std::to_string(lineno) + ": missing definition name");
        if (!syms)
            throw ParseError("line " + std::to_string(lineno) + ": no @vars directive yet");
        try {
            defs.push_back({name, syms, parse_expression(body.substr(sep + 2), syms)});
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + " (" + name + "): " + e.what());
        }
    }
    return defs;
}

std::vector<Definition> parse_definition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open definition file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_definitions(buf.str());
}

} // namespace qrtw
