#include "quasiform/script.hpp"

#include "quasiform/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace qf::cli
{

std::string_view to_string(CommandKind kind) noexcept
{
    switch (kind) {
    case CommandKind::invariants:
        return "invariants";
    case CommandKind::compare:
        return "compare";
    case CommandKind::ruling:
        return "ruling";
    case CommandKind::regular:
        return "regular";
    case CommandKind::splitting:
        return "splitting";
    case CommandKind::corpus:
        return "corpus";
    }
    return "unknown";
}

const FormDefinition *Script::find_form(std::string_view name) const
{
    for (const auto &f : forms) {
        if (f.name == name) {
            return &f;
        }
    }
    return nullptr;
}

namespace
{

enum class Tok { ident, number, symbol, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string where(const Token &t)
{
    return "line " + std::to_string(t.line) + ", column " + std::to_string(t.column);
}

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        std::size_t len = 1;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (i + len < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_')) {
                ++len;
            }
            t.kind = Tok::ident;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) {
                ++len;
            }
            t.kind = Tok::number;
        } else if (std::string_view(";,=<>()+-*/^").find(ch) != std::string_view::npos) {
            t.kind = Tok::symbol;
        } else {
            throw SyntaxError(where(t) + ": unexpected character '" + std::string(1, ch) + "'");
        }
        t.text = std::string(text.substr(i, len));
        advance(len);
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

class Parser
{
public:
    Parser(std::string_view text, std::size_t depth) : tokens_(tokenize(text)), depth_(depth) {}

    Script parse()
    {
        while (peek().kind != Tok::end) {
            statement();
        }
        return std::move(script_);
    }

private:
    const Token &peek() const
    {
        return tokens_[pos_];
    }

    Token next()
    {
        Token t = tokens_[pos_];
        if (t.kind != Tok::end) {
            ++pos_;
        }
        return t;
    }

    bool accept(std::string_view symbol)
    {
        if (peek().kind == Tok::symbol && peek().text == symbol) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(std::string_view symbol)
    {
        if (!accept(symbol)) {
            fail(peek(), "expected '" + std::string(symbol) + "'");
        }
    }

    [[noreturn]] static void fail(const Token &t, const std::string &msg)
    {
        const std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(where(t) + ": " + msg + ", found " + found);
    }

    std::string identifier()
    {
        if (peek().kind != Tok::ident) {
            fail(peek(), "expected a name");
        }
        return next().text;
    }

    void statement()
    {
        const Token head = peek();
        if (head.kind != Tok::ident) {
            fail(head, "expected a statement");
        }
        next();
        if (head.text == "field") {
            field_declaration(head);
        } else if (head.text == "form") {
            form_definition(head);
        } else if (head.text == "corpus") {
            script_.commands.push_back({CommandKind::corpus, {}, head.line});
        } else if (head.text == "compare") {
            command(head, CommandKind::compare, 2);
        } else if (head.text == "invariants") {
            command(head, CommandKind::invariants, 1);
        } else if (head.text == "ruling") {
            command(head, CommandKind::ruling, 1);
        } else if (head.text == "regular") {
            command(head, CommandKind::regular, 1);
        } else if (head.text == "splitting") {
            command(head, CommandKind::splitting, 1);
        } else {
            throw SyntaxError(where(head) + ": unknown statement '" + head.text + "'");
        }
        expect(";");
    }

    void field_declaration(const Token &head)
    {
        if (script_.field) {
            throw SyntaxError(where(head) + ": the field is already declared");
        }
        const Token f = peek();
        if (f.kind != Tok::ident || f.text != "F2") {
            fail(f, "expected 'F2'");
        }
        next();
        expect("(");
        std::vector<std::string> vars;
        if (!accept(")")) {
            do {
                const Token v = peek();
                std::string name = identifier();
                if (std::find(vars.begin(), vars.end(), name) != vars.end()) {
                    throw SyntaxError(where(v) + ": variable '" + name + "' declared twice");
                }
                vars.push_back(std::move(name));
            } while (accept(","));
            expect(")");
        }
        script_.variables = vars;
        script_.field = FieldTower::rational(vars, depth_);
    }

    void form_definition(const Token &head)
    {
        if (!script_.field) {
            throw SyntaxError(where(head) + ": forms need a field declaration first");
        }
        const Token name_tok = peek();
        std::string name = identifier();
        if (script_.find_form(name) != nullptr) {
            throw SyntaxError(where(name_tok) + ": form '" + name + "' defined twice");
        }
        expect("=");
        expect("<");
        std::vector<TowerElement> coeffs;
        do {
            const Token start = peek();
            RatFn value = expression();
            if (value.is_zero()) {
                throw ZeroCoefficient(where(start) + ": coefficient " + std::to_string(coeffs.size() + 1) +
                                      " of form '" + name + "' is zero");
            }
            coeffs.emplace_back(script_.field, std::move(value));
        } while (accept(","));
        expect(">");
        script_.forms.push_back({std::move(name), QuasilinearForm(script_.field, std::move(coeffs))});
    }

    void command(const Token &head, CommandKind kind, std::size_t arity)
    {
        Command c{kind, {}, head.line};
        for (std::size_t i = 0; i < arity; ++i) {
            const Token t = peek();
            std::string name = identifier();
            if (script_.find_form(name) == nullptr) {
                throw UndefinedForm(where(t) + ": form '" + name + "' is not defined");
            }
            c.forms.push_back(std::move(name));
        }
        script_.commands.push_back(std::move(c));
    }

    // Characteristic 2: subtraction is addition.
    RatFn expression()
    {
        RatFn v = term();
        while (accept("+") || accept("-")) {
            v += term();
        }
        return v;
    }

    RatFn term()
    {
        RatFn v = unary();
        while (true) {
            if (accept("*")) {
                v *= unary();
            } else if (peek().kind == Tok::symbol && peek().text == "/") {
                const Token slash = next();
                const RatFn d = unary();
                if (d.is_zero()) {
                    throw SyntaxError(where(slash) + ": division by zero");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    RatFn unary()
    {
        if (accept("-") || accept("+")) {
            return unary();
        }
        return power();
    }

    RatFn power()
    {
        RatFn base = primary();
        if (!accept("^")) {
            return base;
        }
        const bool negative = accept("-");
        const Token t = peek();
        if (t.kind != Tok::number) {
            fail(t, "expected an integer exponent");
        }
        next();
        std::int64_t e = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw ExponentOverflow(where(t) + ": exponent out of range");
        }
        if (negative && base.is_zero()) {
            throw SyntaxError(where(t) + ": division by zero");
        }
        return base.pow(negative ? -e : e);
    }

    RatFn primary()
    {
        const Token t = peek();
        if (accept("(")) {
            RatFn v = expression();
            expect(")");
            return v;
        }
        if (t.kind == Tok::number) {
            next();
            if (t.text == "0") {
                return RatFn();
            }
            if (t.text == "1") {
                return RatFn::one();
            }
            throw SyntaxError(where(t) + ": only the constants 0 and 1 exist in F2");
        }
        if (t.kind == Tok::ident) {
            next();
            if (!script_.field->base().contains(t.text)) {
                throw UndeclaredVariable(where(t) + ": variable '" + t.text + "' is not declared");
            }
            return RatFn(script_.field->base().variable(t.text));
        }
        fail(t, "expected an expression");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t depth_;
    Script script_;
};

} // namespace

Script parse_script(std::string_view text, std::size_t max_tower_depth)
{
    return Parser(text, max_tower_depth).parse();
}

std::string print_script(const Script &script)
{
    std::string out;
    if (script.field) {
        out += "field F2(";
        for (std::size_t i = 0; i < script.variables.size(); ++i) {
            out += (i ? "," : "") + script.variables[i];
        }
        out += ");\n";
    }
    for (const auto &f : script.forms) {
        out += "form " + f.name + " = " + f.form.to_string() + ";\n";
    }
    for (const auto &c : script.commands) {
        out += std::string(to_string(c.kind));
        for (const auto &name : c.forms) {
            out += " " + name;
        }
        out += ";\n";
    }
    return out;
}

} // namespace qf::cli
