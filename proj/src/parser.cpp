#include "ggdr/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ggdr/error.hpp"

namespace ggdr {

namespace {

enum class Tok {
    End,
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Dot,
    Dash,        // wildcard label
    ArrowStart,  // -[
    ArrowEnd,    // ]->
    Eq,
    Neq,
    Lt,
    Gt,
    Le,
    Ge,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("ggd", current_.line, current_.col, message);
    }

private:
    void advance() {
        skip_space();
        current_.line = line_;
        current_.col = col_;
        current_.text.clear();
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                current_.text.push_back(take());
            }
            current_.kind = Tok::Ident;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            lex_number();
            return;
        }
        switch (c) {
            case '"': lex_string(); return;
            case '{': take(); current_.kind = Tok::LBrace; return;
            case '}': take(); current_.kind = Tok::RBrace; return;
            case '(': take(); current_.kind = Tok::LParen; return;
            case ')': take(); current_.kind = Tok::RParen; return;
            case ':': take(); current_.kind = Tok::Colon; return;
            case ';': take(); current_.kind = Tok::Semi; return;
            case ',': take(); current_.kind = Tok::Comma; return;
            case '.': take(); current_.kind = Tok::Dot; return;
            case '=': take(); current_.kind = Tok::Eq; return;
            case '-':
                take();
                if (pos_ < text_.size() && text_[pos_] == '[') {
                    take();
                    current_.kind = Tok::ArrowStart;
                } else {
                    current_.kind = Tok::Dash;
                }
                return;
            case ']':
                take();
                if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
                    take();
                    take();
                    current_.kind = Tok::ArrowEnd;
                    return;
                }
                throw ParseError("ggd", line_, col_, "expected ']->'");
            case '!':
                take();
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    take();
                    current_.kind = Tok::Neq;
                    return;
                }
                throw ParseError("ggd", line_, col_, "expected '!='");
            case '<':
                take();
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    take();
                    current_.kind = Tok::Le;
                } else {
                    current_.kind = Tok::Lt;
                }
                return;
            case '>':
                take();
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    take();
                    current_.kind = Tok::Ge;
                } else {
                    current_.kind = Tok::Gt;
                }
                return;
            default:
                throw ParseError("ggd", line_, col_,
                                 std::string("unexpected character '") + c + "'");
        }
    }

    void lex_number() {
        bool is_float = false;
        if (text_[pos_] == '-') current_.text.push_back(take());
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                current_.text.push_back(take());
            } else if ((c == '.' || c == 'e' || c == 'E') ||
                       ((c == '+' || c == '-') && !current_.text.empty() &&
                        (current_.text.back() == 'e' || current_.text.back() == 'E'))) {
                if (c == '.' && pos_ + 1 < text_.size() &&
                    !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                    break;
                }
                is_float = true;
                current_.text.push_back(take());
            } else {
                break;
            }
        }
        current_.kind = Tok::Number;
        if (is_float) current_.text.insert(0, "f");  // kind marker, stripped by parser
    }

    void lex_string() {
        take();  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            char c = take();
            if (c == '\\' && pos_ < text_.size()) {
                c = take();
            } else if (c == '\n') {
                throw ParseError("ggd", line_, col_, "unterminated string");
            }
            current_.text.push_back(c);
        }
        if (pos_ >= text_.size()) throw ParseError("ggd", line_, col_, "unterminated string");
        take();  // closing quote
        current_.kind = Tok::String;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) {}

    GgdSet parse() {
        GgdSet set;
        while (lexer_.peek().kind != Tok::End) {
            set.ggds.push_back(parse_ggd());
        }
        try {
            set.validate();
        } catch (const IntegrityError& e) {
            throw ParseError("ggd", lexer_.peek().line, lexer_.peek().col, e.what());
        }
        return set;
    }

private:
    Ggd parse_ggd() {
        Token kw = expect(Tok::Ident, "expected 'ggd'");
        if (kw.text != "ggd") fail(kw, "expected 'ggd'");
        Ggd ggd;
        ggd.name = expect(Tok::Ident, "expected rule name").text;
        expect(Tok::LBrace, "expected '{'");
        expect_keyword("source");
        parse_block_pattern(ggd.source);
        expect_keyword("where");
        parse_block_constraints(ggd.source_where);
        expect_keyword("target");
        parse_block_pattern(ggd.target);
        expect_keyword("having");
        parse_block_constraints(ggd.target_having);
        expect(Tok::RBrace, "expected '}'");
        Token at = lexer_.peek();
        try {
            ggd.validate();
        } catch (const IntegrityError& e) {
            throw ParseError("ggd", at.line, at.col, e.what());
        }
        return ggd;
    }

    void parse_block_pattern(GraphPattern& pattern) {
        expect(Tok::LBrace, "expected '{'");
        if (lexer_.peek().kind != Tok::RBrace) {
            parse_element(pattern);
            while (lexer_.peek().kind == Tok::Comma) {
                lexer_.next();
                parse_element(pattern);
            }
        }
        expect(Tok::RBrace, "expected '}'");
    }

    void parse_element(GraphPattern& pattern) {
        std::string from = parse_endpoint(pattern);
        if (lexer_.peek().kind != Tok::ArrowStart) return;
        lexer_.next();
        Token evar = expect(Tok::Ident, "expected edge variable");
        expect(Tok::Colon, "expected ':'");
        std::string elabel = parse_label();
        expect(Tok::ArrowEnd, "expected ']->'");
        std::string to = parse_endpoint(pattern);
        if (pattern.has_var(evar.text)) fail(evar, "duplicate variable '" + evar.text + "'");
        pattern.edges.push_back({evar.text, elabel, from, to});
    }

    /// `(v)`, `(v:label)`; bare references to unseen variables declare
    /// them with the wildcard label.
    std::string parse_endpoint(GraphPattern& pattern) {
        expect(Tok::LParen, "expected '('");
        Token var = expect(Tok::Ident, "expected variable");
        std::string label;
        bool labeled = false;
        if (lexer_.peek().kind == Tok::Colon) {
            lexer_.next();
            label = parse_label();
            labeled = true;
        }
        expect(Tok::RParen, "expected ')'");
        if (pattern.is_edge_var(var.text)) {
            fail(var, "variable '" + var.text + "' already names an edge");
        }
        const std::string* existing = pattern.label_of(var.text);
        if (existing) {
            if (labeled && *existing != label) {
                fail(var, "variable '" + var.text + "' redeclared with label '" + label +
                              "' (was '" + *existing + "')");
            }
            return var.text;
        }
        pattern.vertices.push_back({var.text, labeled ? label : std::string(kWildcardLabel)});
        return var.text;
    }

    std::string parse_label() {
        Token t = lexer_.next();
        if (t.kind == Tok::Ident) return t.text;
        if (t.kind == Tok::Dash) return kWildcardLabel;
        fail(t, "expected label or '-'");
    }

    void parse_block_constraints(std::vector<Constraint>& constraints) {
        expect(Tok::LBrace, "expected '{'");
        while (lexer_.peek().kind != Tok::RBrace) {
            constraints.push_back(parse_constraint());
            expect(Tok::Semi, "expected ';'");
        }
        expect(Tok::RBrace, "expected '}'");
    }

    Constraint parse_constraint() {
        Token head = expect(Tok::Ident, "expected constraint");
        auto fn = parse_distance_fn(head.text);
        if (fn && lexer_.peek().kind == Tok::LParen) {
            lexer_.next();
            Term lhs = parse_term();
            expect(Tok::Comma, "expected ','");
            Term rhs = parse_term();
            expect(Tok::RParen, "expected ')'");
            CompareOp op = parse_op();
            Token num = expect(Tok::Number, "expected threshold");
            double threshold = number_value(num).number();
            if (!lhs.is_attr() && !rhs.is_attr()) {
                fail(head, "constraint compares two constants");
            }
            if (threshold < 0) fail(num, "negative threshold");
            return Constraint::dist(*fn, std::move(lhs), std::move(rhs), op, threshold);
        }
        Token op = lexer_.next();
        if (op.kind == Tok::Eq || op.kind == Tok::Neq) {
            Token rhs = expect(Tok::Ident, "expected variable");
            return Constraint::ident(op.kind == Tok::Eq, head.text, rhs.text);
        }
        fail(op, "expected '=', '!=' or a distance function");
    }

    Term parse_term() {
        Token t = lexer_.next();
        if (t.kind == Tok::Ident) {
            expect(Tok::Dot, "expected '.' after variable");
            Token key = expect(Tok::Ident, "expected property key");
            return Term::attr(t.text, key.text);
        }
        if (t.kind == Tok::String) return Term::constant_of(Value(t.text));
        if (t.kind == Tok::Number) return Term::constant_of(number_value(t));
        fail(t, "expected term");
    }

    CompareOp parse_op() {
        Token t = lexer_.next();
        switch (t.kind) {
            case Tok::Lt: return CompareOp::Lt;
            case Tok::Gt: return CompareOp::Gt;
            case Tok::Le: return CompareOp::Le;
            case Tok::Ge: return CompareOp::Ge;
            case Tok::Eq: return CompareOp::Eq;
            case Tok::Neq: return CompareOp::Ne;
            default: fail(t, "expected comparison operator");
        }
    }

    static Value number_value(const Token& t) {
        if (!t.text.empty() && t.text.front() == 'f') {
            return Value(std::stod(t.text.substr(1)));
        }
        return Value(static_cast<std::int64_t>(std::stoll(t.text)));
    }

    void expect_keyword(const std::string& keyword) {
        Token t = expect(Tok::Ident, "expected '" + keyword + "'");
        if (t.text != keyword) fail(t, "expected '" + keyword + "', got '" + t.text + "'");
    }

    Token expect(Tok kind, const std::string& message) {
        Token t = lexer_.next();
        if (t.kind != kind) fail(t, message);
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) {
        throw ParseError("ggd", at.line, at.col, message);
    }

    Lexer lexer_;
};

}  // namespace

GgdSet parse_ggds(const std::string& text) {
    return Parser(text).parse();
}

GgdSet load_ggds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_ggds(buffer.str());
}

std::string to_text(const GraphPattern& pattern) {
    std::string out;
    bool first = true;
    for (const auto& v : pattern.vertices) {
        if (!first) out += ", ";
        first = false;
        out += "(" + v.var + ":" + v.label + ")";
    }
    for (const auto& e : pattern.edges) {
        if (!first) out += ", ";
        first = false;
        out += "(" + e.from + ")-[" + e.var + ":" + e.label + "]->(" + e.to + ")";
    }
    return out;
}

namespace {

std::string constraints_text(const std::vector<Constraint>& constraints) {
    std::string out;
    for (const auto& c : constraints) out += " " + c.to_text() + ";";
    return out;
}

}  // namespace

std::string to_text(const Ggd& ggd) {
    std::string out = "ggd " + ggd.name + " {\n";
    out += "  source {" + (ggd.source.empty() ? "" : " " + to_text(ggd.source) + " ") + "}\n";
    out += "  where {" + constraints_text(ggd.source_where) + " }\n";
    out += "  target {" + (ggd.target.empty() ? "" : " " + to_text(ggd.target) + " ") + "}\n";
    out += "  having {" + constraints_text(ggd.target_having) + " }\n";
    out += "}\n";
    return out;
}

std::string to_text(const GgdSet& set) {
    std::string out;
    for (const auto& ggd : set.ggds) out += to_text(ggd);
    return out;
}

}  // namespace ggdr
