#include <nglearn/parser.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>

namespace nglearn {
namespace {

enum class Tok {
    Ident,
    Variable,
    Integer,
    LParen,
    RParen,
    Comma,
    Dot,
    If,      // :-
    Colon,
    Semi,
    LBrace,
    RBrace,
    Cmp,
    Not,
    Unsupported,
    End
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    Lexer(std::string_view src, std::vector<PredicateSig>& directives) : src_(src), directives_(directives) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skipSpaceAndComments();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i != n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            }
            else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skipSpaceAndComments() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            }
            else if (c == '%' && peek(1) == '*') {
                advance(2);
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '%')) {
                    advance();
                }
                advance(2);
            }
            else if (c == '%') {
                std::size_t start = pos_;
                while (pos_ < src_.size() && peek() != '\n') {
                    advance();
                }
                directive(src_.substr(start, pos_ - start));
            }
            else {
                return;
            }
        }
    }

    void directive(std::string_view comment) {
        static const std::regex re(R"(^%\s*#input\s+([a-z][A-Za-z0-9_]*)\s*/\s*([0-9]+)\s*\.?\s*$)");
        std::cmatch m;
        if (std::regex_match(comment.begin(), comment.end(), m, re)) {
            directives_.push_back({m[1].str(), std::stoi(m[2].str())});
        }
    }

    Token next() {
        int l = line_, c = col_;
        char ch = peek();
        auto make = [&](Tok k, std::size_t len) {
            Token t{k, std::string(src_.substr(pos_, len)), l, c};
            advance(len);
            return t;
        };
        if (std::islower(static_cast<unsigned char>(ch))) {
            std::size_t n = 1;
            while (std::isalnum(static_cast<unsigned char>(peek(n))) || peek(n) == '_') {
                ++n;
            }
            Token t = make(Tok::Ident, n);
            if (t.text == "not") {
                t.kind = Tok::Not;
            }
            return t;
        }
        if (std::isupper(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t n = 1;
            while (std::isalnum(static_cast<unsigned char>(peek(n))) || peek(n) == '_') {
                ++n;
            }
            return make(Tok::Variable, n);
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '-' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            std::size_t n = 1;
            while (std::isdigit(static_cast<unsigned char>(peek(n)))) {
                ++n;
            }
            return make(Tok::Integer, n);
        }
        switch (ch) {
            case '(': return make(Tok::LParen, 1);
            case ')': return make(Tok::RParen, 1);
            case ',': return make(Tok::Comma, 1);
            case ';': return make(Tok::Semi, 1);
            case '{': return make(Tok::LBrace, 1);
            case '}': return make(Tok::RBrace, 1);
            case '.': return peek(1) == '.' ? make(Tok::Unsupported, 2) : make(Tok::Dot, 1);
            case ':':
                if (peek(1) == '-') return make(Tok::If, 2);
                if (peek(1) == '~') return make(Tok::Unsupported, 2);
                return make(Tok::Colon, 1);
            case '<':
                if (peek(1) == '=') return make(Tok::Cmp, 2);
                if (peek(1) == '>') {
                    Token t = make(Tok::Cmp, 2);
                    t.text = "!=";
                    return t;
                }
                return make(Tok::Cmp, 1);
            case '>': return peek(1) == '=' ? make(Tok::Cmp, 2) : make(Tok::Cmp, 1);
            case '=': {
                Token t = peek(1) == '=' ? make(Tok::Cmp, 2) : make(Tok::Cmp, 1);
                t.text = "=";
                return t;
            }
            case '!':
                if (peek(1) == '=') return make(Tok::Cmp, 2);
                break;
            case '#': {
                std::size_t n = 1;
                while (std::isalpha(static_cast<unsigned char>(peek(n)))) {
                    ++n;
                }
                return make(Tok::Unsupported, n);
            }
            case '|':
            case '+':
            case '-':
            case '*':
            case '/':
            case '\\':
            case '@':
            case '"':
            case '~':
            case '&':
            case '^': return make(Tok::Unsupported, 1);
            default: break;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }

    std::string_view src_;
    std::vector<PredicateSig>& directives_;
    std::size_t pos_{0};
    int line_{1};
    int col_{1};
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program p;
        while (cur().kind != Tok::End) {
            p.rules.push_back(statement());
        }
        p.renumber();
        return p;
    }

    std::vector<Literal> constraintOnly() {
        expect(Tok::If, "':-'");
        Rule r;
        r.body = body();
        expect(Tok::Dot, "'.'");
        checkSafety(r, toks_.front());
        if (cur().kind != Tok::End) {
            error("expected end of input");
        }
        return r.body;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& peekTok(std::size_t n = 1) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, cur().line, cur().col); }
    [[noreturn]] void unsupported() const {
        throw ParseError("unsupported construct '" + cur().text + "'", cur().line, cur().col);
    }

    void expect(Tok k, const char* what) {
        if (cur().kind == Tok::Unsupported) {
            unsupported();
        }
        if (cur().kind != k) {
            error(std::string("expected ") + what + ", got '" + cur().text + "'");
        }
        ++pos_;
    }

    Rule statement() {
        const Token start = cur();
        Rule r;
        if (cur().kind == Tok::If) {
            take();
            r.body = body();
        }
        else {
            if (cur().kind == Tok::LBrace) {
                r.isChoice = true;
                r.choice   = choiceHead();
            }
            else if (cur().kind == Tok::Integer && peekTok().kind == Tok::LBrace) {
                unsupported();
            }
            else {
                Literal l = literal();
                if (l.naf || l.atom.kind != AtomKind::Classical) {
                    throw ParseError("invalid rule head", start.line, start.col);
                }
                r.head = std::move(l.atom);
                if (cur().kind == Tok::Semi || cur().kind == Tok::Unsupported) {
                    unsupported();
                }
            }
            if (cur().kind == Tok::If) {
                take();
                r.body = body();
            }
        }
        expect(Tok::Dot, "'.'");
        checkSafety(r, start);
        return r;
    }

    std::vector<ChoiceElement> choiceHead() {
        expect(Tok::LBrace, "'{'");
        std::vector<ChoiceElement> elems;
        while (true) {
            ChoiceElement e;
            Literal l = literal();
            if (l.naf || l.atom.kind != AtomKind::Classical) {
                error("choice element must be a classical atom");
            }
            e.atom = std::move(l.atom);
            if (cur().kind == Tok::Colon) {
                take();
                e.condition.push_back(literal());
                while (cur().kind == Tok::Comma) {
                    take();
                    e.condition.push_back(literal());
                }
            }
            elems.push_back(std::move(e));
            if (cur().kind == Tok::Semi) {
                take();
                continue;
            }
            break;
        }
        expect(Tok::RBrace, "'}'");
        if (cur().kind == Tok::Integer || cur().kind == Tok::Cmp) {
            unsupported(); // bounds
        }
        return elems;
    }

    std::vector<Literal> body() {
        std::vector<Literal> lits;
        lits.push_back(literal());
        while (cur().kind == Tok::Comma) {
            take();
            lits.push_back(literal());
        }
        return lits;
    }

    Literal literal() {
        bool naf = false;
        if (cur().kind == Tok::Not) {
            take();
            naf = true;
            if (cur().kind == Tok::Not) {
                unsupported();
            }
        }
        if (cur().kind == Tok::Unsupported || cur().kind == Tok::LBrace ||
            (cur().kind == Tok::Integer && peekTok().kind == Tok::LBrace)) {
            unsupported();
        }
        const Token at = cur();
        Term lhs = term();
        if (cur().kind == Tok::Cmp) {
            std::string op = take().text;
            Term rhs = term();
            return Literal{Atom::builtin(op, std::move(lhs), std::move(rhs)), naf};
        }
        if (lhs.kind() != Term::Kind::Symbol && lhs.kind() != Term::Kind::Function) {
            throw ParseError("expected atom", at.line, at.col);
        }
        std::vector<Term> args = lhs.args();
        return Literal{Atom::classical(lhs.name(), std::move(args)), naf};
    }

    Term term() {
        Term t;
        switch (cur().kind) {
            case Tok::Variable: {
                std::string name = take().text;
                if (name == "_") {
                    name = "_" + std::to_string(++anon_);
                }
                t = Term::variable(std::move(name));
                break;
            }
            case Tok::Integer: {
                const Token tok = take();
                std::int64_t v = 0;
                auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
                if (ec != std::errc()) {
                    throw ParseError("integer out of range", tok.line, tok.col);
                }
                t = Term::integer(v);
                break;
            }
            case Tok::Ident: {
                std::string name = take().text;
                std::vector<Term> args;
                if (cur().kind == Tok::LParen) {
                    take();
                    args.push_back(term());
                    while (cur().kind == Tok::Comma) {
                        take();
                        args.push_back(term());
                    }
                    expect(Tok::RParen, "')'");
                }
                t = Term::function(std::move(name), std::move(args));
                break;
            }
            case Tok::Unsupported: unsupported();
            default: error("expected term, got '" + cur().text + "'");
        }
        if (cur().kind == Tok::Unsupported) {
            unsupported(); // arithmetic, intervals
        }
        return t;
    }

    // Every variable must occur in a positive classical body literal; variables
    // of a choice element may also be bound by the element's condition.
    void checkSafety(const Rule& r, const Token& at) const {
        auto bound = [](const std::vector<Literal>& lits) {
            std::vector<std::string> vars;
            for (const auto& l : lits) {
                if (!l.naf && l.atom.kind == AtomKind::Classical) {
                    l.atom.collectVariables(vars);
                }
            }
            return vars;
        };
        auto check = [&](const std::vector<std::string>& vars, const std::vector<std::string>& safe) {
            for (const auto& v : vars) {
                if (std::find(safe.begin(), safe.end(), v) == safe.end()) {
                    throw ParseError("unsafe variable " + v, at.line, at.col);
                }
            }
        };
        const auto safe = bound(r.body);
        std::vector<std::string> vars;
        if (r.head) {
            r.head->collectVariables(vars);
        }
        for (const auto& l : r.body) {
            l.atom.collectVariables(vars);
        }
        check(vars, safe);
        for (const auto& e : r.choice) {
            auto local = safe;
            auto more  = bound(e.condition);
            local.insert(local.end(), more.begin(), more.end());
            std::vector<std::string> ev;
            e.atom.collectVariables(ev);
            for (const auto& l : e.condition) {
                l.atom.collectVariables(ev);
            }
            check(ev, local);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_{0};
    int anon_{0};
};

} // namespace

Program parseProgram(std::string_view text, const std::vector<PredicateSig>& inputPreds) {
    std::vector<PredicateSig> directives;
    Program p = Parser(Lexer(text, directives).run()).program();
    p.inputPredicates.insert(inputPreds.begin(), inputPreds.end());
    p.inputPredicates.insert(directives.begin(), directives.end());
    p.checkInputPredicates();
    return p;
}

PredicateSig parsePredicateSig(std::string_view text) {
    static const std::regex re(R"(^\s*([a-z][A-Za-z0-9_]*)\s*/\s*([0-9]+)\s*$)");
    std::cmatch m;
    if (!std::regex_match(text.begin(), text.end(), m, re)) {
        throw Error("invalid predicate declaration '" + std::string(text) + "', expected name/arity");
    }
    return {m[1].str(), std::stoi(m[2].str())};
}

std::vector<Literal> parseConstraint(std::string_view text) {
    std::vector<PredicateSig> ignored;
    return Parser(Lexer(text, ignored).run()).constraintOnly();
}

} // namespace nglearn
