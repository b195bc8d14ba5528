#include "drflow/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "drflow/errors.hpp"

namespace drflow {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, LBracket, RBracket, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::Int: return "number '" + t.text + "'";
        case Tok::Ident: return "'" + t.text + "'";
        case Tok::End: return "end of input";
        default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    Lexer(const std::string& src, const std::string& provenance, int line, int col)
        : src_(src), prov_(provenance), line_(line), col_(col) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < src_.size()) {
            char c = src_[i];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++i;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                ++col_;
                ++i;
                continue;
            }
            int tline = line_, tcol = col_;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
                out.push_back({Tok::Int, src_.substr(i, j - i), tline, tcol});
                col_ += int(j - i);
                i = j;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                    ++j;
                out.push_back({Tok::Ident, src_.substr(i, j - i), tline, tcol});
                col_ += int(j - i);
                i = j;
                continue;
            }
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '^': k = Tok::Caret; break;
                case '/': k = Tok::Slash; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case '[': k = Tok::LBracket; break;
                case ']': k = Tok::RBracket; break;
                default:
                    throw ParseError(prov_ + ":" + std::to_string(line_) + ":" +
                                         std::to_string(col_) + ": unexpected character '" +
                                         std::string(1, c) + "'",
                                     line_, col_);
            }
            out.push_back({k, std::string(1, c), tline, tcol});
            ++col_;
            ++i;
        }
        out.push_back({Tok::End, "", line_, col_});
        return out;
    }

private:
    const std::string& src_;
    const std::string& prov_;
    int line_;
    int col_;
};

class ExprParser {
public:
    ExprParser(std::vector<Token> toks, int n_vars, const TruncationContext& ctx,
               const std::string& provenance)
        : toks_(std::move(toks)), n_vars_(n_vars), ctx_(ctx), prov_(provenance) {}

    DiffPoly parse() {
        DiffPoly p = expr();
        if (peek().kind != Tok::End) fail(peek(), "expected '+', '-', '*' or end of expression");
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int n_vars_;
    TruncationContext ctx_;
    std::string prov_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what);
        return toks_[pos_++];
    }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        throw ParseError(prov_ + ":" + std::to_string(at.line) + ":" + std::to_string(at.col) +
                             ": " + msg + ", got " + describe(at),
                         at.line, at.col);
    }

    long nat(const char* what) {
        const Token& t = expect(Tok::Int, what);
        if (t.text.size() > 6) fail(t, "exponent too large");
        return std::stol(t.text);
    }

    DiffPoly expr() {
        bool neg = accept(Tok::Minus);
        DiffPoly p = term();
        if (neg) p = -p;
        for (;;) {
            if (accept(Tok::Plus))
                p += term();
            else if (accept(Tok::Minus))
                p -= term();
            else
                return p;
        }
    }

    DiffPoly term() {
        DiffPoly p = factor();
        while (accept(Tok::Star)) p *= factor();
        return p;
    }

    DiffPoly factor() {
        DiffPoly a = atom();
        if (accept(Tok::Caret)) a = a.pow(unsigned(nat("an exponent after '^'")));
        return a;
    }

    DiffPoly atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: return rational_atom();
            case Tok::Ident: return ident_atom();
            case Tok::LParen: {
                advance();
                DiffPoly p = expr();
                expect(Tok::RParen, "')'");
                return p;
            }
            default: fail(t, "expected an expression");
        }
    }

    DiffPoly rational_atom() {
        const Token& num = expect(Tok::Int, "a number");
        Rational r(num.text, 10);
        if (accept(Tok::Slash)) {
            const Token& den = expect(Tok::Int, "a denominator after '/'");
            if (Rational(den.text, 10) == 0) fail(den, "zero denominator");
            r = Rational(num.text + "/" + den.text, 10);
        }
        r.canonicalize();
        return DiffPoly::constant(r, n_vars_, ctx_);
    }

    DiffPoly ident_atom() {
        const Token& t = advance();
        const std::string& s = t.text;
        if (s == "eps") return DiffPoly::constant(1, n_vars_, ctx_).eps_shifted(1);
        if (s == "xi") return DiffPoly::scalar(ParamScalar::param(Param::xi), n_vars_, ctx_);
        if (s == "G1") return DiffPoly::scalar(ParamScalar::param(Param::g1), n_vars_, ctx_);
        if (s == "G2") return DiffPoly::scalar(ParamScalar::param(Param::g2), n_vars_, ctx_);
        if (s == "inv") {
            expect(Tok::LParen, "'(' after inv");
            DiffPoly p = expr();
            expect(Tok::RParen, "')'");
            if (!(p.constant_term() == ParamScalar::one()))
                fail(t, "inv requires constant term 1");
            try {
                return p.invert_unit();
            } catch (const NonInvertibleConstant& e) {
                fail(t, std::string("inv: ") + e.what());
            }
        }
        return jet_atom(t);
    }

    DiffPoly jet_atom(const Token& t) {
        const std::string& s = t.text;
        if (s[0] != 'u' && s[0] != 'v') fail(t, "unknown symbol '" + s + "'");
        std::size_t i = 1;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == 1 || i - 1 > 6) fail(t, "unknown symbol '" + s + "'");
        int idx = int(std::stol(s.substr(1, i - 1)));
        int order = 0;
        if (i < s.size()) {
            /* the '_x', '_xx', ... suffixes */
            if (s[i] != '_' || i + 1 == s.size()) fail(t, "unknown symbol '" + s + "'");
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (s[j] != 'x') fail(t, "unknown symbol '" + s + "'");
            order = int(s.size() - i - 1);
        } else if (accept(Tok::LBracket)) {
            order = int(nat("a jet order"));
            expect(Tok::RBracket, "']'");
        }
        if (idx < 1 || idx > n_vars_)
            fail(t, "variable index out of range: " + s.substr(0, i) + " with arity " +
                        std::to_string(n_vars_));
        return DiffPoly::jet(idx - 1, order, n_vars_, ctx_);
    }
};

/* Initial-data expressions: rationals, 'x', '+', '-', '*', '^', parens. */
class SeriesExprParser {
public:
    SeriesExprParser(std::vector<Token> toks, const SeriesContext& sctx,
                     const std::string& provenance)
        : toks_(std::move(toks)), sctx_(sctx), prov_(provenance) {}

    PowerSeries parse() {
        PowerSeries p = expr();
        if (peek().kind != Tok::End) fail(peek(), "expected '+', '-', '*' or end of expression");
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    SeriesContext sctx_;
    std::string prov_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what);
        return toks_[pos_++];
    }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const {
        throw ParseError(prov_ + ":" + std::to_string(at.line) + ":" + std::to_string(at.col) +
                             ": " + msg + ", got " + describe(at),
                         at.line, at.col);
    }

    PowerSeries expr() {
        bool neg = accept(Tok::Minus);
        PowerSeries p = term();
        if (neg) p = -p;
        for (;;) {
            if (accept(Tok::Plus))
                p += term();
            else if (accept(Tok::Minus))
                p -= term();
            else
                return p;
        }
    }

    PowerSeries term() {
        PowerSeries p = factor();
        while (accept(Tok::Star)) p = p * factor();
        return p;
    }

    PowerSeries factor() {
        PowerSeries a = atom();
        if (accept(Tok::Caret)) {
            const Token& e = expect(Tok::Int, "an exponent after '^'");
            if (e.text.size() > 6) fail(e, "exponent too large");
            a = a.pow(unsigned(std::stol(e.text)));
        }
        return a;
    }

    PowerSeries atom() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            advance();
            Rational r(t.text, 10);
            if (accept(Tok::Slash)) {
                const Token& den = expect(Tok::Int, "a denominator after '/'");
                if (Rational(den.text, 10) == 0) fail(den, "zero denominator");
                r = Rational(t.text + "/" + den.text, 10);
            }
            r.canonicalize();
            return PowerSeries::constant(r, sctx_);
        }
        if (t.kind == Tok::Ident) {
            advance();
            if (t.text == "x") return PowerSeries::var_x(sctx_);
            fail(t, "unknown symbol '" + t.text + "' in initial data");
        }
        if (t.kind == Tok::LParen) {
            advance();
            PowerSeries p = expr();
            expect(Tok::RParen, "')'");
            return p;
        }
        fail(t, "expected an expression");
    }
};

struct SourceLine {
    int number;
    int indent; /* 0-based offset of the first kept character */
    std::string text;
};

/* Splits into lines, strips '#' comments and surrounding blanks. */
std::vector<SourceLine> content_lines(const std::string& text) {
    std::vector<SourceLine> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::string line = raw.substr(0, raw.find('#'));
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        out.push_back({number, int(a), line.substr(a, b - a + 1)});
    }
    return out;
}

[[noreturn]] void line_fail(const std::string& prov, const SourceLine& l, int col,
                            const std::string& msg) {
    throw ParseError(prov + ":" + std::to_string(l.number) + ":" + std::to_string(col) + ": " +
                         msg,
                     l.number, col);
}

struct LabeledBody {
    std::string label;
    std::string body;
    int body_off; /* 0-based offset of the body within the raw line */
};

/* Splits "head: body" at the first colon. */
LabeledBody split_colon(const std::string& prov, const SourceLine& l) {
    std::size_t c = l.text.find(':');
    if (c == std::string::npos)
        line_fail(prov, l, l.indent + 1, "expected '<label>: <expression>'");
    std::size_t b = l.text.find_last_not_of(" \t", c == 0 ? 0 : c - 1);
    if (c == 0 || b == std::string::npos)
        line_fail(prov, l, l.indent + 1, "empty label before ':'");
    return {l.text.substr(0, b + 1), l.text.substr(c + 1), l.indent + int(c) + 1};
}

/* Splits on commas outside parentheses/brackets; returns 0-based offsets. */
std::vector<std::pair<int, std::string>> split_components(const std::string& body, int base) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i < body.size() && (body[i] == '(' || body[i] == '[')) ++depth;
        if (i < body.size() && (body[i] == ')' || body[i] == ']')) --depth;
        if (i == body.size() || (body[i] == ',' && depth == 0)) {
            out.emplace_back(base + int(start), body.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool parse_label_int(const std::string& s, std::size_t& i, int& value) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i || j - i > 6) return false;
    value = int(std::stol(s.substr(i, j - i)));
    i = j;
    return true;
}

} // namespace

DiffPoly parse_expr(const std::string& text, int n_vars, const TruncationContext& ctx,
                    const std::string& provenance, int line, int col) {
    return ExprParser(Lexer(text, provenance, line, col).run(), n_vars, ctx, provenance).parse();
}

EvolutionarySystem parse_system_text(const std::string& text, const TruncationContext& ctx,
                                     const std::string& provenance) {
    EvolutionarySystem sys;
    sys.n_vars = 0;
    for (const SourceLine& l : content_lines(text)) {
        LabeledBody lb = split_colon(provenance, l);
        const std::string& label = lb.label;
        std::size_t i = 0;
        int beta = 0, d = 0;
        bool ok = label.size() > 1 && label[0] == 't';
        i = 1;
        ok = ok && parse_label_int(label, i, beta) && i < label.size() && label[i] == '_';
        if (ok) ++i;
        ok = ok && parse_label_int(label, i, d) && i == label.size() && beta >= 1 && d >= 0;
        if (!ok)
            line_fail(provenance, l, l.indent + 1,
                      "expected flow label 't<beta>_<d>', got '" + label + "'");
        FlowLabel fl{beta, d};
        if (sys.flows.count(fl))
            line_fail(provenance, l, l.indent + 1, "duplicate flow label '" + fl.str() + "'");

        auto parts = split_components(lb.body, lb.body_off);
        if (sys.n_vars == 0) sys.n_vars = int(parts.size());
        if (int(parts.size()) != sys.n_vars)
            line_fail(provenance, l, l.indent + 1,
                      "flow '" + fl.str() + "' has " + std::to_string(parts.size()) +
                          " components, expected " + std::to_string(sys.n_vars));
        std::vector<DiffPoly> comps;
        for (auto& [off, src] : parts)
            comps.push_back(parse_expr(src, sys.n_vars, ctx, provenance, l.number, off + 1));
        sys.flows.emplace(fl, EvolutionaryOp(std::move(comps)));
    }
    if (sys.flows.empty()) throw Error(provenance + ": no flows found");
    return sys;
}

namespace {

/* Shared reader for "u<idx>: <payload>" line files. */
template <class Payload, class ParseBody>
std::vector<Payload> parse_indexed_lines(const std::string& text, const std::string& provenance,
                                         const char* what, ParseBody&& parse_body) {
    std::vector<SourceLine> lines = content_lines(text);
    if (lines.empty()) throw Error(provenance + ": no " + what + " found");
    const int n = int(lines.size());
    std::map<int, Payload> by_index;
    for (const SourceLine& l : lines) {
        LabeledBody lb = split_colon(provenance, l);
        const std::string& label = lb.label;
        std::size_t i = 1;
        int idx = 0;
        bool ok = !label.empty() && (label[0] == 'u' || label[0] == 'v');
        ok = ok && parse_label_int(label, i, idx) && i == label.size();
        if (!ok)
            line_fail(provenance, l, l.indent + 1,
                      "expected variable label 'u<idx>', got '" + label + "'");
        if (idx < 1 || idx > n)
            line_fail(provenance, l, l.indent + 1,
                      "variable index " + std::to_string(idx) + " out of range 1.." +
                          std::to_string(n));
        if (by_index.count(idx))
            line_fail(provenance, l, l.indent + 1, "duplicate entry for '" + label + "'");
        by_index.emplace(idx, parse_body(lb.body, n, l.number, lb.body_off + 1));
    }
    std::vector<Payload> out;
    for (auto& [idx, p] : by_index) out.push_back(std::move(p));
    return out;
}

} // namespace

std::vector<DiffPoly> parse_map_text(const std::string& text, const TruncationContext& ctx,
                                     const std::string& provenance) {
    return parse_indexed_lines<DiffPoly>(
        text, provenance, "images",
        [&](const std::string& body, int n, int line, int col) {
            return parse_expr(body, n, ctx, provenance, line, col);
        });
}

std::vector<PowerSeries> parse_init_text(const std::string& text, const SeriesContext& sctx,
                                         const std::string& provenance) {
    return parse_indexed_lines<PowerSeries>(
        text, provenance, "initial data",
        [&](const std::string& body, int, int line, int col) {
            return SeriesExprParser(Lexer(body, provenance, line, col).run(), sctx, provenance)
                .parse();
        });
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

EvolutionarySystem parse_system_file(const std::string& path, const TruncationContext& ctx) {
    return parse_system_text(read_text_file(path), ctx, path);
}

std::vector<DiffPoly> parse_map_file(const std::string& path, const TruncationContext& ctx) {
    return parse_map_text(read_text_file(path), ctx, path);
}

std::vector<PowerSeries> parse_init_file(const std::string& path, const SeriesContext& sctx) {
    return parse_init_text(read_text_file(path), sctx, path);
}

} // namespace drflow
