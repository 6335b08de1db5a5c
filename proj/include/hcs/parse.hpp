#pragma once

// Recursive-descent parser for the sentence grammar:
//
//   sentence  := quant* "." formula | formula
//   quant     := ("forall" | "exists") ident
//   formula   := iff ; iff := imp ("<->" imp)* ; imp := or ("->" or)* ;
//   or := and ("|" and)* ; and := lit ("&" lit)* ;
//   lit := "~" lit | "(" formula ")" | atom ;
//   atom := ident "(" term ("," term)* ")" | term "=" term | term "<" term
//   term := ident | ident "(" term ("," term)* ")"
//
// A "." is accepted after each quantifier as well as after the whole prefix.
// "=" and "<" are sugar for the binary predicates "eq" and "lt". Conjunctions
// of prenex sentences are one sentence per line or joined by ";;"; lines
// starting with "#" are comments. Binary connectives fold left.

#include <cctype>
#include <functional>

#include "hcs/formula.hpp"

namespace hcs {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
};

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Tilde, Amp, Pipe, Arrow, Iff, Eq, Lt, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0, n = src.size();
    auto push = [&](Tok k, std::string t, std::size_t p) { out.push_back({k, std::move(t), p}); };
    while (i < n) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '#') { while (i < n && src[i] != '\n') ++i; continue; }
        std::size_t p = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
            std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            std::string id = src.substr(i, j - i);
            // Reserved tableau-window atoms: ident "@prev[" (0|1|t|t+1|t+2) "]"
            if (j + 6 <= n && src.compare(j, 6, "@prev[") == 0) {
                std::size_t k = j + 6;
                std::size_t close = src.find(']', k);
                if (close == std::string::npos) throw ParseError("unterminated '@prev['", j);
                std::string idx = src.substr(k, close - k);
                if (idx != "0" && idx != "1" && idx != "t" && idx != "t+1" && idx != "t+2")
                    throw ParseError("bad window index '" + idx + "'", k);
                id += "@prev[" + idx + "]";
                j = close + 1;
            }
            push(Tok::Ident, id, p);
            i = j;
            continue;
        }
        switch (c) {
            case '(': push(Tok::LParen, "(", p); ++i; break;
            case ')': push(Tok::RParen, ")", p); ++i; break;
            case ',': push(Tok::Comma, ",", p); ++i; break;
            case '.': push(Tok::Dot, ".", p); ++i; break;
            case '~': push(Tok::Tilde, "~", p); ++i; break;
            case '&': push(Tok::Amp, "&", p); ++i; break;
            case '|': push(Tok::Pipe, "|", p); ++i; break;
            case '=': push(Tok::Eq, "=", p); ++i; break;
            case '<':
                if (i + 2 < n && src[i + 1] == '-' && src[i + 2] == '>') {
                    push(Tok::Iff, "<->", p);
                    i += 3;
                } else {
                    push(Tok::Lt, "<", p);
                    ++i;
                }
                break;
            case '-':
                if (i + 1 < n && src[i + 1] == '>') {
                    push(Tok::Arrow, "->", p);
                    i += 2;
                } else {
                    throw ParseError("stray '-'", p);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", p);
        }
    }
    out.push_back({Tok::End, "", n});
    return out;
}

// When strict, every symbol must already be declared in the signature; when
// not, predicates and functions are added to it at first use (with the
// observed arity) and undeclared nullary identifiers in term position become
// variables if quantified, otherwise constants. numerals_ok lets undeclared
// digit-led identifiers register as constants even in strict mode (rows
// files).
struct ParserOpts {
    bool strict = true;
    bool numerals_ok = false;
};

class Parser {
  public:
    Parser(const std::string& src, Signature& sig, ParserOpts opts)
        : toks_(lex(src)), sig_(sig), opts_(opts) {}

    PrenexSentence sentence() {
        PrenexSentence s;
        while (peek().kind == Tok::Ident && (peek().text == "forall" || peek().text == "exists")) {
            Quant q = peek().text == "forall" ? Quant::Forall : Quant::Exists;
            next();
            Token v = expect(Tok::Ident, "variable name");
            s.prefix.emplace_back(q, v.text);
            bound_.push_back(v.text);
            if (peek().kind == Tok::Dot) next();
        }
        s.matrix = formula();
        expect(Tok::End, "end of sentence");
        validate_sentence(s, sig_);
        return s;
    }

    FormulaPtr open_formula(const std::vector<std::string>& vars) {
        bound_ = vars;
        FormulaPtr f = formula();
        expect(Tok::End, "end of formula");
        return f;
    }

    TermPtr single_term() {
        TermPtr t = term();
        expect(Tok::End, "end of term");
        return t;
    }

    std::vector<TermPtr> term_list() {
        std::vector<TermPtr> row;
        row.push_back(term());
        while (peek().kind == Tok::Comma) {
            next();
            row.push_back(term());
        }
        expect(Tok::End, "end of row");
        return row;
    }

  private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    Signature& sig_;
    ParserOpts opts_;
    std::vector<std::string> bound_;

    const Token& peek() const { return toks_[at_]; }
    Token next() { return toks_[at_++]; }
    Token expect(Tok k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
        return next();
    }

    FormulaPtr formula() { return iff(); }
    FormulaPtr iff() {
        FormulaPtr f = imp();
        while (peek().kind == Tok::Iff) { next(); f = f_iff(f, imp()); }
        return f;
    }
    FormulaPtr imp() {
        FormulaPtr f = disj();
        while (peek().kind == Tok::Arrow) { next(); f = f_imp(f, disj()); }
        return f;
    }
    FormulaPtr disj() {
        FormulaPtr f = conj();
        while (peek().kind == Tok::Pipe) { next(); f = f_or(f, conj()); }
        return f;
    }
    FormulaPtr conj() {
        FormulaPtr f = lit();
        while (peek().kind == Tok::Amp) { next(); f = f_and(f, lit()); }
        return f;
    }

    FormulaPtr lit() {
        if (peek().kind == Tok::Tilde) { next(); return f_not(lit()); }
        if (peek().kind == Tok::LParen) {
            next();
            FormulaPtr f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        return atom();
    }

    FormulaPtr atom() {
        Token head = expect(Tok::Ident, "atom");
        std::vector<TermPtr> args;
        bool parens = false;
        if (peek().kind == Tok::LParen) {
            parens = true;
            next();
            args.push_back(term());
            while (peek().kind == Tok::Comma) { next(); args.push_back(term()); }
            expect(Tok::RParen, "')'");
        }
        if (peek().kind == Tok::Eq || peek().kind == Tok::Lt) {
            std::string pred = peek().kind == Tok::Eq ? "eq" : "lt";
            next();
            TermPtr lhs = classify(head, args, parens);
            TermPtr rhs = term();
            return mk_atom(pred, {lhs, rhs}, head.pos);
        }
        return mk_atom(head.text, std::move(args), head.pos);
    }

    FormulaPtr mk_atom(const std::string& pred, std::vector<TermPtr> args, std::size_t pos) {
        auto it = sig_.predicates.find(pred);
        if (it == sig_.predicates.end()) {
            if (opts_.strict) throw ParseError("unknown predicate '" + pred + "'", pos);
            sig_.add_predicate(pred, static_cast<int>(args.size()));
        } else if (it->second != static_cast<int>(args.size())) {
            throw ParseError("arity mismatch for predicate '" + pred + "'", pos);
        }
        return f_atom(pred, std::move(args));
    }

    TermPtr term() {
        Token head = expect(Tok::Ident, "term");
        std::vector<TermPtr> args;
        bool parens = false;
        if (peek().kind == Tok::LParen) {
            parens = true;
            next();
            args.push_back(term());
            while (peek().kind == Tok::Comma) { next(); args.push_back(term()); }
            expect(Tok::RParen, "')'");
        }
        return classify(head, args, parens);
    }

    TermPtr classify(const Token& head, std::vector<TermPtr>& args, bool parens) {
        const std::string& name = head.text;
        if (parens) {
            auto it = sig_.functions.find(name);
            if (it == sig_.functions.end()) {
                if (opts_.strict) throw ParseError("unknown function '" + name + "'", head.pos);
                sig_.add_function(name, static_cast<int>(args.size()));
            } else if (it->second != static_cast<int>(args.size())) {
                throw ParseError("arity mismatch for function '" + name + "'", head.pos);
            }
            return make_app(name, args);
        }
        bool numeral = std::isdigit(static_cast<unsigned char>(name[0]));
        auto it = sig_.functions.find(name);
        if (it != sig_.functions.end()) {
            if (it->second != 0)
                throw ParseError("function '" + name + "' used without arguments", head.pos);
            return make_const(name);
        }
        if (numeral) {
            if (opts_.strict && !opts_.numerals_ok)
                throw ParseError("unknown constant '" + name + "'", head.pos);
            sig_.add_function(name, 0);
            return make_const(name);
        }
        if (opts_.strict) return make_var(name);
        // Inference: quantified names are variables, everything else a constant.
        if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return make_var(name);
        sig_.add_function(name, 0);
        return make_const(name);
    }
};

inline std::vector<std::string> split_sentence_chunks(const std::string& text) {
    std::vector<std::string> chunks;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        std::string piece = text.substr(start, end - start);
        std::size_t a = piece.find_first_not_of(" \t\r");
        if (a != std::string::npos && piece[a] != '#') chunks.push_back(piece);
        start = end;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            flush(i);
            start = i + 1;
        } else if (text[i] == ';' && i + 1 < text.size() && text[i + 1] == ';') {
            flush(i);
            start = i + 2;
            ++i;
        }
    }
    flush(text.size());
    return chunks;
}

}  // namespace detail

// Parses one prenex sentence against sig; symbols must be declared.
inline PrenexSentence parse_sentence(const std::string& text, const Signature& sig) {
    Signature copy = sig;
    detail::Parser p(text, copy, {.strict = true});
    return p.sentence();
}

// Parses a file body: one sentence per line or ";;"-joined.
inline ConjunctionOfPrenex parse_sentences(const std::string& text, const Signature& sig) {
    ConjunctionOfPrenex out;
    Signature copy = sig;
    for (const auto& chunk : detail::split_sentence_chunks(text)) {
        detail::Parser p(chunk, copy, {.strict = true});
        out.push_back(p.sentence());
    }
    if (out.empty()) throw ParseError("no sentences in input", 0);
    return out;
}

// Same, but grows the signature as symbols appear (CLI front door).
inline ConjunctionOfPrenex parse_sentences_infer(const std::string& text, Signature& sig) {
    ConjunctionOfPrenex out;
    for (const auto& chunk : detail::split_sentence_chunks(text)) {
        detail::Parser p(chunk, sig, {.strict = false});
        out.push_back(p.sentence());
    }
    if (out.empty()) throw ParseError("no sentences in input", 0);
    return out;
}

// Open formula with designated variables (used for transition formulas and
// reduction fixtures); undeclared symbols are added to sig.
inline FormulaPtr parse_open_formula(const std::string& text, Signature& sig,
                                     const std::vector<std::string>& vars) {
    detail::Parser p(text, sig, {.strict = false});
    return p.open_formula(vars);
}

// One term; undeclared nullary identifiers become variables, undeclared
// numerals constants.
inline TermPtr parse_term(const std::string& text, const Signature& sig) {
    Signature copy = sig;
    detail::Parser p(text, copy, {.strict = true, .numerals_ok = true});
    return p.single_term();
}

// Rows file: one comma-separated term tuple per line; '#' comments allowed.
// Declared nullary functions and numerals parse as constants, any other bare
// identifier as a variable (rows may contain open terms).
inline std::vector<std::vector<TermPtr>> parse_rows(const std::string& text, const Signature& sig) {
    std::vector<std::vector<TermPtr>> rows;
    Signature copy = sig;
    for (const auto& chunk : detail::split_sentence_chunks(text)) {
        detail::Parser p(chunk, copy, {.strict = true, .numerals_ok = true});
        rows.push_back(p.term_list());
    }
    return rows;
}

}  // namespace hcs
