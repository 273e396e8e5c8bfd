#include "nspm/codec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace nspm::sparql {

std::string join_tokens(const TokenSeq& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

TokenSeq split_tokens(const std::string& line) {
    TokenSeq out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

namespace {

const std::array<const char*, 12> kKeywords = {"select", "ask",   "where",  "distinct",
                                               "count",  "order", "by",     "asc",
                                               "desc",   "limit", "offset", "filter"};

bool is_keyword(const std::string& t) {
    return std::find(kKeywords.begin(), kKeywords.end(), t) != kKeywords.end();
}

bool is_integer_token(const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string escape_lexical(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '_')
            out += "__";
        else if (c == ' ')
            out += '_';
        else if (std::isspace(static_cast<unsigned char>(c)))
            throw UnsupportedFeature("literal contains non-space whitespace: '" + s + "'");
        else
            out += c;
    }
    return out;
}

std::string unescape_lexical(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '_') {
            if (i + 1 < s.size() && s[i + 1] == '_') {
                out += '_';
                ++i;
            } else {
                out += ' ';
            }
        } else {
            out += s[i];
        }
    }
    return out;
}

std::string iri_token(const Iri& iri, const PrefixTable& prefixes) {
    auto parts = prefixes.split(iri);
    if (!parts) throw UnprefixableIri("no prefix covers IRI <" + iri.value + ">");
    const auto& [prefix, local] = *parts;
    if (local.empty()) throw UnprefixableIri("empty local name for IRI <" + iri.value + ">");
    for (char c : local)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw UnprefixableIri("whitespace in IRI local name <" + iri.value + ">");
    return prefix + "_" + local;
}

void emit_term(const PatternTerm& t, const PrefixTable& prefixes, TokenSeq& out) {
    switch (t.kind) {
        case PatternTerm::Kind::iri: out.push_back(iri_token(t.iri, prefixes)); break;
        case PatternTerm::Kind::var: out.push_back("var_" + t.name); break;
        case PatternTerm::Kind::slot: out.push_back("plh_" + t.name); break;
        case PatternTerm::Kind::literal:
            if (t.literal.lang) throw UnsupportedFeature("language-tagged literal in query pattern");
            out.push_back("lit_" + escape_lexical(t.literal.lexical));
            break;
    }
}

}  // namespace

TokenSeq encode(const Query& q, const PrefixTable& prefixes) {
    validate(q);
    TokenSeq out;
    if (q.form == QueryForm::ask) {
        out.push_back("ask");
    } else {
        out.push_back("select");
        if (q.distinct) out.push_back("distinct");
        if (q.count_var) {
            out.push_back("count");
            out.push_back("par_open");
            out.push_back("var_" + *q.count_var);
            out.push_back("par_close");
        } else {
            for (const auto& v : q.projection) out.push_back("var_" + v);
        }
    }
    out.push_back("where");
    out.push_back("brack_open");
    for (std::size_t i = 0; i < q.patterns.size(); ++i) {
        if (i) out.push_back("sep_dot");
        emit_term(q.patterns[i].subject, prefixes, out);
        emit_term(q.patterns[i].predicate, prefixes, out);
        emit_term(q.patterns[i].object, prefixes, out);
    }
    for (const auto& f : q.filters) {
        out.push_back("filter");
        out.push_back("par_open");
        out.push_back("var_" + f.var);
        switch (f.op) {
            case CmpOp::lt: out.push_back("math_lt"); break;
            case CmpOp::gt: out.push_back("math_gt"); break;
            case CmpOp::eq: out.push_back("math_eq"); break;
        }
        emit_term(f.value, prefixes, out);
        out.push_back("par_close");
    }
    out.push_back("brack_close");
    if (q.order_by) {
        out.push_back("order");
        out.push_back("by");
        out.push_back(q.order_by->ascending ? "asc" : "desc");
        out.push_back("par_open");
        out.push_back("var_" + q.order_by->var);
        out.push_back("par_close");
    }
    if (q.limit) {
        out.push_back("limit");
        out.push_back(std::to_string(*q.limit));
    }
    if (q.offset) {
        out.push_back("offset");
        out.push_back(std::to_string(*q.offset));
    }
    return out;
}

TokenClass classify_token(const std::string& t, const PrefixTable& prefixes) {
    if (is_keyword(t)) return TokenClass::keyword;
    if (t == "brack_open" || t == "brack_close" || t == "par_open" || t == "par_close" ||
        t == "sep_dot" || t == "math_lt" || t == "math_gt" || t == "math_eq")
        return TokenClass::structural;
    if (t.rfind("var_", 0) == 0 && t.size() > 4) return TokenClass::variable;
    if (t.rfind("lit_", 0) == 0) return TokenClass::literal;
    if (t.rfind("plh_", 0) == 0 && t.size() > 4) return TokenClass::slot;
    if (is_integer_token(t)) return TokenClass::integer;
    auto us = t.find('_');
    if (us != std::string::npos && us > 0 && us + 1 < t.size() && prefixes.lookup(t.substr(0, us)))
        return TokenClass::iri;
    return TokenClass::unknown;
}

namespace {

/// Single-pass token stream parser. Every mis-step reports the token index
/// and the class of token it was expecting.
struct TokenParser {
    const TokenSeq& toks;
    const PrefixTable& prefixes;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        throw DecodeError(pos, expected);
    }

    bool done() const { return pos >= toks.size(); }

    const std::string& peek() const {
        if (done()) throw DecodeError(pos, "more tokens");
        return toks[pos];
    }

    bool accept(const char* tok) {
        if (!done() && toks[pos] == tok) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(const char* tok) {
        if (!accept(tok)) fail(std::string("'") + tok + "'");
    }

    std::string expect_var() {
        const auto& t = peek();
        if (classify_token(t, prefixes) != TokenClass::variable) fail("variable token");
        ++pos;
        return t.substr(4);
    }

    bool term_ahead() const {
        if (done()) return false;
        auto c = classify_token(toks[pos], prefixes);
        return c == TokenClass::variable || c == TokenClass::iri || c == TokenClass::literal ||
               c == TokenClass::slot;
    }

    PatternTerm expect_term() {
        const auto& t = peek();
        switch (classify_token(t, prefixes)) {
            case TokenClass::variable: ++pos; return PatternTerm::make_var(t.substr(4));
            case TokenClass::slot: ++pos; return PatternTerm::make_slot(t.substr(4));
            case TokenClass::literal:
                ++pos;
                return PatternTerm::make_literal(Literal(unescape_lexical(t.substr(4))));
            case TokenClass::iri: {
                ++pos;
                auto us = t.find('_');
                auto base = prefixes.lookup(t.substr(0, us));
                return PatternTerm::make_iri(Iri(*base + t.substr(us + 1)));
            }
            default: fail("term token (variable, IRI, literal or slot)");
        }
    }

    long expect_int() {
        const auto& t = peek();
        if (!is_integer_token(t) || t.size() > 9) fail("integer token");
        ++pos;
        return std::stol(t);
    }
};

}  // namespace

Query decode(const TokenSeq& tokens, const PrefixTable& prefixes) {
    TokenParser p{tokens, prefixes};
    Query q;
    if (p.accept("ask")) {
        q.form = QueryForm::ask;
    } else if (p.accept("select")) {
        q.form = QueryForm::select;
        if (p.accept("distinct")) q.distinct = true;
        if (p.accept("count")) {
            p.expect("par_open");
            q.count_var = p.expect_var();
            p.expect("par_close");
        } else {
            while (!p.done() && classify_token(p.peek(), prefixes) == TokenClass::variable)
                q.projection.push_back(p.expect_var());
            if (q.projection.empty()) p.fail("projection variable");
        }
    } else {
        p.fail("'select' or 'ask'");
    }
    p.expect("where");
    p.expect("brack_open");
    bool first_pattern = true;
    while (p.term_ahead() || (!p.done() && p.peek() == "sep_dot")) {
        if (!first_pattern) p.expect("sep_dot");
        first_pattern = false;
        TriplePattern tp;
        tp.subject = p.expect_term();
        tp.predicate = p.expect_term();
        tp.object = p.expect_term();
        q.patterns.push_back(std::move(tp));
    }
    while (p.accept("filter")) {
        p.expect("par_open");
        FilterCmp f;
        f.var = p.expect_var();
        if (p.accept("math_lt"))
            f.op = CmpOp::lt;
        else if (p.accept("math_gt"))
            f.op = CmpOp::gt;
        else if (p.accept("math_eq"))
            f.op = CmpOp::eq;
        else
            p.fail("comparison operator token");
        f.value = p.expect_term();
        if (f.value.kind != PatternTerm::Kind::literal && f.value.kind != PatternTerm::Kind::slot)
            throw DecodeError(p.pos - 1, "literal or slot filter operand");
        p.expect("par_close");
        q.filters.push_back(std::move(f));
    }
    p.expect("brack_close");
    if (p.accept("order")) {
        p.expect("by");
        OrderBy ob;
        if (p.accept("asc"))
            ob.ascending = true;
        else if (p.accept("desc"))
            ob.ascending = false;
        else
            p.fail("'asc' or 'desc'");
        p.expect("par_open");
        ob.var = p.expect_var();
        p.expect("par_close");
        q.order_by = ob;
    }
    if (p.accept("limit")) q.limit = p.expect_int();
    if (p.accept("offset")) q.offset = p.expect_int();
    if (!p.done()) p.fail("end of sequence");
    try {
        validate(q);
    } catch (const UnsupportedFeature& e) {
        throw DecodeError(tokens.size(), std::string("well-formed query (") + e.what() + ")");
    }
    return q;
}

}  // namespace nspm::sparql
