#include "nspm/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace nspm::sparql {

const char* cmp_op_symbol(CmpOp op) {
    switch (op) {
        case CmpOp::lt: return "<";
        case CmpOp::gt: return ">";
        case CmpOp::eq: return "=";
    }
    return "?";
}

bool Query::has_slots() const {
    for (const auto& p : patterns)
        for (const auto* t : {&p.subject, &p.predicate, &p.object})
            if (t->kind == PatternTerm::Kind::slot) return true;
    for (const auto& f : filters)
        if (f.value.kind == PatternTerm::Kind::slot) return true;
    return false;
}

std::vector<std::string> Query::pattern_vars() const {
    std::vector<std::string> vars;
    auto add = [&](const PatternTerm& t) {
        if (t.kind == PatternTerm::Kind::var &&
            std::find(vars.begin(), vars.end(), t.name) == vars.end())
            vars.push_back(t.name);
    };
    for (const auto& p : patterns) {
        add(p.subject);
        add(p.predicate);
        add(p.object);
    }
    return vars;
}

void validate(const Query& q) {
    auto vars = q.pattern_vars();
    auto known = [&](const std::string& v) {
        return std::find(vars.begin(), vars.end(), v) != vars.end();
    };
    if (q.form == QueryForm::ask) {
        if (!q.projection.empty() || q.count_var || q.order_by || q.limit || q.offset)
            throw UnsupportedFeature("ASK query carries projection or solution modifiers");
    } else {
        if (q.count_var) {
            if (!q.projection.empty())
                throw UnsupportedFeature("COUNT combined with a projection list");
            if (!known(*q.count_var)) throw UnsupportedFeature("COUNT over unbound variable ?" + *q.count_var);
        } else {
            if (q.projection.empty()) throw UnsupportedFeature("SELECT with empty projection");
            for (const auto& v : q.projection)
                if (!known(v)) throw UnsupportedFeature("projected variable ?" + v + " not bound by any pattern");
        }
    }
    for (const auto& f : q.filters) {
        if (!known(f.var)) throw UnsupportedFeature("filtered variable ?" + f.var + " not bound by any pattern");
        if (f.value.kind != PatternTerm::Kind::literal && f.value.kind != PatternTerm::Kind::slot)
            throw UnsupportedFeature("filter operand must be a literal");
    }
    if (q.order_by && !known(q.order_by->var))
        throw UnsupportedFeature("ordered variable ?" + q.order_by->var + " not bound by any pattern");
    if ((q.limit && *q.limit < 0) || (q.offset && *q.offset < 0))
        throw UnsupportedFeature("negative LIMIT/OFFSET");
    for (const auto& p : q.patterns)
        if (p.predicate.kind == PatternTerm::Kind::literal || p.subject.kind == PatternTerm::Kind::literal)
            throw UnsupportedFeature("literal in subject/predicate position");
}

namespace {

std::string render_iri(const Iri& iri, const PrefixTable& prefixes) {
    if (auto curie = prefixes.compress(iri)) return *curie;
    return "<" + iri.value + ">";
}

std::string render_literal(const Literal& l, const PrefixTable& prefixes) {
    std::string out = "\"";
    for (char c : l.lexical) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    if (l.datatype) out += "^^" + render_iri(*l.datatype, prefixes);
    if (l.lang) out += "@" + *l.lang;
    return out;
}

std::string render_term(const PatternTerm& t, const PrefixTable& prefixes) {
    switch (t.kind) {
        case PatternTerm::Kind::iri: return render_iri(t.iri, prefixes);
        case PatternTerm::Kind::var: return "?" + t.name;
        case PatternTerm::Kind::literal: return render_literal(t.literal, prefixes);
        case PatternTerm::Kind::slot: return "<" + t.name + ">";
    }
    return "";
}

}  // namespace

std::string to_sparql(const Query& q, const PrefixTable& prefixes) {
    std::string out;
    if (q.form == QueryForm::ask) {
        out = "ASK WHERE {";
    } else {
        out = "SELECT ";
        if (q.count_var) {
            out += q.distinct ? "COUNT(DISTINCT ?" + *q.count_var + ")" : "COUNT(?" + *q.count_var + ")";
        } else {
            if (q.distinct) out += "DISTINCT ";
            for (std::size_t i = 0; i < q.projection.size(); ++i)
                out += (i ? " ?" : "?") + q.projection[i];
        }
        out += " WHERE {";
    }
    for (std::size_t i = 0; i < q.patterns.size(); ++i) {
        const auto& p = q.patterns[i];
        out += " " + render_term(p.subject, prefixes) + " " + render_term(p.predicate, prefixes) +
               " " + render_term(p.object, prefixes);
        if (i + 1 < q.patterns.size()) out += " .";
    }
    for (const auto& f : q.filters)
        out += " . FILTER(?" + f.var + " " + cmp_op_symbol(f.op) + " " +
               render_term(f.value, prefixes) + ")";
    out += " }";
    if (q.order_by)
        out += std::string(" ORDER BY ") + (q.order_by->ascending ? "ASC(?" : "DESC(?") +
               q.order_by->var + ")";
    if (q.limit) out += " LIMIT " + std::to_string(*q.limit);
    if (q.offset) out += " OFFSET " + std::to_string(*q.offset);
    return out;
}

// ---------------------------------------------------------------------------
// Text parser

namespace {

struct TextLexer {
    const std::string& text;
    std::size_t pos = 0;
    int anon_counter = 0;

    explicit TextLexer(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw UnsupportedFeature("SPARQL parse error at offset " + std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    /// Case-insensitive keyword match consuming on success.
    bool accept_kw(const char* kw) {
        skip_ws();
        std::size_t i = 0, p = pos;
        while (kw[i]) {
            if (p >= text.size() || std::tolower(static_cast<unsigned char>(text[p])) != kw[i]) return false;
            ++i;
            ++p;
        }
        if (p < text.size() && (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_'))
            return false;
        pos = p;
        return true;
    }

    std::string word() {
        skip_ws();
        std::string w;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            w += text[pos++];
        return w;
    }
};

PatternTerm parse_text_term(TextLexer& lx, const PrefixTable& prefixes) {
    char c = lx.peek();
    if (c == '<') {
        ++lx.pos;
        std::string v;
        while (lx.pos < lx.text.size() && lx.text[lx.pos] != '>') v += lx.text[lx.pos++];
        if (lx.pos >= lx.text.size()) lx.fail("unterminated IRI");
        ++lx.pos;
        // <A>-style uppercase short names are template slots, not IRIs
        if (!v.empty() && v.find(':') == std::string::npos && v.find('/') == std::string::npos)
            return PatternTerm::make_slot(v);
        return PatternTerm::make_iri(Iri(std::move(v)));
    }
    if (c == '?') {
        ++lx.pos;
        auto name = lx.word();
        if (name.empty()) lx.fail("empty variable name");
        return PatternTerm::make_var(name);
    }
    if (c == '[') {
        ++lx.pos;
        lx.expect(']');
        return PatternTerm::make_var("anon" + std::to_string(lx.anon_counter++));
    }
    if (c == '"') {
        ++lx.pos;
        Literal lit;
        while (lx.pos < lx.text.size() && lx.text[lx.pos] != '"') {
            char ch = lx.text[lx.pos];
            if (ch == '\\' && lx.pos + 1 < lx.text.size()) ch = lx.text[++lx.pos];
            lit.lexical += ch;
            ++lx.pos;
        }
        if (lx.pos >= lx.text.size()) lx.fail("unterminated literal");
        ++lx.pos;
        if (lx.pos + 1 < lx.text.size() && lx.text[lx.pos] == '^' && lx.text[lx.pos + 1] == '^') {
            lx.pos += 2;
            auto dt = parse_text_term(lx, prefixes);
            if (dt.kind != PatternTerm::Kind::iri) lx.fail("datatype must be an IRI");
            lit.datatype = dt.iri;
        } else if (lx.pos < lx.text.size() && lx.text[lx.pos] == '@') {
            ++lx.pos;
            lit.lang = lx.word();
        }
        return PatternTerm::make_literal(std::move(lit));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
        std::string num;
        lx.skip_ws();
        while (lx.pos < lx.text.size() &&
               (std::isdigit(static_cast<unsigned char>(lx.text[lx.pos])) || lx.text[lx.pos] == '.' ||
                lx.text[lx.pos] == '-' || lx.text[lx.pos] == '+'))
            num += lx.text[lx.pos++];
        if (!numeric_lexical(num)) lx.fail("bad numeric literal '" + num + "'");
        return PatternTerm::make_literal(Literal(num));
    }
    // CURIE
    std::string w = lx.word();
    if (w.empty()) lx.fail("expected term");
    if (lx.pos < lx.text.size() && lx.text[lx.pos] == ':') {
        ++lx.pos;
        std::string local;
        while (lx.pos < lx.text.size() &&
               (std::isalnum(static_cast<unsigned char>(lx.text[lx.pos])) || lx.text[lx.pos] == '_' ||
                lx.text[lx.pos] == '-' || lx.text[lx.pos] == '.'))
            local += lx.text[lx.pos++];
        auto base = prefixes.lookup(w);
        if (!base) lx.fail("unknown prefix '" + w + "'");
        return PatternTerm::make_iri(Iri(*base + local));
    }
    lx.fail("unexpected token '" + w + "'");
}

}  // namespace

Query parse_sparql(const std::string& text, const PrefixTable& prefixes) {
    TextLexer lx(text);
    Query q;
    if (lx.accept_kw("select")) {
        q.form = QueryForm::select;
        bool leading_distinct = lx.accept_kw("distinct");
        if (lx.accept_kw("count")) {
            lx.expect('(');
            if (lx.accept_kw("distinct")) q.distinct = true;
            lx.expect('?');
            q.count_var = lx.word();
            lx.expect(')');
            q.distinct = q.distinct || leading_distinct;
        } else if (leading_distinct && lx.peek() == '(') {
            // paper-style SELECT DISTINCT(?a)
            lx.expect('(');
            lx.expect('?');
            q.projection.push_back(lx.word());
            lx.expect(')');
            q.distinct = true;
        } else {
            q.distinct = leading_distinct;
            while (lx.peek() == '?') {
                ++lx.pos;
                q.projection.push_back(lx.word());
            }
        }
    } else if (lx.accept_kw("ask")) {
        q.form = QueryForm::ask;
    } else {
        lx.fail("expected SELECT or ASK");
    }
    if (!lx.accept_kw("where")) lx.fail("expected WHERE");
    lx.expect('{');
    while (lx.peek() != '}' && !lx.eof()) {
        if (lx.accept_kw("filter")) {
            lx.expect('(');
            lx.expect('?');
            FilterCmp f;
            f.var = lx.word();
            char opc = lx.peek();
            if (opc == '<')
                f.op = CmpOp::lt;
            else if (opc == '>')
                f.op = CmpOp::gt;
            else if (opc == '=')
                f.op = CmpOp::eq;
            else
                lx.fail("expected comparison operator");
            ++lx.pos;
            f.value = parse_text_term(lx, prefixes);
            lx.expect(')');
            q.filters.push_back(std::move(f));
        } else {
            TriplePattern p;
            p.subject = parse_text_term(lx, prefixes);
            p.predicate = parse_text_term(lx, prefixes);
            p.object = parse_text_term(lx, prefixes);
            q.patterns.push_back(std::move(p));
        }
        lx.accept('.');
    }
    lx.expect('}');
    if (lx.accept_kw("order")) {
        if (!lx.accept_kw("by")) lx.fail("expected BY");
        OrderBy ob;
        if (lx.accept_kw("desc"))
            ob.ascending = false;
        else
            lx.accept_kw("asc");
        lx.expect('(');
        lx.expect('?');
        ob.var = lx.word();
        lx.expect(')');
        q.order_by = ob;
    }
    if (lx.accept_kw("limit")) {
        auto w = lx.word();
        if (!numeric_lexical(w)) lx.fail("bad LIMIT");
        q.limit = std::stol(w);
    }
    if (lx.accept_kw("offset")) {
        auto w = lx.word();
        if (!numeric_lexical(w)) lx.fail("bad OFFSET");
        q.offset = std::stol(w);
    }
    if (!lx.eof()) lx.fail("trailing content");
    validate(q);
    return q;
}

}  // namespace nspm::sparql
