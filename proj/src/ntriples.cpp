#include "nspm/ntriples.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nspm {

namespace {

struct LineParser {
    const std::string& line;
    std::size_t pos = 0;
    std::size_t line_no;

    LineParser(const std::string& l, std::size_t no) : line(l), line_no(no) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("malformed N-Triples statement: " + what, line_no);
    }

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }

    char peek() {
        skip_ws();
        if (pos >= line.size()) fail("unexpected end of line");
        return line[pos];
    }

    Iri parse_iri() {
        if (peek() != '<') fail("expected '<'");
        ++pos;
        std::string v;
        while (pos < line.size() && line[pos] != '>') v += line[pos++];
        if (pos >= line.size()) fail("unterminated IRI");
        ++pos;
        if (v.empty()) fail("empty IRI");
        return Iri(std::move(v));
    }

    std::string parse_quoted() {
        ++pos;  // opening quote
        std::string out;
        while (pos < line.size() && line[pos] != '"') {
            char c = line[pos];
            if (c == '\\') {
                if (pos + 1 >= line.size()) fail("dangling escape");
                char e = line[++pos];
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'u':
                    case 'U': {
                        int len = e == 'u' ? 4 : 8;
                        if (pos + len >= line.size()) fail("truncated \\u escape");
                        unsigned long cp = 0;
                        for (int i = 0; i < len; ++i) {
                            char h = line[++pos];
                            if (!std::isxdigit(static_cast<unsigned char>(h))) fail("bad hex digit in \\u escape");
                            cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(h))
                                                ? static_cast<unsigned long>(h - '0')
                                                : static_cast<unsigned long>(std::tolower(h) - 'a' + 10));
                        }
                        // UTF-8 encode
                        if (cp < 0x80) {
                            out += static_cast<char>(cp);
                        } else if (cp < 0x800) {
                            out += static_cast<char>(0xC0 | (cp >> 6));
                            out += static_cast<char>(0x80 | (cp & 0x3F));
                        } else if (cp < 0x10000) {
                            out += static_cast<char>(0xE0 | (cp >> 12));
                            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                            out += static_cast<char>(0x80 | (cp & 0x3F));
                        } else {
                            out += static_cast<char>(0xF0 | (cp >> 18));
                            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
                            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                            out += static_cast<char>(0x80 | (cp & 0x3F));
                        }
                        break;
                    }
                    default: fail(std::string("unknown escape \\") + e);
                }
            } else {
                out += c;
            }
            ++pos;
        }
        if (pos >= line.size()) fail("unterminated literal");
        ++pos;  // closing quote
        return out;
    }

    Term parse_object() {
        char c = peek();
        if (c == '<') return parse_iri();
        if (c != '"') fail("expected IRI or literal object");
        Literal lit;
        lit.lexical = parse_quoted();
        if (pos < line.size() && line[pos] == '^') {
            if (pos + 1 >= line.size() || line[pos + 1] != '^') fail("expected '^^'");
            pos += 2;
            lit.datatype = parse_iri();
        } else if (pos < line.size() && line[pos] == '@') {
            ++pos;
            std::string tag;
            while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '-'))
                tag += line[pos++];
            if (tag.empty()) fail("empty language tag");
            lit.lang = tag;
        }
        return lit;
    }
};

std::string escape_lexical(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

Graph parse_ntriples(const std::string& text) {
    std::vector<Triple> triples;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        LineParser p(line, line_no);
        if (p.at_end() || p.peek() == '#') continue;
        Triple t;
        t.subject = p.parse_iri();
        t.predicate = p.parse_iri();
        t.object = p.parse_object();
        if (p.peek() != '.') p.fail("expected terminating '.'");
        ++p.pos;
        if (!p.at_end()) p.fail("trailing content after '.'");
        triples.push_back(std::move(t));
    }
    return Graph::from_triples(std::move(triples));
}

Graph load_local_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open N-Triples file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ntriples(buf.str());
}

std::string serialize_ntriples(const Graph& g) {
    std::string out;
    for (const Triple& t : g.triples()) {
        out += "<" + t.subject.value + "> <" + t.predicate.value + "> ";
        if (is_iri(t.object)) {
            out += "<" + as_iri(t.object).value + ">";
        } else {
            const Literal& l = as_literal(t.object);
            out += "\"" + escape_lexical(l.lexical) + "\"";
            if (l.datatype)
                out += "^^<" + l.datatype->value + ">";
            else if (l.lang)
                out += "@" + *l.lang;
        }
        out += " .\n";
    }
    return out;
}

void save_ntriples(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write N-Triples file: " + path.string());
    out << serialize_ntriples(g);
}

}  // namespace nspm
