#include "nspm/query_eval.hpp"

#include <algorithm>
#include <set>

namespace nspm {

using sparql::CmpOp;
using sparql::PatternTerm;
using sparql::Query;
using sparql::QueryForm;
using sparql::TriplePattern;

namespace {

using Bindings = std::map<std::string, Term>;

bool term_matches(const PatternTerm& pt, const Term& t, Bindings& row) {
    switch (pt.kind) {
        case PatternTerm::Kind::iri:
            return is_iri(t) && as_iri(t) == pt.iri;
        case PatternTerm::Kind::literal:
            // Lexical-form match; datatype tags on graph literals are not
            // significant for pattern matching in this fragment.
            return !is_iri(t) && as_literal(t).lexical == pt.literal.lexical;
        case PatternTerm::Kind::var: {
            auto it = row.find(pt.name);
            if (it != row.end()) return it->second == t;
            row[pt.name] = t;
            return true;
        }
        case PatternTerm::Kind::slot:
            throw UnsupportedFeature("cannot evaluate a query pattern with unfilled slots");
    }
    return false;
}

void join_patterns(const Graph& g, const std::vector<TriplePattern>& patterns, std::size_t i,
                   Bindings& row, std::vector<Bindings>& out) {
    if (i == patterns.size()) {
        out.push_back(row);
        return;
    }
    const TriplePattern& p = patterns[i];

    auto try_triple = [&](const Triple& t) {
        Bindings saved = row;
        if (term_matches(p.subject, Term(t.subject), row) &&
            term_matches(p.predicate, Term(t.predicate), row) &&
            term_matches(p.object, t.object, row)) {
            join_patterns(g, patterns, i + 1, row, out);
        }
        row = std::move(saved);
    };

    // Use the subject index when the subject is fixed (directly or via a
    // previous binding); else the predicate index; else a full scan.
    const Iri* subj = nullptr;
    if (p.subject.kind == PatternTerm::Kind::iri) subj = &p.subject.iri;
    if (p.subject.kind == PatternTerm::Kind::var) {
        auto it = row.find(p.subject.name);
        if (it != row.end() && is_iri(it->second)) subj = &as_iri(it->second);
    }
    if (subj) {
        for (auto idx : g.by_subject(*subj)) try_triple(g.triples()[idx]);
    } else if (p.predicate.kind == PatternTerm::Kind::iri) {
        for (auto idx : g.by_predicate(p.predicate.iri)) try_triple(g.triples()[idx]);
    } else {
        for (const Triple& t : g.triples()) try_triple(t);
    }
}

bool numeric_pair(const std::string& a, const std::string& b) {
    return numeric_lexical(a) && numeric_lexical(b);
}

}  // namespace

bool compare_terms(const Term& bound, CmpOp op, const Literal& value) {
    if (is_iri(bound)) {
        if (op == CmpOp::eq) return false;  // IRI never equals a literal
        throw TypeError("ordered comparison between an IRI and a literal");
    }
    const Literal& l = as_literal(bound);
    int cmp;
    if (numeric_pair(l.lexical, value.lexical)) {
        double a = std::stod(l.lexical), b = std::stod(value.lexical);
        cmp = a < b ? -1 : (a > b ? 1 : 0);
    } else {
        cmp = l.lexical.compare(value.lexical);
        cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
    }
    switch (op) {
        case CmpOp::lt: return cmp < 0;
        case CmpOp::gt: return cmp > 0;
        case CmpOp::eq: return cmp == 0;
    }
    return false;
}

ResultSet query_graph(const Graph& g, const Query& q) {
    sparql::validate(q);
    if (q.has_slots()) throw UnsupportedFeature("cannot evaluate a query pattern with unfilled slots");

    Bindings row;
    std::vector<Bindings> joined;
    join_patterns(g, q.patterns, 0, row, joined);

    std::vector<Bindings> filtered;
    filtered.reserve(joined.size());
    for (auto& b : joined) {
        bool keep = true;
        for (const auto& f : q.filters) {
            auto it = b.find(f.var);
            if (it == b.end() || f.value.kind != PatternTerm::Kind::literal ||
                !compare_terms(it->second, f.op, f.value.literal)) {
                keep = false;
                break;
            }
        }
        if (keep) filtered.push_back(std::move(b));
    }

    ResultSet rs;
    if (q.form == QueryForm::ask) {
        rs.is_boolean = !filtered.empty();
        return rs;
    }

    std::vector<std::string> proj = q.count_var ? std::vector<std::string>{*q.count_var} : q.projection;
    std::vector<Bindings> rows;
    rows.reserve(filtered.size());
    for (const auto& b : filtered) {
        Bindings r;
        for (const auto& v : proj) {
            auto it = b.find(v);
            if (it != b.end()) r[v] = it->second;
        }
        rows.push_back(std::move(r));
    }

    if (q.distinct) {
        std::set<std::string> seen;
        std::vector<Bindings> unique;
        for (auto& r : rows) {
            std::string key;
            for (const auto& [v, t] : r) key += v + "\x1e" + term_key(t) + "\x1e";
            if (seen.insert(key).second) unique.push_back(std::move(r));
        }
        rows = std::move(unique);
    }

    if (q.count_var) {
        rs.variables = {*q.count_var};
        Bindings r;
        r[*q.count_var] = Literal(std::to_string(rows.size()), Iri(vocab_iri::xsd_ns + "integer"));
        rs.rows.push_back(std::move(r));
        return rs;
    }

    if (q.order_by) {
        const auto& ob = *q.order_by;
        auto order3 = [](const Term& ta, const Term& tb) -> int {
            if (!is_iri(ta) && !is_iri(tb) &&
                numeric_pair(as_literal(ta).lexical, as_literal(tb).lexical)) {
                double a = std::stod(as_literal(ta).lexical), b = std::stod(as_literal(tb).lexical);
                return a < b ? -1 : (a > b ? 1 : 0);
            }
            std::string ka = term_key(ta), kb = term_key(tb);
            return ka < kb ? -1 : (ka > kb ? 1 : 0);
        };
        std::stable_sort(rows.begin(), rows.end(), [&](const Bindings& a, const Bindings& b) {
            auto ia = a.find(ob.var), ib = b.find(ob.var);
            if (ia == a.end() || ib == b.end()) return ib != b.end();  // unbound sorts first
            int c = order3(ia->second, ib->second);
            return ob.ascending ? c < 0 : c > 0;
        });
    }

    std::size_t begin = q.offset ? static_cast<std::size_t>(std::min<long>(*q.offset, static_cast<long>(rows.size()))) : 0;
    std::size_t end = rows.size();
    if (q.limit) end = std::min(end, begin + static_cast<std::size_t>(*q.limit));
    rs.variables = proj;
    rs.rows.assign(rows.begin() + static_cast<long>(begin), rows.begin() + static_cast<long>(end));
    return rs;
}

}  // namespace nspm
