#include "nspm/template_engine.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "nspm/codec.hpp"
#include "nspm/hash.hpp"
#include "nspm/query_eval.hpp"

namespace nspm {

using sparql::CmpOp;
using sparql::FilterCmp;
using sparql::PatternTerm;
using sparql::Query;
using sparql::QueryForm;
using sparql::TriplePattern;

const char* variant_name(VariantKind v) {
    switch (v) {
        case VariantKind::plain: return "plain";
        case VariantKind::ask: return "ask";
        case VariantKind::cmp_lt: return "cmp_lt";
        case VariantKind::cmp_gt: return "cmp_gt";
        case VariantKind::cmp_eq: return "cmp_eq";
        case VariantKind::sup_asc: return "sup_asc";
        case VariantKind::sup_desc: return "sup_desc";
        case VariantKind::count: return "count";
    }
    return "?";
}

std::optional<VariantKind> variant_from_name(const std::string& name) {
    for (VariantKind v : {VariantKind::plain, VariantKind::ask, VariantKind::cmp_lt,
                          VariantKind::cmp_gt, VariantKind::cmp_eq, VariantKind::sup_asc,
                          VariantKind::sup_desc, VariantKind::count})
        if (name == variant_name(v)) return v;
    return std::nullopt;
}

std::string CompositionKey::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < property_chain.size(); ++i) {
        if (i) s += ';';
        s += property_chain[i].value;
    }
    s += '|';
    s += variant_name(variant);
    return s;
}

Lexicalizer label_lexicalizer() {
    return [](const PropertySpec& p) {
        std::string phrase = p.label;
        std::transform(phrase.begin(), phrase.end(), phrase.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return phrase;
    };
}

namespace {

std::string template_id(const Iri& class_iri, const CompositionKey& key) {
    return sha256_hex(class_iri.value + "#" + key.to_string()).substr(0, 16);
}

void append_words(std::vector<std::string>& tokens, const std::string& phrase) {
    std::istringstream in(phrase);
    std::string w;
    while (in >> w) tokens.push_back(w);
}

/// "p1 of the p2 of the p3" word tokens for a phrase chain.
std::vector<std::string> chain_words(const std::vector<std::string>& phrases) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < phrases.size(); ++i) {
        if (i) {
            out.push_back("of");
            out.push_back("the");
        }
        append_words(out, phrases[i]);
    }
    return out;
}

/// { <A> c[d-1] ?i0 . ?i0 c[d-2] ?i1 . ... ?i_{d-2} c[0] <answer> }
/// Intermediates are numbered from the subject outward, so the
/// highest-numbered variable sits next to the answer.
std::vector<TriplePattern> chain_patterns(const std::vector<Iri>& chain, PatternTerm subject,
                                          PatternTerm answer) {
    std::vector<TriplePattern> out;
    const auto d = chain.size();
    PatternTerm current = std::move(subject);
    for (std::size_t step = 0; step < d; ++step) {
        const Iri& prop = chain[d - 1 - step];
        PatternTerm next = step + 1 == d ? std::move(answer)
                                         : PatternTerm::make_var("i" + std::to_string(step));
        out.push_back({current, PatternTerm::make_iri(prop), next});
        current = out.back().object;
    }
    return out;
}

Template make_plain(const Iri& class_iri, const std::string& class_phrase,
                    std::vector<Iri> chain, std::vector<std::string> phrases,
                    const PropertySpec& outermost) {
    Template t;
    t.key = {std::move(chain), VariantKind::plain};
    t.depth = t.key.depth();
    t.class_iri = class_iri;
    t.class_phrase = class_phrase;
    t.phrase_chain = std::move(phrases);
    t.answer_range = outermost.range;
    t.answer_class = outermost.range_class;
    t.id = template_id(class_iri, t.key);
    t.slots = {{"A", {SlotFill::Kind::entity_of_class, class_iri}}};

    t.nl_pattern = {"what", "is", "the"};
    auto cw = chain_words(t.phrase_chain);
    t.nl_pattern.insert(t.nl_pattern.end(), cw.begin(), cw.end());
    t.nl_pattern.push_back("of");
    t.nl_pattern.push_back("<A>");

    t.query_pattern.form = QueryForm::select;
    t.query_pattern.projection = {"x"};
    t.query_pattern.patterns =
        chain_patterns(t.key.property_chain, PatternTerm::make_slot("A"), PatternTerm::make_var("x"));
    return t;
}

}  // namespace

std::vector<Template> base_templates(const ClassMetadata& meta, const Lexicalizer& lex) {
    std::vector<Template> out;
    std::set<std::string> seen;
    for (const PropertySpec& p : meta.properties) {
        if (!seen.insert(p.iri.value).second) continue;
        std::string class_phrase = meta.label;
        std::transform(class_phrase.begin(), class_phrase.end(), class_phrase.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        out.push_back(make_plain(meta.class_iri, class_phrase, {p.iri}, {lex(p)}, p));
    }
    return out;
}

std::vector<Template> variant_templates(const Template& t) {
    if (t.key.variant != VariantKind::plain)
        throw VariantError("variants can only be derived from a plain template (got " +
                           std::string(variant_name(t.key.variant)) + ")");

    std::vector<Template> out;
    auto cw = chain_words(t.phrase_chain);
    auto derive = [&](VariantKind kind) {
        Template v = t;
        v.key.variant = kind;
        v.id = template_id(v.class_iri, v.key);
        return v;
    };

    {  // ask: is the <chain> of <A> <V>   /  ASK WHERE { <A> ... <V> }
        Template v = derive(VariantKind::ask);
        v.nl_pattern = {"is", "the"};
        v.nl_pattern.insert(v.nl_pattern.end(), cw.begin(), cw.end());
        v.nl_pattern.push_back("of");
        v.nl_pattern.push_back("<A>");
        v.nl_pattern.push_back("<V>");
        SlotFill vfill = t.answer_range == RangeKind::entity && t.answer_class
                             ? SlotFill{SlotFill::Kind::entity_of_class, *t.answer_class}
                             : SlotFill{SlotFill::Kind::value_of_property, t.key.property_chain.front()};
        v.slots = {{"A", {SlotFill::Kind::entity_of_class, t.class_iri}}, {"V", vfill}};
        v.query_pattern = Query{};
        v.query_pattern.form = QueryForm::ask;
        v.query_pattern.patterns = chain_patterns(t.key.property_chain, PatternTerm::make_slot("A"),
                                                  PatternTerm::make_slot("V"));
        out.push_back(std::move(v));
    }

    if (t.answer_range == RangeKind::numeric || t.answer_range == RangeKind::date) {
        static const std::vector<std::pair<VariantKind, std::vector<std::string>>> ops = {
            {VariantKind::cmp_lt, {"less", "than"}},
            {VariantKind::cmp_gt, {"greater", "than"}},
            {VariantKind::cmp_eq, {"equal", "to"}},
        };
        for (const auto& [kind, phrase] : ops) {
            Template v = derive(kind);
            v.nl_pattern = {"which"};
            append_words(v.nl_pattern, t.class_phrase);
            v.nl_pattern.push_back("has");
            v.nl_pattern.insert(v.nl_pattern.end(), cw.begin(), cw.end());
            v.nl_pattern.insert(v.nl_pattern.end(), phrase.begin(), phrase.end());
            v.nl_pattern.push_back("<V>");
            v.slots = {{"V", {SlotFill::Kind::value_of_property, t.key.property_chain.front()}}};
            v.query_pattern = Query{};
            v.query_pattern.projection = {"a"};
            v.query_pattern.patterns = chain_patterns(t.key.property_chain,
                                                      PatternTerm::make_var("a"),
                                                      PatternTerm::make_var("v"));
            CmpOp op = kind == VariantKind::cmp_lt ? CmpOp::lt
                                                   : (kind == VariantKind::cmp_gt ? CmpOp::gt : CmpOp::eq);
            v.query_pattern.filters = {FilterCmp{"v", op, PatternTerm::make_slot("V")}};
            out.push_back(std::move(v));
        }
        for (bool ascending : {false, true}) {
            Template v = derive(ascending ? VariantKind::sup_asc : VariantKind::sup_desc);
            v.nl_pattern = {"which"};
            append_words(v.nl_pattern, t.class_phrase);
            v.nl_pattern.push_back("has");
            v.nl_pattern.push_back("the");
            v.nl_pattern.push_back(ascending ? "lowest" : "highest");
            v.nl_pattern.insert(v.nl_pattern.end(), cw.begin(), cw.end());
            v.slots = {};
            v.query_pattern = Query{};
            v.query_pattern.projection = {"a"};
            v.query_pattern.patterns = chain_patterns(t.key.property_chain,
                                                      PatternTerm::make_var("a"),
                                                      PatternTerm::make_var("v"));
            v.query_pattern.order_by = sparql::OrderBy{"v", ascending};
            v.query_pattern.limit = 1;
            out.push_back(std::move(v));
        }
        {
            Template v = derive(VariantKind::count);
            v.nl_pattern = {"how", "many"};
            append_words(v.nl_pattern, t.class_phrase);
            v.nl_pattern.push_back("have");
            v.nl_pattern.push_back("a");
            v.nl_pattern.insert(v.nl_pattern.end(), cw.begin(), cw.end());
            v.slots = {};
            v.query_pattern = Query{};
            v.query_pattern.distinct = true;
            v.query_pattern.count_var = "a";
            v.query_pattern.patterns = chain_patterns(t.key.property_chain,
                                                      PatternTerm::make_var("a"),
                                                      PatternTerm::make_var("v"));
            out.push_back(std::move(v));
        }
    }
    return out;
}

Template compose(const PropertySpec& outer, const Template& inner, int max_depth,
                 const Lexicalizer& lex) {
    if (inner.key.variant != VariantKind::plain)
        throw ComposeError("only plain templates compose (inner is " +
                           std::string(variant_name(inner.key.variant)) + ")");
    if (inner.depth + 1 > max_depth)
        throw DepthExceeded("composition would exceed max depth " + std::to_string(max_depth));
    if (inner.answer_range != RangeKind::entity || !inner.answer_class)
        throw ComposeError("inner template's answer is not an entity class");
    if (!outer.domain || !(*outer.domain == *inner.answer_class))
        throw ComposeError("domain of <" + outer.iri.value + "> does not match inner answer class <" +
                           inner.answer_class->value + ">");

    std::vector<Iri> chain;
    chain.push_back(outer.iri);
    chain.insert(chain.end(), inner.key.property_chain.begin(), inner.key.property_chain.end());
    std::vector<std::string> phrases;
    phrases.push_back(lex(outer));
    phrases.insert(phrases.end(), inner.phrase_chain.begin(), inner.phrase_chain.end());
    return make_plain(inner.class_iri, inner.class_phrase, std::move(chain), std::move(phrases),
                      outer);
}

namespace {

/// Slot-free version of the template query used for satisfiability and fill
/// enumeration: pattern slots become variables named s_<id>; filters whose
/// operand is a slot are dropped (their candidates come from the filter var).
struct SupportQuery {
    Query query;                                   // ASK-style over the patterns
    std::vector<std::pair<std::string, std::string>> slot_vars;  // slot id -> var name
};

SupportQuery support_query(const Template& t) {
    SupportQuery sq;
    sq.query.form = QueryForm::select;
    sq.query.distinct = true;
    for (const auto& slot : t.slots) {
        // Pattern slots get their own variable; a filter slot draws its
        // candidates from the variable the filter constrains.
        bool in_filter = false;
        for (const auto& f : t.query_pattern.filters)
            if (f.value.kind == PatternTerm::Kind::slot && f.value.name == slot.id) {
                sq.slot_vars.emplace_back(slot.id, f.var);
                in_filter = true;
            }
        if (!in_filter) sq.slot_vars.emplace_back(slot.id, "s_" + slot.id);
    }
    auto subst = [&](PatternTerm term) {
        if (term.kind == PatternTerm::Kind::slot) return PatternTerm::make_var("s_" + term.name);
        return term;
    };
    for (const auto& p : t.query_pattern.patterns)
        sq.query.patterns.push_back({subst(p.subject), subst(p.predicate), subst(p.object)});
    for (const auto& f : t.query_pattern.filters)
        if (f.value.kind != PatternTerm::Kind::slot) sq.query.filters.push_back(f);
    for (const auto& [id, var] : sq.slot_vars) sq.query.projection.push_back(var);
    if (sq.query.projection.empty()) sq.query.projection = {t.query_pattern.patterns.front().subject.kind == PatternTerm::Kind::var ? t.query_pattern.patterns.front().subject.name : "x"};
    return sq;
}

PatternTerm term_to_pattern(const Term& t) {
    if (is_iri(t)) return PatternTerm::make_iri(as_iri(t));
    return PatternTerm::make_literal(as_literal(t));
}

Query substitute(const Query& pattern, const std::map<std::string, Term>& fills) {
    Query q = pattern;
    auto subst = [&](PatternTerm& term) {
        if (term.kind != PatternTerm::Kind::slot) return;
        auto it = fills.find(term.name);
        if (it == fills.end()) throw UnsupportedFeature("unfilled slot <" + term.name + ">");
        term = term_to_pattern(it->second);
    };
    for (auto& p : q.patterns) {
        subst(p.subject);
        subst(p.predicate);
        subst(p.object);
    }
    for (auto& f : q.filters) {
        if (f.value.kind == PatternTerm::Kind::slot) {
            auto it = fills.find(f.value.name);
            if (it == fills.end()) throw UnsupportedFeature("unfilled slot <" + f.value.name + ">");
            if (is_iri(it->second))
                f.value = PatternTerm::make_iri(as_iri(it->second));
            else
                f.value = PatternTerm::make_literal(as_literal(it->second));
        }
    }
    return q;
}

bool answered(const Query& q, const ResultSet& rs) {
    if (q.form == QueryForm::ask) return rs.boolean();
    if (q.count_var) {
        if (rs.rows.empty()) return false;
        auto it = rs.rows.front().find(*q.count_var);
        return it != rs.rows.end() ? (!is_iri(it->second) && as_literal(it->second).lexical != "0")
                                   : false;
    }
    return !rs.rows.empty();
}

std::vector<Iri> extract_route(const Template& t, const Query& concrete,
                               const std::map<std::string, Term>& fills, const Graph& g) {
    std::vector<Iri> route;
    bool subject_filled = false;
    if (auto it = fills.find("A"); it != fills.end() && is_iri(it->second)) {
        route.push_back(as_iri(it->second));
        subject_filled = true;
    }
    // Route variables: the subject var (when not filled) plus intermediates,
    // read off the first result row of the concrete query.
    std::vector<std::string> route_vars;
    if (!subject_filled && !concrete.patterns.empty() &&
        concrete.patterns.front().subject.kind == PatternTerm::Kind::var)
        route_vars.push_back(concrete.patterns.front().subject.name);
    for (int i = 0; i + 1 < t.depth; ++i) route_vars.push_back("i" + std::to_string(i));
    if (route_vars.empty()) return route;

    Query rq = concrete;
    rq.form = QueryForm::select;
    rq.count_var.reset();
    rq.distinct = false;
    rq.projection = route_vars;
    auto rs = query_graph(g, rq);
    if (!rs.rows.empty()) {
        for (const auto& v : route_vars) {
            auto it = rs.rows.front().find(v);
            if (it != rs.rows.front().end() && is_iri(it->second)) route.push_back(as_iri(it->second));
        }
    }
    return route;
}

}  // namespace

bool has_instantiation(const Template& t, const Graph& g) {
    SupportQuery sq = support_query(t);
    auto rs = query_graph(g, sq.query);
    if (t.key.variant == VariantKind::cmp_lt || t.key.variant == VariantKind::cmp_gt) {
        // A strict comparison only has a witness when two distinct values exist.
        std::set<std::string> values;
        std::string var = sq.slot_vars.front().second;
        for (const auto& row : rs.rows)
            if (auto it = row.find(var); it != row.end()) values.insert(term_key(it->second));
        return values.size() >= 2;
    }
    return !rs.rows.empty();
}

std::vector<Instantiation> enumerate_instantiations(const Template& t, const Graph& g, long max_n) {
    std::vector<Instantiation> out;
    if (max_n < 1) return out;

    if (t.slots.empty()) {
        Instantiation inst;
        inst.query = t.query_pattern;
        inst.result = query_graph(g, inst.query);
        if (!answered(inst.query, inst.result)) return out;
        inst.route = extract_route(t, inst.query, inst.fills, g);
        out.push_back(std::move(inst));
        return out;
    }

    SupportQuery sq = support_query(t);
    auto candidates = query_graph(g, sq.query);

    // Deterministic fill order: lexicographic over the slot terms.
    std::vector<std::map<std::string, Term>> fill_tuples;
    for (const auto& row : candidates.rows) {
        std::map<std::string, Term> fills;
        bool complete = true;
        for (const auto& [slot_id, var] : sq.slot_vars) {
            auto it = row.find(var);
            if (it == row.end()) {
                complete = false;
                break;
            }
            fills[slot_id] = it->second;
        }
        if (complete) fill_tuples.push_back(std::move(fills));
    }
    auto tuple_key = [&](const std::map<std::string, Term>& fills) {
        std::string k;
        for (const auto& slot : t.slots) {
            auto it = fills.find(slot.id);
            if (it != fills.end()) k += term_key(it->second);
            k += '\x1e';
        }
        return k;
    };
    std::sort(fill_tuples.begin(), fill_tuples.end(),
              [&](const auto& a, const auto& b) { return tuple_key(a) < tuple_key(b); });
    fill_tuples.erase(std::unique(fill_tuples.begin(), fill_tuples.end()), fill_tuples.end());

    for (auto& fills : fill_tuples) {
        if (static_cast<long>(out.size()) >= max_n) break;
        Instantiation inst;
        inst.query = substitute(t.query_pattern, fills);
        inst.result = query_graph(g, inst.query);
        if (!answered(inst.query, inst.result)) continue;
        inst.route = extract_route(t, inst.query, fills, g);
        inst.fills = std::move(fills);
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<Template> generate_to_depth(const ClassMetadata& meta, const Graph& graph,
                                        int max_depth, const Lexicalizer& lex) {
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");

    KgSource source(graph, PrefixTable{});
    std::map<std::string, std::optional<ClassMetadata>> metadata_cache;
    auto metadata_for = [&](const Iri& cls) -> const std::optional<ClassMetadata>& {
        auto it = metadata_cache.find(cls.value);
        if (it == metadata_cache.end()) {
            std::optional<ClassMetadata> m;
            try {
                m = fetch_class_metadata(source, cls);
            } catch (const NotFound&) {
            }
            it = metadata_cache.emplace(cls.value, std::move(m)).first;
        }
        return it->second;
    };

    std::vector<Template> plains = base_templates(meta, lex);
    std::vector<Template> satisfiable;
    std::vector<Template> frontier;
    for (auto& t : plains)
        if (has_instantiation(t, graph)) {
            satisfiable.push_back(t);
            frontier.push_back(std::move(t));
        }

    for (int depth = 1; depth < max_depth; ++depth) {
        std::vector<Template> next;
        for (const Template& inner : frontier) {
            if (inner.answer_range != RangeKind::entity || !inner.answer_class) continue;
            const auto& inner_meta = metadata_for(*inner.answer_class);
            if (!inner_meta) continue;
            for (const PropertySpec& outer : inner_meta->properties) {
                Template composed;
                try {
                    composed = compose(outer, inner, max_depth, lex);
                } catch (const ComposeError&) {
                    continue;
                }
                if (!has_instantiation(composed, graph)) continue;
                next.push_back(composed);
                satisfiable.push_back(std::move(composed));
            }
        }
        frontier = std::move(next);
    }

    std::vector<Template> all;
    for (const Template& t : satisfiable) {
        all.push_back(t);
        for (Template& v : variant_templates(t))
            if (has_instantiation(v, graph)) all.push_back(std::move(v));
    }

    std::map<std::string, Template> by_key;
    for (auto& t : all) by_key.emplace(t.key.to_string(), std::move(t));
    std::vector<Template> out;
    out.reserve(by_key.size());
    for (auto& [_, t] : by_key) out.push_back(std::move(t));
    std::stable_sort(out.begin(), out.end(), [](const Template& a, const Template& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.key.to_string() < b.key.to_string();
    });
    return out;
}

std::string templates_to_tsv(const std::vector<Template>& templates, const PrefixTable& prefixes) {
    std::string out = "id\tdepth\tvariant\tproperty_chain\tnl_pattern\tencoded_query_pattern\n";
    for (const Template& t : templates) {
        out += t.id + "\t" + std::to_string(t.depth) + "\t" + variant_name(t.key.variant) + "\t";
        for (std::size_t i = 0; i < t.key.property_chain.size(); ++i) {
            if (i) out += ';';
            auto curie = prefixes.compress(t.key.property_chain[i]);
            out += curie ? *curie : t.key.property_chain[i].value;
        }
        out += "\t";
        for (std::size_t i = 0; i < t.nl_pattern.size(); ++i) {
            if (i) out += ' ';
            out += t.nl_pattern[i];
        }
        out += "\t" + sparql::join_tokens(sparql::encode(t.query_pattern, prefixes)) + "\n";
    }
    return out;
}

}  // namespace nspm
