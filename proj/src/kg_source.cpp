#include "nspm/kg_source.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nspm {

using sparql::PatternTerm;
using sparql::Query;
using sparql::QueryForm;
using sparql::TriplePattern;

const char* range_kind_name(RangeKind k) {
    switch (k) {
        case RangeKind::entity: return "entity";
        case RangeKind::numeric: return "numeric";
        case RangeKind::date: return "date";
        case RangeKind::plain_literal: return "plain-literal";
        case RangeKind::boolean: return "boolean";
    }
    return "?";
}

ResultSet KgSource::select(const sparql::Query& q) const {
    if (graph_) return query_graph(*graph_, q);
    return query_endpoint(*endpoint_, q, prefixes_);
}

namespace {

Query make_select(std::vector<std::string> proj, std::vector<TriplePattern> patterns,
                  bool distinct = false) {
    Query q;
    q.distinct = distinct;
    q.projection = std::move(proj);
    q.patterns = std::move(patterns);
    return q;
}

TriplePattern tp(PatternTerm s, PatternTerm p, PatternTerm o) { return {std::move(s), std::move(p), std::move(o)}; }

std::optional<Term> first_binding(const ResultSet& rs, const std::string& var) {
    for (const auto& row : rs.rows) {
        auto it = row.find(var);
        if (it != row.end()) return it->second;
    }
    return std::nullopt;
}

RangeKind kind_from_datatype(const Iri& dt) {
    const std::string& v = dt.value;
    if (v.rfind(vocab_iri::xsd_ns, 0) != 0) return RangeKind::plain_literal;
    std::string local = v.substr(vocab_iri::xsd_ns.size());
    if (local == "integer" || local == "int" || local == "long" || local == "decimal" ||
        local == "double" || local == "float" || local == "nonNegativeInteger" ||
        local == "positiveInteger")
        return RangeKind::numeric;
    if (local == "date" || local == "dateTime" || local == "gYear" || local == "gYearMonth")
        return RangeKind::date;
    if (local == "boolean") return RangeKind::boolean;
    return RangeKind::plain_literal;
}

}  // namespace

std::string local_name_label(const Iri& iri) {
    std::string label = iri.local_name();
    std::replace(label.begin(), label.end(), '_', ' ');
    return label;
}

std::string entity_label(const KgSource& source, const Iri& entity) {
    auto q = make_select({"l"}, {tp(PatternTerm::make_iri(entity),
                                    PatternTerm::make_iri(vocab_iri::rdfs_label),
                                    PatternTerm::make_var("l"))});
    auto rs = source.select(q);
    if (auto t = first_binding(rs, "l"); t && !is_iri(*t)) return as_literal(*t).lexical;
    return local_name_label(entity);
}

namespace {

/// Declared rdfs:range, else the shape of observed object values.
void infer_range(const KgSource& source, PropertySpec& spec) {
    auto range_q = make_select({"r"}, {tp(PatternTerm::make_iri(spec.iri),
                                          PatternTerm::make_iri(vocab_iri::rdfs_range),
                                          PatternTerm::make_var("r"))});
    if (auto declared = first_binding(source.select(range_q), "r"); declared && is_iri(*declared)) {
        const Iri& r = as_iri(*declared);
        if (r.value.rfind(vocab_iri::xsd_ns, 0) == 0) {
            spec.range = kind_from_datatype(r);
        } else {
            spec.range = RangeKind::entity;
            spec.range_class = r;
        }
        return;
    }

    auto sample_q = make_select({"o"}, {tp(PatternTerm::make_var("s"),
                                           PatternTerm::make_iri(spec.iri),
                                           PatternTerm::make_var("o"))});
    sample_q.limit = 50;
    auto rs = source.select(sample_q);
    bool any = false, all_iri = true, all_numeric = true, all_date = true;
    std::optional<Iri> object_class;
    for (const auto& row : rs.rows) {
        auto it = row.find("o");
        if (it == row.end()) continue;
        any = true;
        if (is_iri(it->second)) {
            all_numeric = all_date = false;
            if (!object_class) {
                auto type_q = make_select({"c"}, {tp(PatternTerm::make_iri(as_iri(it->second)),
                                                     PatternTerm::make_iri(vocab_iri::rdf_type),
                                                     PatternTerm::make_var("c"))});
                if (auto c = first_binding(source.select(type_q), "c"); c && is_iri(*c))
                    object_class = as_iri(*c);
            }
        } else {
            all_iri = false;
            const Literal& l = as_literal(it->second);
            RangeKind k = l.datatype ? kind_from_datatype(*l.datatype) : RangeKind::plain_literal;
            if (k != RangeKind::numeric && !numeric_lexical(l.lexical)) all_numeric = false;
            if (k != RangeKind::date) all_date = false;
        }
    }
    if (!any) {
        spec.range = RangeKind::plain_literal;
    } else if (all_iri) {
        spec.range = RangeKind::entity;
        spec.range_class = object_class;
    } else if (all_numeric) {
        spec.range = RangeKind::numeric;
    } else if (all_date) {
        spec.range = RangeKind::date;
    } else {
        spec.range = RangeKind::plain_literal;
    }
}

}  // namespace

ClassMetadata fetch_class_metadata(const KgSource& source, const Iri& class_iri) {
    ClassMetadata meta;
    meta.class_iri = class_iri;
    meta.label = entity_label(source, class_iri);

    auto declared_q = make_select({"p"}, {tp(PatternTerm::make_var("p"),
                                             PatternTerm::make_iri(vocab_iri::rdfs_domain),
                                             PatternTerm::make_iri(class_iri))},
                                  true);
    std::set<std::string> property_iris;
    for (const auto& row : source.select(declared_q).rows) {
        auto it = row.find("p");
        if (it != row.end() && is_iri(it->second)) property_iris.insert(as_iri(it->second).value);
    }

    if (property_iris.empty()) {
        // No domain declarations: fall back to predicates observed on instances.
        auto used_q = make_select({"p"}, {tp(PatternTerm::make_var("s"),
                                             PatternTerm::make_iri(vocab_iri::rdf_type),
                                             PatternTerm::make_iri(class_iri)),
                                          tp(PatternTerm::make_var("s"), PatternTerm::make_var("p"),
                                             PatternTerm::make_var("o"))},
                                  true);
        for (const auto& row : source.select(used_q).rows) {
            auto it = row.find("p");
            if (it != row.end() && is_iri(it->second)) {
                const std::string& v = as_iri(it->second).value;
                if (v != vocab_iri::rdf_type.value && v != vocab_iri::rdfs_label.value &&
                    v != vocab_iri::rdfs_comment.value)
                    property_iris.insert(v);
            }
        }
        if (property_iris.empty())
            throw NotFound("class <" + class_iri.value + "> has no declared properties and no instances");
    }

    for (const auto& piri : property_iris) {  // std::set: lexicographic, duplicate-free
        PropertySpec spec;
        spec.iri = Iri(piri);
        spec.label = entity_label(source, spec.iri);
        auto domain_q = make_select({"d"}, {tp(PatternTerm::make_iri(spec.iri),
                                               PatternTerm::make_iri(vocab_iri::rdfs_domain),
                                               PatternTerm::make_var("d"))});
        if (auto d = first_binding(source.select(domain_q), "d"); d && is_iri(*d))
            spec.domain = as_iri(*d);
        auto comment_q = make_select({"c"}, {tp(PatternTerm::make_iri(spec.iri),
                                                PatternTerm::make_iri(vocab_iri::rdfs_comment),
                                                PatternTerm::make_var("c"))});
        if (auto c = first_binding(source.select(comment_q), "c"); c && !is_iri(*c))
            spec.comment = as_literal(*c).lexical;
        infer_range(source, spec);
        meta.properties.push_back(std::move(spec));
    }
    return meta;
}

std::vector<std::pair<Iri, std::string>> entities_with_property(const KgSource& source,
                                                                const Iri& property_iri,
                                                                long limit) {
    if (limit < 1) throw ConfigError("entities_with_property requires limit >= 1");
    auto q = make_select({"a"}, {tp(PatternTerm::make_var("a"), PatternTerm::make_iri(property_iri),
                                    PatternTerm::make_var("v"))},
                         true);
    q.order_by = sparql::OrderBy{"a", true};
    q.limit = limit;
    std::vector<std::pair<Iri, std::string>> out;
    for (const auto& row : source.select(q).rows) {
        auto it = row.find("a");
        if (it == row.end() || !is_iri(it->second)) continue;
        Iri entity = as_iri(it->second);
        out.emplace_back(entity, entity_label(source, entity));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first.value < b.first.value; });
    return out;
}

}  // namespace nspm
