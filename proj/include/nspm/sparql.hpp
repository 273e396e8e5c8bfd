#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspm/rdf.hpp"

namespace nspm::sparql {

/// A term inside a triple pattern or filter. `slot` terms are template
/// placeholders (e.g. <A>) that instantiation replaces with concrete terms.
struct PatternTerm {
    enum class Kind { iri, var, literal, slot };
    Kind kind = Kind::var;
    Iri iri;           // kind == iri
    std::string name;  // kind == var or slot
    Literal literal;   // kind == literal

    static PatternTerm make_iri(Iri i) { return {Kind::iri, std::move(i), {}, {}}; }
    static PatternTerm make_var(std::string n) { return {Kind::var, {}, std::move(n), {}}; }
    static PatternTerm make_literal(Literal l) { return {Kind::literal, {}, {}, std::move(l)}; }
    static PatternTerm make_slot(std::string n) { return {Kind::slot, {}, std::move(n), {}}; }

    bool operator==(const PatternTerm& o) const {
        return kind == o.kind && iri == o.iri && name == o.name && literal == o.literal;
    }
};

struct TriplePattern {
    PatternTerm subject, predicate, object;
    bool operator==(const TriplePattern&) const = default;
};

enum class CmpOp { lt, gt, eq };

const char* cmp_op_symbol(CmpOp op);

/// FILTER(?var <op> value); value is a literal or a slot.
struct FilterCmp {
    std::string var;
    CmpOp op = CmpOp::lt;
    PatternTerm value;
    bool operator==(const FilterCmp&) const = default;
};

struct OrderBy {
    std::string var;
    bool ascending = true;
    bool operator==(const OrderBy&) const = default;
};

enum class QueryForm { select, ask };

/// The query fragment this project emits and evaluates: a basic graph
/// pattern of triple patterns, comparison filters, DISTINCT, COUNT, ORDER
/// BY, LIMIT and OFFSET, in SELECT or ASK form.
struct Query {
    QueryForm form = QueryForm::select;
    bool distinct = false;
    std::optional<std::string> count_var;  // SELECT COUNT(?v); DISTINCT counts distinct rows
    std::vector<std::string> projection;   // empty when count_var is set or form == ask
    std::vector<TriplePattern> patterns;
    std::vector<FilterCmp> filters;
    std::optional<OrderBy> order_by;
    std::optional<long> limit;
    std::optional<long> offset;

    bool operator==(const Query&) const = default;

    bool has_slots() const;
    /// Variable names appearing in patterns, in first-occurrence order.
    std::vector<std::string> pattern_vars() const;
};

/// Structural validity of the fragment: projected/filtered/ordered vars
/// occur in patterns, ASK carries no projection/order/limit, slot ids are
/// unique per position class. Throws UnsupportedFeature on violation.
void validate(const Query& q);

/// SPARQL text with CURIEs where the prefix table applies, absolute IRIs
/// otherwise. Single-line form, e.g.
///   SELECT ?x WHERE { dbr:Barack_Obama dbo:birthDate ?x }
std::string to_sparql(const Query& q, const PrefixTable& prefixes);

/// Parses the same fragment to_sparql emits, plus a few lenient forms seen
/// in the wild: `[]` as an anonymous variable, `DISTINCT(?a)` projections,
/// bare numeric filter operands, and COUNT(DISTINCT ?a).
Query parse_sparql(const std::string& text, const PrefixTable& prefixes);

}  // namespace nspm::sparql
