#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nspm/kg_source.hpp"
#include "nspm/sparql.hpp"

namespace nspm {

enum class VariantKind {
    plain,
    ask,
    cmp_lt,
    cmp_gt,
    cmp_eq,
    sup_asc,
    sup_desc,
    count
};

const char* variant_name(VariantKind v);
std::optional<VariantKind> variant_from_name(const std::string& name);

/// Ordered property chain (outermost first: the chain position 0 produces
/// the answer) plus the variant kind. Identifies a template's structure.
struct CompositionKey {
    std::vector<Iri> property_chain;
    VariantKind variant = VariantKind::plain;

    int depth() const { return static_cast<int>(property_chain.size()); }
    std::string to_string() const;  // "p;q|variant", absolute IRIs
    bool operator==(const CompositionKey&) const = default;
    bool operator<(const CompositionKey& o) const { return to_string() < o.to_string(); }
};

/// What may fill a slot: instances of a class (entity slots) or observed
/// values of a property (value slots).
struct SlotFill {
    enum class Kind { entity_of_class, value_of_property } kind = Kind::entity_of_class;
    Iri iri;
    bool operator==(const SlotFill&) const = default;
};

struct Slot {
    std::string id;  // "A", "V"
    SlotFill fills;
    bool operator==(const Slot&) const = default;
};

struct Template {
    std::string id;  // stable content hash
    std::vector<std::string> nl_pattern;  // word tokens; slots appear as "<A>"
    sparql::Query query_pattern;          // slots appear as slot terms
    std::vector<Slot> slots;
    int depth = 1;
    CompositionKey key;
    Iri class_iri;

    // Generation bookkeeping carried along so variants and compositions can
    // be built without re-fetching metadata.
    std::vector<std::string> phrase_chain;  // lexicalized, aligned with key.property_chain
    std::string class_phrase;
    RangeKind answer_range = RangeKind::plain_literal;
    std::optional<Iri> answer_class;
};

using Lexicalizer = std::function<std::string(const PropertySpec&)>;

/// Default lexicalization: the property label, lowercased.
Lexicalizer label_lexicalizer();

/// One depth-1 plain template per property:
///   "what is the <phrase> of <A>"  /  SELECT ?x WHERE { <A> <p> ?x }
std::vector<Template> base_templates(const ClassMetadata& meta, const Lexicalizer& lex);

/// ASK for every range; comparatives, superlatives and COUNT only for
/// numeric/date answers. Throws VariantError when t is not plain.
std::vector<Template> variant_templates(const Template& t);

/// Chains `outer` onto the answer of `inner`:
///   what is the <outer> of the <inner...> of <A>
///   SELECT ?x WHERE { <A> p ?i0 . ?i0 q ?x }
/// Throws ComposeError on domain/range mismatch, DepthExceeded past max_depth.
Template compose(const PropertySpec& outer, const Template& inner, int max_depth,
                 const Lexicalizer& lex);

/// All base templates, variants, and satisfiable type-compatible
/// compositions up to max_depth, duplicate keys collapsed, ordered by
/// (depth, key). Satisfiability means >= 1 instantiation in `graph`.
std::vector<Template> generate_to_depth(const ClassMetadata& meta, const Graph& graph,
                                        int max_depth,
                                        const Lexicalizer& lex = label_lexicalizer());

bool has_instantiation(const Template& t, const Graph& g);

/// A concrete filling of a template's slots against a graph.
struct Instantiation {
    std::map<std::string, Term> fills;  // slot id -> term
    sparql::Query query;                // query_pattern with fills substituted
    ResultSet result;
    std::vector<Iri> route;  // subject entity, then intermediate entities, chain order
};

/// Answerable instantiations in lexicographic fill order, at most max_n.
std::vector<Instantiation> enumerate_instantiations(const Template& t, const Graph& g, long max_n);

/// TSV export: id, depth, variant, property_chain(;-joined CURIEs),
/// nl_pattern, encoded_query_pattern.
std::string templates_to_tsv(const std::vector<Template>& templates, const PrefixTable& prefixes);

}  // namespace nspm
