#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspm/query_eval.hpp"
#include "nspm/resultset.hpp"
#include "nspm/sparql_client.hpp"

namespace nspm {

enum class RangeKind { entity, numeric, date, plain_literal, boolean };

const char* range_kind_name(RangeKind k);

struct PropertySpec {
    Iri iri;
    std::string label;
    std::optional<Iri> domain;
    RangeKind range = RangeKind::plain_literal;
    std::optional<Iri> range_class;  // set when range == entity and the class is known
    std::optional<std::string> comment;

    bool ordered_range() const { return range == RangeKind::numeric || range == RangeKind::date; }
};

struct ClassMetadata {
    Iri class_iri;
    std::string label;
    std::vector<PropertySpec> properties;  // duplicate-free by IRI, sorted by IRI
};

/// Uniform query access to a knowledge graph: either an in-memory Graph or
/// a remote endpoint. All higher-level metadata operations go through
/// select(), so they behave identically for both backends.
class KgSource {
  public:
    explicit KgSource(const Graph& graph, PrefixTable prefixes)
        : graph_(&graph), prefixes_(std::move(prefixes)) {}
    KgSource(EndpointConfig endpoint, PrefixTable prefixes)
        : endpoint_(std::move(endpoint)), prefixes_(std::move(prefixes)) {}

    ResultSet select(const sparql::Query& q) const;

    bool is_local() const { return graph_ != nullptr; }
    const Graph* graph() const { return graph_; }
    const PrefixTable& prefixes() const { return prefixes_; }

  private:
    const Graph* graph_ = nullptr;
    std::optional<EndpointConfig> endpoint_;
    PrefixTable prefixes_;
};

/// Entity surface form: rdfs:label when present, else the IRI local name
/// with underscores turned into spaces.
std::string entity_label(const KgSource& source, const Iri& entity);
std::string local_name_label(const Iri& iri);

/// Ontology metadata for one class: every property declared with
/// rdfs:domain <class>, or — when no domain declarations exist — every
/// predicate used on instances of the class. Range kinds come from
/// rdfs:range, falling back to the shape of observed objects.
/// Throws NotFound when the class has neither properties nor instances.
ClassMetadata fetch_class_metadata(const KgSource& source, const Iri& class_iri);

/// Distinct subjects carrying the property, paired with their labels,
/// lexicographically ordered by IRI, at most `limit` results.
std::vector<std::pair<Iri, std::string>> entities_with_property(const KgSource& source,
                                                                const Iri& property_iri,
                                                                long limit);

}  // namespace nspm
