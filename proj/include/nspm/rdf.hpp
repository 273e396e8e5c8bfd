#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nspm/errors.hpp"

namespace nspm {

/// Absolute IRI. Comparison and hashing go through the string value.
struct Iri {
    std::string value;

    Iri() = default;
    explicit Iri(std::string v) : value(std::move(v)) {}

    /// Local name: substring after the last '#' or '/'.
    std::string local_name() const;

    bool operator==(const Iri& o) const { return value == o.value; }
    bool operator!=(const Iri& o) const { return value != o.value; }
    bool operator<(const Iri& o) const { return value < o.value; }
};

struct Literal {
    std::string lexical;
    std::optional<Iri> datatype;
    std::optional<std::string> lang;

    Literal() = default;
    explicit Literal(std::string lex) : lexical(std::move(lex)) {}
    Literal(std::string lex, Iri dt) : lexical(std::move(lex)), datatype(std::move(dt)) {}

    bool operator==(const Literal& o) const {
        return lexical == o.lexical && datatype == o.datatype && lang == o.lang;
    }
    bool operator<(const Literal& o) const {
        return std::tie(lexical, datatype, lang) < std::tie(o.lexical, o.datatype, o.lang);
    }
};

using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

bool term_less(const Term& a, const Term& b);
std::string term_key(const Term& t);  // unambiguous string form, used for ordering and dedup

struct Triple {
    Iri subject;
    Iri predicate;
    Term object;

    bool operator==(const Triple& o) const {
        return subject == o.subject && predicate == o.predicate && object == o.object;
    }
    bool operator<(const Triple& o) const;
};

/// Immutable in-memory triple set with subject and predicate indexes.
/// Triples are stored sorted and duplicate-free, so every scan order is
/// deterministic.
class Graph {
  public:
    Graph() = default;
    static Graph from_triples(std::vector<Triple> triples);

    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }

    /// Indexes return positions into triples(); empty vector when absent.
    const std::vector<std::uint32_t>& by_subject(const Iri& s) const;
    const std::vector<std::uint32_t>& by_predicate(const Iri& p) const;

    bool contains(const Triple& t) const;

    bool operator==(const Graph& o) const { return triples_ == o.triples_; }

  private:
    std::vector<Triple> triples_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> subj_index_;
    std::unordered_map<std::string, std::vector<std::uint32_t>> pred_index_;
};

/// Prefix table used for CURIE compression in SPARQL text and in the token
/// codec. Prefix names are restricted so that `prefix_local` tokens split
/// unambiguously on the first underscore.
class PrefixTable {
  public:
    /// Throws ConfigError on invalid or reserved prefix names.
    void add(const std::string& prefix, const std::string& base);

    std::optional<std::string> lookup(std::string_view prefix) const;

    /// Longest-base match; returns (prefix, local) or nullopt.
    std::optional<std::pair<std::string, std::string>> split(const Iri& iri) const;

    /// "dbo:birthDate" form, or nullopt when no base matches.
    std::optional<std::string> compress(const Iri& iri) const;

    /// Expands "dbo:birthDate"; nullopt when prefix is unknown or no colon.
    std::optional<Iri> expand_curie(std::string_view curie) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    /// dbo, dbr, rdf, rdfs, xsd.
    static PrefixTable defaults();

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

namespace vocab_iri {
inline const Iri rdf_type{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
inline const Iri rdfs_label{"http://www.w3.org/2000/01/rdf-schema#label"};
inline const Iri rdfs_domain{"http://www.w3.org/2000/01/rdf-schema#domain"};
inline const Iri rdfs_range{"http://www.w3.org/2000/01/rdf-schema#range"};
inline const Iri rdfs_comment{"http://www.w3.org/2000/01/rdf-schema#comment"};
inline const std::string xsd_ns = "http://www.w3.org/2001/XMLSchema#";
}  // namespace vocab_iri

/// True when the lexical form parses as a plain decimal/integer number.
bool numeric_lexical(std::string_view s);

}  // namespace nspm
