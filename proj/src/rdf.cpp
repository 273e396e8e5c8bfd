#include "nspm/rdf.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace nspm {

std::string Iri::local_name() const {
    auto pos = value.find_last_of("#/");
    if (pos == std::string::npos || pos + 1 >= value.size()) return value;
    return value.substr(pos + 1);
}

std::string term_key(const Term& t) {
    if (is_iri(t)) return "I" + as_iri(t).value;
    const Literal& l = as_literal(t);
    std::string key = "L" + l.lexical;
    key += '\x1f';
    if (l.datatype) key += l.datatype->value;
    key += '\x1f';
    if (l.lang) key += *l.lang;
    return key;
}

bool term_less(const Term& a, const Term& b) {
    return term_key(a) < term_key(b);
}

bool Triple::operator<(const Triple& o) const {
    if (subject.value != o.subject.value) return subject.value < o.subject.value;
    if (predicate.value != o.predicate.value) return predicate.value < o.predicate.value;
    return term_less(object, o.object);
}

Graph Graph::from_triples(std::vector<Triple> triples) {
    Graph g;
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    g.triples_ = std::move(triples);
    for (std::uint32_t i = 0; i < g.triples_.size(); ++i) {
        g.subj_index_[g.triples_[i].subject.value].push_back(i);
        g.pred_index_[g.triples_[i].predicate.value].push_back(i);
    }
    return g;
}

namespace {
const std::vector<std::uint32_t> kNoHits;
}

const std::vector<std::uint32_t>& Graph::by_subject(const Iri& s) const {
    auto it = subj_index_.find(s.value);
    return it == subj_index_.end() ? kNoHits : it->second;
}

const std::vector<std::uint32_t>& Graph::by_predicate(const Iri& p) const {
    auto it = pred_index_.find(p.value);
    return it == pred_index_.end() ? kNoHits : it->second;
}

bool Graph::contains(const Triple& t) const {
    return std::binary_search(triples_.begin(), triples_.end(), t);
}

namespace {

// Prefix names that would collide with codec token classes.
const std::array<const char*, 20> kReservedPrefixes = {
    "select", "ask",    "where", "distinct", "count", "order", "by",
    "asc",    "desc",   "limit", "offset",   "filter", "brack", "par",
    "sep",    "math",   "var",   "lit",      "plh",    "unk"};

bool valid_prefix_name(const std::string& p) {
    if (p.empty() || !std::isalpha(static_cast<unsigned char>(p[0]))) return false;
    for (char c : p)
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

void PrefixTable::add(const std::string& prefix, const std::string& base) {
    if (!valid_prefix_name(prefix))
        throw ConfigError("invalid prefix name '" + prefix + "': must match [A-Za-z][A-Za-z0-9]*");
    for (const char* r : kReservedPrefixes)
        if (prefix == r) throw ConfigError("prefix name '" + prefix + "' is reserved by the codec");
    if (base.empty()) throw ConfigError("empty base IRI for prefix '" + prefix + "'");
    for (auto& [p, b] : entries_) {
        if (p == prefix) {
            b = base;  // redefinition wins, mirroring SPARQL prologue semantics
            return;
        }
    }
    entries_.emplace_back(prefix, base);
}

std::optional<std::string> PrefixTable::lookup(std::string_view prefix) const {
    for (const auto& [p, b] : entries_)
        if (p == prefix) return b;
    return std::nullopt;
}

std::optional<std::pair<std::string, std::string>> PrefixTable::split(const Iri& iri) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& e : entries_) {
        if (iri.value.size() > e.second.size() && iri.value.compare(0, e.second.size(), e.second) == 0) {
            if (!best || e.second.size() > best->second.size()) best = &e;
        }
    }
    if (!best) return std::nullopt;
    return std::make_pair(best->first, iri.value.substr(best->second.size()));
}

std::optional<std::string> PrefixTable::compress(const Iri& iri) const {
    auto parts = split(iri);
    if (!parts) return std::nullopt;
    return parts->first + ":" + parts->second;
}

std::optional<Iri> PrefixTable::expand_curie(std::string_view curie) const {
    auto colon = curie.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto base = lookup(curie.substr(0, colon));
    if (!base) return std::nullopt;
    return Iri(*base + std::string(curie.substr(colon + 1)));
}

PrefixTable PrefixTable::defaults() {
    PrefixTable t;
    t.add("dbo", "http://dbpedia.org/ontology/");
    t.add("dbr", "http://dbpedia.org/resource/");
    t.add("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    t.add("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    t.add("xsd", "http://www.w3.org/2001/XMLSchema#");
    return t;
}

bool numeric_lexical(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    bool digits = false, dot = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits = true;
        } else if (s[i] == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    return digits;
}

}  // namespace nspm
