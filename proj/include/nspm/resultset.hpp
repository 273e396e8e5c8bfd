#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nspm/rdf.hpp"

namespace nspm {

/// SPARQL solution sequence. ASK results set is_boolean and carry no rows.
struct ResultSet {
    std::vector<std::string> variables;
    std::vector<std::map<std::string, Term>> rows;  // each row binds a subset of variables
    std::optional<bool> is_boolean;

    bool boolean() const { return is_boolean.value_or(false); }
    std::size_t size() const { return rows.size(); }
};

/// Standard application/sparql-results+json wire format.
std::string resultset_to_json(const ResultSet& rs);
ResultSet resultset_from_json(const std::string& json_text);

}  // namespace nspm
