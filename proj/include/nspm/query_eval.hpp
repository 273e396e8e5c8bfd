#pragma once

#include "nspm/resultset.hpp"
#include "nspm/rdf.hpp"
#include "nspm/sparql.hpp"

namespace nspm {

/// Evaluates a fragment query against a local graph with a naive nested-loop
/// join over the pattern list, in pattern order. ORDER BY is a stable sort;
/// LIMIT/OFFSET apply after sorting; DISTINCT dedups projected rows keeping
/// first occurrence. Deterministic: triples are scanned in canonical order.
///
/// Throws UnsupportedFeature for queries outside the fragment (including
/// slot-bearing patterns) and TypeError for filter comparisons between
/// non-comparable values.
ResultSet query_graph(const Graph& g, const sparql::Query& q);

/// Filter semantics shared with instantiation checks: numeric comparison
/// when both lexical forms are numeric, else lexicographic. IRIs do not
/// compare against literals.
bool compare_terms(const Term& bound, sparql::CmpOp op, const Literal& value);

}  // namespace nspm
