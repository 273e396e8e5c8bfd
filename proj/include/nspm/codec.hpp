#pragma once

#include <string>
#include <vector>

#include "nspm/rdf.hpp"
#include "nspm/sparql.hpp"

namespace nspm::sparql {

/// Flat token sequence over the codec alphabet, one query per sequence.
using TokenSeq = std::vector<std::string>;

std::string join_tokens(const TokenSeq& tokens);
TokenSeq split_tokens(const std::string& line);

/// Deterministic, invertible encoding of a fragment query:
///   keywords lowercased; { } ( ) . as brack_open/brack_close/par_open/
///   par_close/sep_dot; ?x as var_x; < > = as math_lt/math_gt/math_eq;
///   IRIs as prefix_local (e.g. dbo_birthDate); literals as lit_<escaped>
///   with space -> '_' and '_' -> '__'; slots as plh_<id>; LIMIT/OFFSET
///   integers as bare digit tokens.
/// Throws UnsupportedFeature / UnprefixableIri.
TokenSeq encode(const Query& q, const PrefixTable& prefixes);

/// Inverse of encode on valid sequences; single left-to-right pass.
/// Malformed input raises DecodeError(position, expected-class) and never
/// aborts the process: downstream evaluation counts it as a failed
/// translation.
Query decode(const TokenSeq& tokens, const PrefixTable& prefixes);

/// Token classification used for split policies and entity masking.
enum class TokenClass { keyword, structural, variable, literal, iri, slot, integer, unknown };
TokenClass classify_token(const std::string& token, const PrefixTable& prefixes);

}  // namespace nspm::sparql
