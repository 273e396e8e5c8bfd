#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nspm/dataset.hpp"

namespace nspm {

/// The four corpus split policies: (a) random 80/10/10, (b) vocabulary
/// closure between train and test, (c) closure plus a minimum train
/// frequency for content tokens, (d) compositional hold-out of depth-2
/// property chains.
struct SplitPolicy {
    enum class Kind { random, vocab_closed, freq_threshold, compositional } kind = Kind::random;
    int freq_min = 3;            // (c): content tokens in test appear >= freq_min times in train
    double holdout_frac = 0.10;  // (d): fraction of depth-2 chains held out
    /// (d): explicit held-out chains (absolute IRIs, outermost first);
    /// empty means seeded automatic selection.
    std::vector<std::vector<std::string>> holdout_chains;

    static const char* kind_name(Kind k);
    char table_letter() const;  // a, b, c, d
};

struct Splits {
    Dataset train, valid, test;
    SplitPolicy policy;
    std::uint64_t seed = 0;

    // Audit counters for the manifest.
    int moved_to_train = 0;    // (b, c): closure moves
    int dropped_from_test = 0; // (c): frequency violations
    std::vector<std::vector<std::string>> held_out_chains;  // (d)
};

/// Partitions the dataset under the policy. Same seed and inputs give
/// byte-identical splits. Throws TooSmall (< 10 pairs) and
/// NoHoldoutAvailable (no feasible compositional hold-out).
Splits split(const Dataset& d, const SplitPolicy& policy, std::uint64_t seed,
             const PrefixTable& prefixes = PrefixTable::defaults());

}  // namespace nspm
