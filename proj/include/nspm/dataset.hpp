#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nspm/codec.hpp"
#include "nspm/template_engine.hpp"

namespace nspm {

/// One training example: tokenized question and encoded query.
struct QAPair {
    std::vector<std::string> nl;
    sparql::TokenSeq ql;
    std::string template_id;
    CompositionKey key;
    std::vector<Iri> entities;  // slot fillers that are IRIs

    bool operator==(const QAPair& o) const { return nl == o.nl && ql == o.ql; }
};

struct Dataset {
    std::vector<QAPair> pairs;  // duplicate-free by (nl, ql), canonical order
    std::size_t size() const { return pairs.size(); }
};

/// Lowercases, splits on whitespace and trims punctuation from token edges
/// (interior characters survive, so "15.5" and "1961-08-04" stay intact).
std::vector<std::string> tokenize_nl(const std::string& text);

using LabelFn = std::function<std::string(const Iri&)>;
LabelFn graph_labels(const Graph& g);

struct DatasetConfig {
    long max_per_template = 50;
    PrefixTable prefixes;
    LabelFn labels;
};

/// Fills slots with compatible terms in deterministic order, substitutes
/// labels into the question and terms into the query, and encodes the query.
/// Instantiations whose query has no answer in the graph are skipped.
std::vector<QAPair> instantiate(const Template& t, const Graph& graph, long max_per_template,
                                const LabelFn& labels, const PrefixTable& prefixes);

/// Union of instantiations over all templates, deduplicated by (nl, ql) and
/// sorted into canonical storage order. Throws EmptyDataset.
Dataset build_dataset(const std::vector<Template>& templates, const Graph& graph,
                      const DatasetConfig& cfg);

// ---------------------------------------------------------------------------

/// Token vocabulary with reserved entries <unk>=0, <s>=1, </s>=2, <pad>=3.
struct Vocabulary {
    static constexpr int unk = 0;
    static constexpr int bos = 1;
    static constexpr int eos = 2;
    static constexpr int pad = 3;

    std::vector<std::string> tokens;
    std::unordered_map<std::string, int> index;

    int lookup(const std::string& token) const {
        auto it = index.find(token);
        return it == index.end() ? unk : it->second;
    }
    int size() const { return static_cast<int>(tokens.size()); }
};

enum class Side { nl, ql };

/// Tokens with count >= min_count, ordered by descending frequency then
/// lexicographically, after the reserved tokens.
Vocabulary build_vocab(const Dataset& train, Side side, int min_count = 1);

Vocabulary vocab_from_tokens(const std::vector<std::string>& tokens);  // file loading

std::vector<int> to_indices(const std::vector<std::string>& tokens, const Vocabulary& v);

void write_corpus(const Dataset& d, const std::filesystem::path& dir, const std::string& stem);
Dataset read_corpus(const std::filesystem::path& dir, const std::string& stem);
void write_vocab(const Vocabulary& v, const std::filesystem::path& path);
Vocabulary read_vocab(const std::filesystem::path& path);

}  // namespace nspm
