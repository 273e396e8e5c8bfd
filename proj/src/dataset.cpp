#include "nspm/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nspm/query_eval.hpp"

namespace nspm {

std::vector<std::string> tokenize_nl(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string raw;
    auto is_punct = [](char c) {
        return std::ispunct(static_cast<unsigned char>(c)) && c != '<' && c != '>';
    };
    while (in >> raw) {
        std::size_t b = 0, e = raw.size();
        while (b < e && is_punct(raw[b])) ++b;
        while (e > b && is_punct(raw[e - 1])) --e;
        if (b == e) continue;
        std::string tok = raw.substr(b, e - b);
        std::transform(tok.begin(), tok.end(), tok.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        out.push_back(std::move(tok));
    }
    return out;
}

LabelFn graph_labels(const Graph& g) {
    auto labels = std::make_shared<std::unordered_map<std::string, std::string>>();
    for (const Triple& t : g.triples())
        if (t.predicate == vocab_iri::rdfs_label && !is_iri(t.object))
            labels->emplace(t.subject.value, as_literal(t.object).lexical);
    return [labels](const Iri& iri) {
        auto it = labels->find(iri.value);
        return it == labels->end() ? local_name_label(iri) : it->second;
    };
}

namespace {

std::string render_fill(const Term& t, const LabelFn& labels) {
    if (is_iri(t)) return labels(as_iri(t));
    return as_literal(t).lexical;
}

}  // namespace

std::vector<QAPair> instantiate(const Template& t, const Graph& graph, long max_per_template,
                                const LabelFn& labels, const PrefixTable& prefixes) {
    if (max_per_template < 1) throw ConfigError("max_per_template must be >= 1");
    std::vector<QAPair> out;
    for (const Instantiation& inst : enumerate_instantiations(t, graph, max_per_template)) {
        QAPair pair;
        pair.template_id = t.id;
        pair.key = t.key;
        for (const std::string& tok : t.nl_pattern) {
            if (tok.size() > 2 && tok.front() == '<' && tok.back() == '>') {
                auto it = inst.fills.find(tok.substr(1, tok.size() - 2));
                if (it != inst.fills.end()) {
                    auto words = tokenize_nl(render_fill(it->second, labels));
                    pair.nl.insert(pair.nl.end(), words.begin(), words.end());
                    continue;
                }
            }
            pair.nl.push_back(tok);
        }
        pair.ql = sparql::encode(inst.query, prefixes);  // generated queries must encode
        for (const auto& slot : t.slots) {
            auto it = inst.fills.find(slot.id);
            if (it != inst.fills.end() && is_iri(it->second)) pair.entities.push_back(as_iri(it->second));
        }
        out.push_back(std::move(pair));
    }
    return out;
}

Dataset build_dataset(const std::vector<Template>& templates, const Graph& graph,
                      const DatasetConfig& cfg) {
    Dataset d;
    std::set<std::string> seen;
    for (const Template& t : templates) {
        for (QAPair& p : instantiate(t, graph, cfg.max_per_template, cfg.labels, cfg.prefixes)) {
            std::string key = sparql::join_tokens(p.nl) + "\x1e" + sparql::join_tokens(p.ql);
            if (seen.insert(key).second) d.pairs.push_back(std::move(p));
        }
    }
    if (d.pairs.empty()) throw EmptyDataset("no template produced an answerable instantiation");
    std::sort(d.pairs.begin(), d.pairs.end(), [](const QAPair& a, const QAPair& b) {
        if (a.nl != b.nl) return a.nl < b.nl;
        return a.ql < b.ql;
    });
    return d;
}

Vocabulary vocab_from_tokens(const std::vector<std::string>& tokens) {
    Vocabulary v;
    v.tokens = {"<unk>", "<s>", "</s>", "<pad>"};
    for (const auto& t : tokens)
        if (std::find(v.tokens.begin(), v.tokens.end(), t) == v.tokens.end()) v.tokens.push_back(t);
    for (int i = 0; i < static_cast<int>(v.tokens.size()); ++i) v.index[v.tokens[i]] = i;
    return v;
}

Vocabulary build_vocab(const Dataset& train, Side side, int min_count) {
    std::map<std::string, long> counts;
    for (const QAPair& p : train.pairs)
        for (const std::string& tok : (side == Side::nl ? p.nl : p.ql)) ++counts[tok];
    std::vector<std::pair<std::string, long>> items(counts.begin(), counts.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> tokens;
    for (const auto& [tok, count] : items)
        if (count >= min_count) tokens.push_back(tok);
    return vocab_from_tokens(tokens);
}

std::vector<int> to_indices(const std::vector<std::string>& tokens, const Vocabulary& v) {
    std::vector<int> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(v.lookup(t));
    return out;
}

namespace {

std::string chain_text(const CompositionKey& key) {
    std::string s;
    for (std::size_t i = 0; i < key.property_chain.size(); ++i) {
        if (i) s += ';';
        s += key.property_chain[i].value;
    }
    return s;
}

}  // namespace

void write_corpus(const Dataset& d, const std::filesystem::path& dir, const std::string& stem) {
    std::filesystem::create_directories(dir);
    std::ofstream nl(dir / (stem + ".nl"), std::ios::binary);
    std::ofstream ql(dir / (stem + ".ql"), std::ios::binary);
    std::ofstream meta(dir / (stem + ".meta.tsv"), std::ios::binary);
    if (!nl || !ql || !meta) throw IoError("cannot write corpus files under " + dir.string());
    meta << "template_id\tvariant\tproperty_chain\tentities\n";
    for (const QAPair& p : d.pairs) {
        nl << sparql::join_tokens(p.nl) << "\n";
        ql << sparql::join_tokens(p.ql) << "\n";
        meta << p.template_id << "\t" << variant_name(p.key.variant) << "\t" << chain_text(p.key)
             << "\t";
        for (std::size_t i = 0; i < p.entities.size(); ++i)
            meta << (i ? ";" : "") << p.entities[i].value;
        meta << "\n";
    }
}

Dataset read_corpus(const std::filesystem::path& dir, const std::string& stem) {
    std::ifstream nl(dir / (stem + ".nl"));
    std::ifstream ql(dir / (stem + ".ql"));
    if (!nl || !ql) throw IoError("cannot read corpus files " + (dir / stem).string() + ".{nl,ql}");
    Dataset d;
    std::string nl_line, ql_line;
    while (std::getline(nl, nl_line)) {
        if (!std::getline(ql, ql_line))
            throw ParseError("corpus files are not line-aligned", d.pairs.size() + 1);
        QAPair p;
        p.nl = sparql::split_tokens(nl_line);
        p.ql = sparql::split_tokens(ql_line);
        d.pairs.push_back(std::move(p));
    }
    std::ifstream meta(dir / (stem + ".meta.tsv"));
    if (meta) {
        std::string line;
        std::getline(meta, line);  // header
        std::size_t i = 0;
        while (std::getline(meta, line) && i < d.pairs.size()) {
            std::istringstream in(line);
            std::string id, variant, chain, entities;
            std::getline(in, id, '\t');
            std::getline(in, variant, '\t');
            std::getline(in, chain, '\t');
            std::getline(in, entities, '\t');
            QAPair& p = d.pairs[i++];
            p.template_id = id;
            if (auto v = variant_from_name(variant)) p.key.variant = *v;
            std::istringstream cs(chain);
            std::string item;
            while (std::getline(cs, item, ';'))
                if (!item.empty()) p.key.property_chain.emplace_back(item);
            std::istringstream es(entities);
            while (std::getline(es, item, ';'))
                if (!item.empty()) p.entities.emplace_back(item);
        }
    }
    return d;
}

void write_vocab(const Vocabulary& v, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write vocab file " + path.string());
    for (const auto& t : v.tokens) out << t << "\n";
}

Vocabulary read_vocab(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read vocab file " + path.string());
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) tokens.push_back(line);
    }
    if (tokens.size() < 4 || tokens[0] != "<unk>" || tokens[1] != "<s>" || tokens[2] != "</s>" ||
        tokens[3] != "<pad>")
        throw FormatError("vocab file lacks the reserved token prefix: " + path.string());
    return vocab_from_tokens({tokens.begin() + 4, tokens.end()});
}

}  // namespace nspm
