#include "nspm/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nspm {

ScoreTable load_scores(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open score file: " + path.string());
    ScoreTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("expected iri<TAB>score", line_no);
        std::string iri = line.substr(0, tab);
        std::string score_text = line.substr(tab + 1);
        try {
            std::size_t consumed = 0;
            double score = std::stod(score_text, &consumed);
            if (consumed != score_text.size() || !std::isfinite(score) || score < 0)
                throw std::invalid_argument("bad");
            table.set(iri, score);
        } catch (const std::exception&) {
            throw ParseError("non-numeric or negative score '" + score_text + "'", line_no);
        }
    }
    return table;
}

double route_score(const std::vector<Iri>& route, const ScoreTable& scores, double damping,
                   double missing_score) {
    double total = 0.0;
    double weight = 1.0;
    for (const Iri& entity : route) {
        total += weight * scores.get(entity.value).value_or(missing_score);
        weight *= damping;
    }
    return total;
}

RankedTemplate rank_template(const Template& t, const Graph& graph, const ScoreTable& scores,
                             const RankerConfig& cfg) {
    auto instantiations = enumerate_instantiations(t, graph, cfg.sample_size);
    if (instantiations.empty())
        throw Unsatisfiable("template " + t.id + " has no instantiation in the graph");
    double total = 0.0;
    for (const auto& inst : instantiations)
        total += route_score(inst.route, scores, cfg.damping, cfg.missing_score);
    RankedTemplate out;
    out.template_id = t.id;
    out.samples_used = static_cast<int>(instantiations.size());
    out.rank = total / static_cast<double>(instantiations.size());
    return out;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    auto n = values.size();
    std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (idx < 1) idx = 1;
    if (idx > n) idx = n;
    return values[idx - 1];
}

std::vector<std::string> filter_templates(const std::vector<RankedTemplate>& ranked,
                                          const std::map<std::string, std::string>& class_of_template,
                                          const RankerConfig& cfg) {
    std::map<std::string, std::vector<double>> ranks_by_class;
    for (const auto& r : ranked) {
        auto it = class_of_template.find(r.template_id);
        std::string cls = it == class_of_template.end() ? "" : it->second;
        ranks_by_class[cls].push_back(r.rank);
    }
    std::map<std::string, double> threshold;
    for (auto& [cls, ranks] : ranks_by_class)
        threshold[cls] = nearest_rank_quantile(ranks, cfg.threshold_quantile);

    std::set<std::string> kept;
    std::map<std::string, std::pair<double, std::string>> best_per_class;
    for (const auto& r : ranked) {
        auto it = class_of_template.find(r.template_id);
        std::string cls = it == class_of_template.end() ? "" : it->second;
        if (r.rank >= threshold[cls]) kept.insert(r.template_id);
        auto bit = best_per_class.find(cls);
        if (bit == best_per_class.end() || r.rank > bit->second.first)
            best_per_class[cls] = {r.rank, r.template_id};
    }
    for (const auto& [cls, best] : best_per_class) kept.insert(best.second);  // >= 1 per class
    return {kept.begin(), kept.end()};
}

std::string ranked_to_tsv(const std::vector<RankedTemplate>& ranked,
                          const std::vector<std::string>& kept_ids) {
    std::set<std::string> kept(kept_ids.begin(), kept_ids.end());
    std::vector<RankedTemplate> sorted = ranked;
    std::sort(sorted.begin(), sorted.end(),
              [](const RankedTemplate& a, const RankedTemplate& b) {
                  return a.template_id < b.template_id;
              });
    std::string out = "id\trank\tkept\n";
    for (const auto& r : sorted) {
        std::ostringstream rank_text;
        rank_text.precision(12);
        rank_text << r.rank;
        out += r.template_id + "\t" + rank_text.str() + "\t" + (kept.count(r.template_id) ? "1" : "0") +
               "\n";
    }
    return out;
}

}  // namespace nspm
