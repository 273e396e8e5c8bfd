#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "nspm/template_engine.hpp"

namespace nspm {

/// Entity popularity scores (SubjectiveEye3D-style). Entities absent from
/// the table are distinct from zero-scored entities: lookups report absence
/// and the ranker substitutes its configured default.
class ScoreTable {
  public:
    void set(const std::string& iri, double score) { scores_[iri] = score; }
    std::optional<double> get(const std::string& iri) const {
        auto it = scores_.find(iri);
        return it == scores_.end() ? std::nullopt : std::optional<double>(it->second);
    }
    std::size_t size() const { return scores_.size(); }

  private:
    std::unordered_map<std::string, double> scores_;
};

struct RankerConfig {
    double damping = 0.85;
    long sample_size = 100;
    double threshold_quantile = 0.25;  // class-wise nearest-rank quantile, in [0,1)
    double missing_score = 0.0;
};

struct RankedTemplate {
    std::string template_id;
    double rank = 0.0;
    int samples_used = 0;
};

/// TSV `iri<TAB>score`, one entry per distinct IRI, last occurrence wins.
ScoreTable load_scores(const std::filesystem::path& path);

/// Damped popularity of an answer route: sum over route positions k of
/// damping^k * score(route[k]).
double route_score(const std::vector<Iri>& route, const ScoreTable& scores, double damping,
                   double missing_score = 0.0);

/// Mean route score over up to cfg.sample_size instantiations, sampled
/// deterministically in lexicographic fill order. Throws Unsatisfiable.
RankedTemplate rank_template(const Template& t, const Graph& graph, const ScoreTable& scores,
                             const RankerConfig& cfg);

/// Class-wise filtering: within each class, keeps templates whose rank is
/// at least the nearest-rank q-quantile of the class's ranks. At least one
/// template per class survives. Returns kept ids, sorted.
std::vector<std::string> filter_templates(const std::vector<RankedTemplate>& ranked,
                                          const std::map<std::string, std::string>& class_of_template,
                                          const RankerConfig& cfg);

/// Nearest-rank quantile of an unsorted sample (q in [0,1)).
double nearest_rank_quantile(std::vector<double> values, double q);

std::string ranked_to_tsv(const std::vector<RankedTemplate>& ranked,
                          const std::vector<std::string>& kept_ids);

}  // namespace nspm
