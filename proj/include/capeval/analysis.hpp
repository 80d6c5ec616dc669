#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capeval/spider.hpp"

namespace capeval {

// Per-item scoring detail consumed by the diagnostic computations. The
// three per-candidate vectors have equal length >= 1; tfidf_mass is the
// sum of the candidate's TF-IDF weights over all orders.
struct ScoredItem {
  std::string item_id;
  std::vector<std::optional<double>> likelihoods;
  std::vector<SpiderScore> scores;
  std::vector<double> tfidf_mass;
};

// Fraction of items whose argmax-likelihood candidate is also the
// argmax-SPIDEr candidate (ties broken by smallest index on both sides).
double agreement_accuracy(const std::vector<ScoredItem>& items);

// Pearson correlation over all (likelihood, SPIDEr) pairs pooled across
// the corpus.
double likelihood_score_correlation(const std::vector<ScoredItem>& items);

// Count of items per argmax-SPIDEr candidate index.
std::map<std::size_t, std::size_t> best_beam_histogram(
    const std::vector<ScoredItem>& items);

// Per item, the TF-IDF mass delta and SPIDEr delta between the
// argmax-SPIDEr and argmax-likelihood candidates; Pearson correlation of
// the per-item delta pairs.
double tfidf_delta_correlation(const std::vector<ScoredItem>& items);

}  // namespace capeval
