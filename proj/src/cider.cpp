#include "capeval/cider.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "capeval/errors.hpp"

namespace capeval {

double IdfTable::idf(int order, const std::string& gram) const {
  if (order < 1 || order > max_order) return 0.0;
  const auto& table = df[order - 1];
  const auto it = table.find(gram);
  if (it == table.end()) return 0.0;  // unseen: treated as df == num_items
  return std::log(static_cast<double>(num_items) / it->second);
}

IdfTable build_idf(const std::vector<std::vector<Caption>>& corpus_references,
                   int max_order, bool stemmed) {
  if (corpus_references.empty()) throw EmptyCorpus();
  IdfTable idf;
  idf.max_order = max_order;
  idf.num_items = corpus_references.size();
  idf.stemmed = stemmed;
  idf.df.resize(static_cast<std::size_t>(max_order));

  std::vector<std::unordered_set<std::string>> seen(
      static_cast<std::size_t>(max_order));
  for (const auto& references : corpus_references) {
    if (references.empty()) throw NoReferences();
    for (auto& order_seen : seen) order_seen.clear();
    for (const Caption& reference : references) {
      const NGramProfile profile = ngram_profile(reference, max_order, stemmed);
      for (int order = 0; order < max_order; ++order)
        for (const auto& [gram, count] : profile.counts[order])
          seen[order].insert(gram);
    }
    for (int order = 0; order < max_order; ++order)
      for (const std::string& gram : seen[order]) ++idf.df[order][gram];
  }
  return idf;
}

double TfIdfVector::mass() const {
  double sum = 0.0;
  for (const auto& order_weights : weights)
    for (const auto& [gram, weight] : order_weights) sum += weight;
  return sum;
}

TfIdfVector tfidf_vector(const NGramProfile& profile, const IdfTable& idf) {
  TfIdfVector vec;
  vec.weights.resize(static_cast<std::size_t>(profile.max_order));
  vec.norms.assign(static_cast<std::size_t>(profile.max_order), 0.0);
  for (int order = 1; order <= profile.max_order; ++order) {
    const int total = profile.total(order);
    if (total == 0) continue;
    auto& out = vec.weights[order - 1];
    double sq = 0.0;
    for (const auto& [gram, count] : profile.counts[order - 1]) {
      const double weight =
          (static_cast<double>(count) / total) * idf.idf(order, gram);
      if (weight == 0.0) continue;
      out.emplace(gram, weight);
      sq += weight * weight;
    }
    vec.norms[order - 1] = std::sqrt(sq);
  }
  return vec;
}

double penalty(std::size_t cand_len, std::size_t ref_len, double sigma) {
  const double diff =
      static_cast<double>(cand_len) - static_cast<double>(ref_len);
  return std::exp(-(diff * diff) / (2.0 * sigma * sigma));
}

namespace {

// Shared consensus loop. CIDEr-D clips the candidate weight against the
// reference's and damps length mismatches; plain CIDEr takes the bare
// cosine over stemmed profiles.
double consensus(const Caption& candidate,
                 const std::vector<Caption>& references, const IdfTable& idf,
                 const CiderParams& params, bool d_variant) {
  if (references.empty()) throw NoReferences();
  const bool stemmed = !d_variant;
  const TfIdfVector cand =
      tfidf_vector(ngram_profile(candidate, params.max_order, stemmed), idf);

  double acc = 0.0;
  for (const Caption& reference : references) {
    const TfIdfVector ref = tfidf_vector(
        ngram_profile(reference, params.max_order, stemmed), idf);
    const double damp =
        d_variant ? penalty(candidate.length(), reference.length(), params.sigma)
                  : 1.0;
    for (int order = 0; order < params.max_order; ++order) {
      const double denom = cand.norms[order] * ref.norms[order];
      if (denom == 0.0) continue;
      const auto& ref_weights = ref.weights[order];
      double dot = 0.0;
      for (const auto& [gram, cand_weight] : cand.weights[order]) {
        const auto it = ref_weights.find(gram);
        if (it == ref_weights.end()) continue;
        dot += (d_variant ? std::min(cand_weight, it->second) : cand_weight) *
               it->second;
      }
      acc += damp * dot / denom;
    }
  }
  return params.scale * acc /
         (params.max_order * static_cast<double>(references.size()));
}

}  // namespace

double cider_d(const Caption& candidate, const std::vector<Caption>& references,
               const IdfTable& idf, const CiderParams& params) {
  return consensus(candidate, references, idf, params, /*d_variant=*/true);
}

double cider(const Caption& candidate, const std::vector<Caption>& references,
             const IdfTable& idf, const CiderParams& params) {
  return consensus(candidate, references, idf, params, /*d_variant=*/false);
}

CorpusScore corpus_cider_d(
    const std::vector<std::pair<Caption, std::vector<Caption>>>& items,
    const CiderParams& params) {
  if (items.empty()) throw EmptyCorpus();
  std::vector<std::vector<Caption>> corpus_references;
  corpus_references.reserve(items.size());
  for (const auto& [candidate, references] : items)
    corpus_references.push_back(references);
  const IdfTable idf = build_idf(corpus_references, params.max_order, false);

  CorpusScore score;
  score.per_item.reserve(items.size());
  double sum = 0.0;
  for (const auto& [candidate, references] : items) {
    const double value = cider_d(candidate, references, idf, params);
    score.per_item.push_back(value);
    sum += value;
  }
  score.mean = sum / static_cast<double>(items.size());
  return score;
}

}  // namespace capeval
