#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "capeval/text_prep.hpp"

namespace capeval {

struct CiderParams {
  int max_order = 4;
  double sigma = 6.0;
  double scale = 10.0;
};

// Corpus-wide document frequencies. df(gram) = number of items whose
// reference set mentions the gram at least once; this is what couples one
// item's score to every other item of the corpus.
struct IdfTable {
  int max_order = 0;
  std::size_t num_items = 0;
  bool stemmed = false;
  std::vector<std::unordered_map<std::string, int>> df;

  // ln(num_items / df); 0 for grams absent from the table.
  double idf(int order, const std::string& gram) const;
};

// corpus_references: one reference list per item.
IdfTable build_idf(const std::vector<std::vector<Caption>>& corpus_references,
                   int max_order, bool stemmed);

// Sparse per-order TF-IDF weights. TF is the gram count divided by the
// caption's total gram count at that order. Zero weights are not stored.
struct TfIdfVector {
  std::vector<std::unordered_map<std::string, double>> weights;
  std::vector<double> norms;  // Euclidean norm per order

  double mass() const;  // sum of all stored weights across orders
};

TfIdfVector tfidf_vector(const NGramProfile& profile, const IdfTable& idf);

// Gaussian length penalty, in (0, 1], maximal iff lengths are equal.
double penalty(std::size_t cand_len, std::size_t ref_len, double sigma);

// CIDEr-D: clipped TF-IDF cosine per order and reference, scaled by the
// length penalty, averaged over references and orders, rescaled. The IDF
// table must have been built unstemmed.
double cider_d(const Caption& candidate, const std::vector<Caption>& references,
               const IdfTable& idf, const CiderParams& params);

// Plain CIDEr: stemmed profiles, full cosine, no penalty. The IDF table
// must have been built stemmed.
double cider(const Caption& candidate, const std::vector<Caption>& references,
             const IdfTable& idf, const CiderParams& params);

struct CorpusScore {
  std::vector<double> per_item;
  double mean = 0.0;
};

// Builds the IDF table over all items' references, then scores each item.
CorpusScore corpus_cider_d(
    const std::vector<std::pair<Caption, std::vector<Caption>>>& items,
    const CiderParams& params);

}  // namespace capeval
