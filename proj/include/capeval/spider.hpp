#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "capeval/cider.hpp"
#include "capeval/spice.hpp"
#include "capeval/text_prep.hpp"

namespace capeval {

// One clip's evaluation record. Candidate order is the generation (beam)
// order and is preserved end to end. The tuple vectors are either empty or
// aligned with their caption lists; an entry is nullopt when no annotation
// was supplied and tuples come from the extractor.
struct EvalItem {
  std::string item_id;
  std::vector<Caption> candidates;
  std::vector<Caption> references;
  std::vector<std::optional<TupleSet>> candidate_tuples;
  std::vector<std::optional<TupleSet>> reference_tuples;
};

struct SpiderScore {
  double cider_d = 0.0;  // in [0, 10]
  double spice = 0.0;    // in [0, 1]
  double spider = 0.0;   // (cider_d + spice) / 2, in [0, 5.5]
};

// Annotation wins over extraction.
TupleSet resolve_tuples(const Caption& caption,
                        const std::optional<TupleSet>& annotated,
                        const Lexicon& lexicon);

// Union of all reference tuple sets of the item.
TupleSet merged_reference_tuples(const EvalItem& item, const Lexicon& lexicon);

SpiderScore spider(const Caption& candidate, const TupleSet& candidate_tuples,
                   const std::vector<Caption>& references,
                   const TupleSet& reference_tuples, const IdfTable& idf,
                   const CiderParams& params);

// Convenience: tuples for candidate and references via the extractor.
SpiderScore spider(const Caption& candidate,
                   const std::vector<Caption>& references, const IdfTable& idf,
                   const CiderParams& params, const Lexicon& lexicon);

struct SpiderMaxResult {
  double score = 0.0;
  std::size_t argmax_index = 0;  // smallest index attaining the max
};

// Max of spider() over the first top_k candidates in stored order.
SpiderMaxResult spider_max(const EvalItem& item, const IdfTable& idf,
                           const CiderParams& params, std::size_t top_k,
                           const Lexicon& lexicon);

struct CorpusSpiderMax {
  std::vector<double> per_item;     // spider_max at top_k, input order
  double mean = 0.0;                // mean of per_item
  std::vector<double> per_k_curve;  // [k-1] = corpus mean with top_k = k
};

// Builds the IDF table over all items' references, then sweeps k = 1..top_k.
CorpusSpiderMax corpus_spider_max(const std::vector<EvalItem>& items,
                                  const CiderParams& params, std::size_t top_k,
                                  const Lexicon& lexicon);

}  // namespace capeval
