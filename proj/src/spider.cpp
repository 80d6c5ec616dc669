#include "capeval/spider.hpp"

#include <algorithm>

#include "capeval/errors.hpp"

namespace capeval {

namespace {

const std::optional<TupleSet> kNoAnnotation;

const std::optional<TupleSet>& annotation_at(
    const std::vector<std::optional<TupleSet>>& annotations, std::size_t i) {
  return i < annotations.size() ? annotations[i] : kNoAnnotation;
}

}  // namespace

TupleSet resolve_tuples(const Caption& caption,
                        const std::optional<TupleSet>& annotated,
                        const Lexicon& lexicon) {
  if (annotated) return *annotated;
  return extract_tuples(caption, lexicon);
}

TupleSet merged_reference_tuples(const EvalItem& item, const Lexicon& lexicon) {
  TupleSet merged;
  for (std::size_t i = 0; i < item.references.size(); ++i) {
    const TupleSet tuples = resolve_tuples(
        item.references[i], annotation_at(item.reference_tuples, i), lexicon);
    merged.insert(tuples.begin(), tuples.end());
  }
  return merged;
}

SpiderScore spider(const Caption& candidate, const TupleSet& candidate_tuples,
                   const std::vector<Caption>& references,
                   const TupleSet& reference_tuples, const IdfTable& idf,
                   const CiderParams& params) {
  SpiderScore score;
  score.cider_d = cider_d(candidate, references, idf, params);
  score.spice = spice_fscore(candidate_tuples, reference_tuples);
  score.spider = (score.cider_d + score.spice) / 2.0;
  return score;
}

SpiderScore spider(const Caption& candidate,
                   const std::vector<Caption>& references, const IdfTable& idf,
                   const CiderParams& params, const Lexicon& lexicon) {
  TupleSet reference_tuples;
  for (const Caption& reference : references) {
    const TupleSet tuples = extract_tuples(reference, lexicon);
    reference_tuples.insert(tuples.begin(), tuples.end());
  }
  return spider(candidate, extract_tuples(candidate, lexicon), references,
                reference_tuples, idf, params);
}

SpiderMaxResult spider_max(const EvalItem& item, const IdfTable& idf,
                           const CiderParams& params, std::size_t top_k,
                           const Lexicon& lexicon) {
  if (item.candidates.empty()) throw NoCandidates(item.item_id);
  if (top_k < 1 || top_k > item.candidates.size())
    throw BadTopK(top_k, item.candidates.size());

  const TupleSet reference_tuples = merged_reference_tuples(item, lexicon);
  SpiderMaxResult best;
  for (std::size_t i = 0; i < top_k; ++i) {
    const TupleSet candidate_tuples = resolve_tuples(
        item.candidates[i], annotation_at(item.candidate_tuples, i), lexicon);
    const SpiderScore score =
        spider(item.candidates[i], candidate_tuples, item.references,
               reference_tuples, idf, params);
    if (i == 0 || score.spider > best.score) {
      best.score = score.spider;
      best.argmax_index = i;
    }
  }
  return best;
}

CorpusSpiderMax corpus_spider_max(const std::vector<EvalItem>& items,
                                  const CiderParams& params, std::size_t top_k,
                                  const Lexicon& lexicon) {
  if (items.empty()) throw EmptyCorpus();

  std::size_t min_candidates = items.front().candidates.size();
  std::vector<std::vector<Caption>> corpus_references;
  corpus_references.reserve(items.size());
  for (const EvalItem& item : items) {
    if (item.candidates.empty()) throw NoCandidates(item.item_id);
    if (item.references.empty()) throw NoReferences(item.item_id);
    min_candidates = std::min(min_candidates, item.candidates.size());
    corpus_references.push_back(item.references);
  }
  if (top_k < 1) throw BadTopK(top_k, min_candidates);
  for (const EvalItem& item : items) {
    if (item.candidates.size() < top_k)
      throw RaggedCandidates(item.item_id, item.candidates.size(), top_k);
  }

  const IdfTable idf = build_idf(corpus_references, params.max_order, false);

  CorpusSpiderMax result;
  result.per_item.reserve(items.size());
  result.per_k_curve.assign(top_k, 0.0);
  for (const EvalItem& item : items) {
    const TupleSet reference_tuples = merged_reference_tuples(item, lexicon);
    double running = 0.0;
    for (std::size_t k = 0; k < top_k; ++k) {
      const TupleSet candidate_tuples = resolve_tuples(
          item.candidates[k], annotation_at(item.candidate_tuples, k), lexicon);
      const SpiderScore score =
          spider(item.candidates[k], candidate_tuples, item.references,
                 reference_tuples, idf, params);
      running = (k == 0) ? score.spider : std::max(running, score.spider);
      result.per_k_curve[k] += running;
    }
    result.per_item.push_back(running);
  }
  const auto count = static_cast<double>(items.size());
  for (double& mean : result.per_k_curve) mean /= count;
  result.mean = result.per_k_curve.back();
  return result;
}

}  // namespace capeval
