#include "capeval/analysis.hpp"

#include <cmath>

#include "capeval/errors.hpp"

namespace capeval {
namespace {

std::vector<double> require_likelihoods(const ScoredItem& item) {
  if (item.likelihoods.size() != item.scores.size())
    throw MissingLikelihood(item.item_id);
  std::vector<double> out;
  out.reserve(item.likelihoods.size());
  for (const auto& likelihood : item.likelihoods) {
    if (!likelihood) throw MissingLikelihood(item.item_id);
    out.push_back(*likelihood);
  }
  return out;
}

std::vector<double> spider_values(const ScoredItem& item) {
  std::vector<double> out;
  out.reserve(item.scores.size());
  for (const SpiderScore& score : item.scores) out.push_back(score.spider);
  return out;
}

// Smallest index attaining the maximum.
std::size_t argmax(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateVariance();
  return sxy / std::sqrt(sxx * syy);
}

void check_item(const ScoredItem& item) {
  if (item.scores.empty()) throw NoCandidates(item.item_id);
}

}  // namespace

double agreement_accuracy(const std::vector<ScoredItem>& items) {
  if (items.empty()) throw EmptyCorpus();
  std::size_t hits = 0;
  for (const ScoredItem& item : items) {
    check_item(item);
    if (argmax(require_likelihoods(item)) == argmax(spider_values(item)))
      ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(items.size());
}

double likelihood_score_correlation(const std::vector<ScoredItem>& items) {
  if (items.empty()) throw EmptyCorpus();
  std::vector<double> pooled_p, pooled_s;
  for (const ScoredItem& item : items) {
    check_item(item);
    const std::vector<double> likelihoods = require_likelihoods(item);
    pooled_p.insert(pooled_p.end(), likelihoods.begin(), likelihoods.end());
    for (const SpiderScore& score : item.scores)
      pooled_s.push_back(score.spider);
  }
  return pearson(pooled_p, pooled_s);
}

std::map<std::size_t, std::size_t> best_beam_histogram(
    const std::vector<ScoredItem>& items) {
  if (items.empty()) throw EmptyCorpus();
  std::map<std::size_t, std::size_t> histogram;
  for (const ScoredItem& item : items) {
    check_item(item);
    ++histogram[argmax(spider_values(item))];
  }
  return histogram;
}

double tfidf_delta_correlation(const std::vector<ScoredItem>& items) {
  if (items.empty()) throw EmptyCorpus();
  std::vector<double> delta_mass, delta_spider;
  delta_mass.reserve(items.size());
  delta_spider.reserve(items.size());
  for (const ScoredItem& item : items) {
    check_item(item);
    const std::vector<double> spiders = spider_values(item);
    const std::size_t by_spider = argmax(spiders);
    const std::size_t by_likelihood = argmax(require_likelihoods(item));
    delta_mass.push_back(item.tfidf_mass[by_spider] -
                         item.tfidf_mass[by_likelihood]);
    delta_spider.push_back(spiders[by_spider] - spiders[by_likelihood]);
  }
  return pearson(delta_mass, delta_spider);
}

}  // namespace capeval
