#pragma once

// Deterministic random corpora for property tests: small vocabulary so
// n-grams collide across items, candidate likelihoods always present.

#include <random>
#include <string>
#include <vector>

#include "capeval/spice.hpp"
#include "capeval/spider.hpp"
#include "capeval/text_prep.hpp"

namespace testsupport {

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "rain", "roof",  "goat",  "dog",   "car", "bell",  // nouns
      "falls", "barks", "rings",                          // verbs
      "heavy", "tin",   "loud",                           // adjectives
      "the",   "a",     "on",    "and",                   // unclassified
  };
  return words;
}

inline capeval::Lexicon test_lexicon() {
  capeval::Lexicon lexicon;
  for (const char* noun : {"rain", "roof", "goat", "dog", "car", "bell"})
    lexicon.insert(noun, capeval::WordClass::Noun);
  for (const char* verb : {"falls", "barks", "rings"})
    lexicon.insert(verb, capeval::WordClass::Verb);
  for (const char* adj : {"heavy", "tin", "loud"})
    lexicon.insert(adj, capeval::WordClass::Adjective);
  return lexicon;
}

inline capeval::Caption random_caption(std::mt19937& rng,
                                       std::size_t min_tokens,
                                       std::size_t max_tokens,
                                       bool with_likelihood) {
  std::uniform_int_distribution<std::size_t> len_dist(min_tokens, max_tokens);
  std::uniform_int_distribution<std::size_t> word_dist(
      0, vocabulary().size() - 1);
  std::string text;
  const std::size_t len = len_dist(rng);
  for (std::size_t i = 0; i < len; ++i) {
    if (i) text += ' ';
    text += vocabulary()[word_dist(rng)];
  }
  capeval::Caption caption = capeval::normalize(text);
  if (with_likelihood) {
    std::uniform_real_distribution<double> p_dist(0.0, 1.0);
    caption.likelihood = p_dist(rng);
  }
  return caption;
}

// Up to 5 items, captions up to 8 tokens; candidates may be empty strings.
inline std::vector<capeval::EvalItem> random_corpus(
    std::mt19937& rng, std::size_t min_candidates = 1) {
  std::uniform_int_distribution<std::size_t> item_dist(1, 5);
  std::uniform_int_distribution<std::size_t> cand_dist(min_candidates, 4);
  std::uniform_int_distribution<std::size_t> ref_dist(1, 3);

  std::vector<capeval::EvalItem> items;
  const std::size_t num_items = item_dist(rng);
  items.reserve(num_items);
  for (std::size_t i = 0; i < num_items; ++i) {
    capeval::EvalItem item;
    item.item_id = "item-" + std::to_string(i);
    const std::size_t num_candidates = cand_dist(rng);
    for (std::size_t c = 0; c < num_candidates; ++c)
      item.candidates.push_back(random_caption(rng, 0, 8, true));
    const std::size_t num_references = ref_dist(rng);
    for (std::size_t r = 0; r < num_references; ++r)
      item.references.push_back(random_caption(rng, 1, 8, false));
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace testsupport
