#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace capeval {

// A caption as every metric sees it: the original text, its normalized
// token sequence and, when the generating model supplied one, the sentence
// likelihood in [0, 1].
struct Caption {
  std::string raw_text;
  std::vector<std::string> tokens;
  std::optional<double> likelihood;

  std::size_t length() const { return tokens.size(); }
};

// Lowercases and splits on whitespace. Apostrophes are deleted in place
// ("it's" -> "its"); every other character outside [a-z0-9] acts as a
// separator ("tin-roof" -> "tin", "roof"). Empty input yields no tokens.
Caption normalize(std::string_view raw_text);

// Porter stemming of one lowercase word. Used by plain CIDEr only.
std::string stem(const std::string& token);

// Contiguous n-gram counts for n = 1..max_order. Grams are space-joined
// token runs; counts[n - 1] holds order n.
struct NGramProfile {
  int max_order = 0;
  std::vector<std::unordered_map<std::string, int>> counts;

  // Sum of counts at `order`; max(0, len - order + 1) for an intact caption.
  int total(int order) const;
};

NGramProfile ngram_profile(const Caption& caption, int max_order, bool stemmed);

}  // namespace capeval
