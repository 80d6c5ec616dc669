#include "capeval/text_prep.hpp"

namespace capeval {

Caption normalize(std::string_view raw_text) {
  Caption caption;
  caption.raw_text.assign(raw_text);

  std::string current;
  auto flush = [&caption, &current] {
    if (!current.empty()) {
      caption.tokens.push_back(current);
      current.clear();
    }
  };

  for (char ch : raw_text) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    if ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9')) {
      current.push_back(ch);
    } else if (ch != '\'') {
      // apostrophes join their neighbours ("it's" -> "its"); everything
      // else outside [a-z0-9] separates tokens
      flush();
    }
  }
  flush();
  return caption;
}

int NGramProfile::total(int order) const {
  if (order < 1 || order > max_order) return 0;
  int sum = 0;
  for (const auto& [gram, count] : counts[order - 1]) sum += count;
  return sum;
}

NGramProfile ngram_profile(const Caption& caption, int max_order,
                           bool stemmed) {
  NGramProfile profile;
  profile.max_order = max_order;
  profile.counts.resize(static_cast<std::size_t>(max_order));

  std::vector<std::string> tokens = caption.tokens;
  if (stemmed)
    for (std::string& token : tokens) token = stem(token);

  const std::size_t len = tokens.size();
  for (int order = 1; order <= max_order; ++order) {
    const auto n = static_cast<std::size_t>(order);
    if (len < n) break;
    auto& bag = profile.counts[n - 1];
    for (std::size_t i = 0; i + n <= len; ++i) {
      std::string gram = tokens[i];
      for (std::size_t j = 1; j < n; ++j) {
        gram += ' ';
        gram += tokens[i + j];
      }
      ++bag[gram];
    }
  }
  return profile;
}

}  // namespace capeval
