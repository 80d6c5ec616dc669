// Porter's 1980 suffix-stripping algorithm. Within each rule block only the
// longest matching suffix is attempted; if its condition fails, the block is
// done (shorter suffixes are not retried).
#include "capeval/text_prep.hpp"

#include <cstddef>
#include <iterator>

namespace capeval {
namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      // y is a vowel exactly when preceded by a consonant
      return i == 0 || !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in the [C](VC){m}[V] decomposition of the stem.
int measure(const std::string& w) {
  const std::size_t n = w.size();
  std::size_t i = 0;
  while (i < n && is_consonant(w, i)) ++i;
  int m = 0;
  while (i < n) {
    while (i < n && !is_consonant(w, i)) ++i;
    if (i == n) break;
    ++m;
    while (i < n && is_consonant(w, i)) ++i;
  }
  return m;
}

bool has_vowel(const std::string& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(const std::string& w) {
  const std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: ends consonant-vowel-consonant with the final consonant not w, x or y.
bool ends_cvc(const std::string& w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) ||
      !is_consonant(w, n - 1))
    return false;
  const char last = w[n - 1];
  return last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

std::string drop(const std::string& w, std::size_t chars) {
  return w.substr(0, w.size() - chars);
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

constexpr Rule kStep2[] = {
    {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
    {"biliti", "ble"},  {"entli", "ent"},   {"ousli", "ous"},
    {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
    {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
    {"ator", "ate"},    {"eli", "e"},
};

constexpr Rule kStep3[] = {
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ness", ""},  {"ful", ""},
};

constexpr std::string_view kStep4[] = {
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
    "ate",   "iti",  "ous",  "ive",  "ize",  "ion",  "al",  "er",  "ic",
    "ou",
};

// Steps 2 and 3: replace the longest matching suffix when measure(stem) > 0.
std::string map_suffix(const std::string& w, const Rule* rules,
                       std::size_t count) {
  const Rule* best = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    if (!ends_with(w, rules[i].suffix)) continue;
    if (!best || rules[i].suffix.size() > best->suffix.size())
      best = &rules[i];
  }
  if (!best) return w;
  std::string base = drop(w, best->suffix.size());
  if (measure(base) <= 0) return w;
  base += best->replacement;
  return base;
}

std::string step_1a(std::string w) {
  if (ends_with(w, "sses") || ends_with(w, "ies")) return drop(w, 2);
  if (ends_with(w, "ss")) return w;
  if (ends_with(w, "s")) return drop(w, 1);
  return w;
}

std::string step_1b(std::string w) {
  if (ends_with(w, "eed")) {
    if (measure(drop(w, 3)) > 0) return drop(w, 1);
    return w;
  }
  std::string base;
  if (ends_with(w, "ed") && has_vowel(drop(w, 2)))
    base = drop(w, 2);
  else if (ends_with(w, "ing") && has_vowel(drop(w, 3)))
    base = drop(w, 3);
  else
    return w;

  if (ends_with(base, "at") || ends_with(base, "bl") || ends_with(base, "iz"))
    return base + 'e';
  if (ends_double_consonant(base)) {
    const char last = base.back();
    if (last != 'l' && last != 's' && last != 'z') base.pop_back();
    return base;
  }
  if (measure(base) == 1 && ends_cvc(base)) return base + 'e';
  return base;
}

std::string step_1c(std::string w) {
  if (ends_with(w, "y") && has_vowel(drop(w, 1))) w.back() = 'i';
  return w;
}

std::string step_4(const std::string& w) {
  std::string_view best;
  for (std::string_view suffix : kStep4) {
    if (ends_with(w, suffix) && suffix.size() > best.size()) best = suffix;
  }
  if (best.empty()) return w;
  std::string base = drop(w, best.size());
  if (measure(base) <= 1) return w;
  if (best == "ion" && !(ends_with(base, "s") || ends_with(base, "t")))
    return w;
  return base;
}

std::string step_5a(std::string w) {
  if (!ends_with(w, "e")) return w;
  std::string base = drop(w, 1);
  const int m = measure(base);
  if (m > 1 || (m == 1 && !ends_cvc(base))) return base;
  return w;
}

std::string step_5b(std::string w) {
  if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l')
    w.pop_back();
  return w;
}

}  // namespace

std::string stem(const std::string& token) {
  if (token.size() <= 2) return token;
  std::string w = step_1a(token);
  w = step_1b(std::move(w));
  w = step_1c(std::move(w));
  w = map_suffix(w, kStep2, std::size(kStep2));
  w = map_suffix(w, kStep3, std::size(kStep3));
  w = step_4(w);
  w = step_5a(std::move(w));
  return step_5b(std::move(w));
}

}  // namespace capeval
