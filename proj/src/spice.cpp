#include "capeval/spice.hpp"

#include <fstream>
#include <utility>

#include "capeval/errors.hpp"

namespace capeval {

SemanticTuple object_tuple(std::string name) {
  return {TupleKind::Object, {std::move(name)}};
}

SemanticTuple attribute_tuple(std::string object, std::string attribute) {
  return {TupleKind::Attribute, {std::move(object), std::move(attribute)}};
}

SemanticTuple relation_tuple(std::string subject, std::string relation,
                             std::string object) {
  return {TupleKind::Relation,
          {std::move(subject), std::move(relation), std::move(object)}};
}

SemanticTuple make_tuple(std::vector<std::string> words) {
  switch (words.size()) {
    case 1:
      return {TupleKind::Object, std::move(words)};
    case 2:
      return {TupleKind::Attribute, std::move(words)};
    case 3:
      return {TupleKind::Relation, std::move(words)};
    default:
      throw ParseError("tuple arity must be 1, 2 or 3, got " +
                       std::to_string(words.size()));
  }
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path);

  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected 'word<TAB>class'", line_no);
    std::string word = line.substr(0, tab);
    const std::string cls = line.substr(tab + 1);
    if (word.empty()) throw ParseError("empty word", line_no);
    WordClass word_class;
    if (cls == "noun")
      word_class = WordClass::Noun;
    else if (cls == "verb")
      word_class = WordClass::Verb;
    else if (cls == "adj")
      word_class = WordClass::Adjective;
    else
      throw ParseError("unknown word class '" + cls + "'", line_no);
    lexicon.insert(std::move(word), word_class);
  }
  return lexicon;
}

void Lexicon::insert(std::string word, WordClass cls) {
  classes_[std::move(word)] = cls;
}

std::optional<WordClass> Lexicon::lookup(const std::string& word) const {
  const auto it = classes_.find(word);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

TupleSet extract_tuples(const Caption& caption, const Lexicon& lexicon) {
  const auto& tokens = caption.tokens;
  const std::size_t n = tokens.size();
  std::vector<std::optional<WordClass>> classes(n);
  for (std::size_t i = 0; i < n; ++i) classes[i] = lexicon.lookup(tokens[i]);

  TupleSet tuples;
  for (std::size_t i = 0; i < n; ++i) {
    if (classes[i] == WordClass::Noun) tuples.insert(object_tuple(tokens[i]));
    if (classes[i] == WordClass::Adjective && i + 1 < n &&
        classes[i + 1] == WordClass::Noun)
      tuples.insert(attribute_tuple(tokens[i + 1], tokens[i]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (classes[i] != WordClass::Verb) continue;
    const std::string* left = nullptr;
    for (std::size_t j = i; j-- > 0;) {
      if (classes[j] == WordClass::Noun) {
        left = &tokens[j];
        break;
      }
    }
    const std::string* right = nullptr;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (classes[j] == WordClass::Noun) {
        right = &tokens[j];
        break;
      }
    }
    if (left && right) tuples.insert(relation_tuple(*left, tokens[i], *right));
  }
  return tuples;
}

TupleSet merge_tuples(const std::vector<TupleSet>& sets) {
  TupleSet merged;
  for (const TupleSet& set : sets) merged.insert(set.begin(), set.end());
  return merged;
}

double spice_fscore(const TupleSet& candidate_tuples,
                    const TupleSet& reference_tuples) {
  if (candidate_tuples.empty() || reference_tuples.empty()) return 0.0;
  std::size_t matched = 0;
  for (const SemanticTuple& tuple : candidate_tuples)
    matched += reference_tuples.count(tuple);
  if (matched == 0) return 0.0;
  const double precision =
      static_cast<double>(matched) / static_cast<double>(candidate_tuples.size());
  const double recall =
      static_cast<double>(matched) / static_cast<double>(reference_tuples.size());
  return 2.0 * precision * recall / (precision + recall);
}

double m_spice(const std::vector<TupleSet>& candidates,
               const TupleSet& reference_tuples) {
  if (candidates.empty()) throw NoCandidates();
  return spice_fscore(merge_tuples(candidates), reference_tuples);
}

}  // namespace capeval
