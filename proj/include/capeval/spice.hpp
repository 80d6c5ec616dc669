#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "capeval/text_prep.hpp"

namespace capeval {

enum class TupleKind { Object, Attribute, Relation };

// Binarized scene-graph tuple: (object), (object, attribute) or
// (object, relation, object). Arity and kind determine each other.
struct SemanticTuple {
  TupleKind kind = TupleKind::Object;
  std::vector<std::string> words;

  auto operator<=>(const SemanticTuple&) const = default;
};

SemanticTuple object_tuple(std::string name);
SemanticTuple attribute_tuple(std::string object, std::string attribute);
SemanticTuple relation_tuple(std::string subject, std::string relation,
                             std::string object);

// Kind from arity; throws ParseError for arity outside 1..3.
SemanticTuple make_tuple(std::vector<std::string> words);

using TupleSet = std::set<SemanticTuple>;

enum class WordClass { Noun, Verb, Adjective };

// word -> class table driving the heuristic extractor. File format: one
// "word<TAB>class" entry per line, class in {noun, verb, adj}.
class Lexicon {
 public:
  static Lexicon load(const std::string& path);

  void insert(std::string word, WordClass cls);
  std::optional<WordClass> lookup(const std::string& word) const;
  std::size_t size() const { return classes_.size(); }

 private:
  std::unordered_map<std::string, WordClass> classes_;
};

// Heuristic tuple extraction over normalized tokens:
//   - every noun becomes an object;
//   - an adjective immediately before a noun becomes (noun, adjective);
//   - every verb with a nearest noun on each side becomes
//     (left_noun, verb, right_noun).
// Words absent from the lexicon are skipped.
TupleSet extract_tuples(const Caption& caption, const Lexicon& lexicon);

TupleSet merge_tuples(const std::vector<TupleSet>& sets);

// Harmonic mean of precision |C n R|/|C| and recall |C n R|/|R|;
// 0 when either side is empty.
double spice_fscore(const TupleSet& candidate_tuples,
                    const TupleSet& reference_tuples);

// F-score of the union of all candidate tuple sets against the merged
// reference set.
double m_spice(const std::vector<TupleSet>& candidates,
               const TupleSet& reference_tuples);

}  // namespace capeval
