#pragma once

#include <stdexcept>
#include <string>

namespace capeval {

// Base class for everything thrown by this library.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyCorpus : public EvalError {
 public:
  EmptyCorpus() : EvalError("corpus has no items") {}
};

class NoReferences : public EvalError {
 public:
  NoReferences() : EvalError("item has no references") {}
  explicit NoReferences(const std::string& item_id)
      : EvalError("item '" + item_id + "' has no references") {}
};

class NoCandidates : public EvalError {
 public:
  NoCandidates() : EvalError("item has no candidates") {}
  explicit NoCandidates(const std::string& item_id)
      : EvalError("item '" + item_id + "' has no candidates") {}
};

class BadTopK : public EvalError {
 public:
  BadTopK(std::size_t top_k, std::size_t num_candidates)
      : EvalError("top_k " + std::to_string(top_k) + " out of range [1, " +
                  std::to_string(num_candidates) + "]") {}
};

class RaggedCandidates : public EvalError {
 public:
  RaggedCandidates(const std::string& item_id, std::size_t have, std::size_t need)
      : EvalError("item '" + item_id + "' has " + std::to_string(have) +
                  " candidates, need at least " + std::to_string(need)) {}
};

class MissingLikelihood : public EvalError {
 public:
  explicit MissingLikelihood(const std::string& item_id)
      : EvalError("item '" + item_id + "' has a candidate without a likelihood") {}
};

class MissingLexicon : public EvalError {
 public:
  explicit MissingLexicon(const std::string& item_id)
      : EvalError("item '" + item_id +
                  "' needs tuple extraction but no lexicon was provided") {}
};

class DegenerateVariance : public EvalError {
 public:
  DegenerateVariance() : EvalError("correlation undefined: zero variance") {}
};

class ParseError : public EvalError {
 public:
  using EvalError::EvalError;
  ParseError(const std::string& what, std::size_t line)
      : EvalError("line " + std::to_string(line) + ": " + what) {}
};

class DuplicateId : public EvalError {
 public:
  DuplicateId(const std::string& item_id, std::size_t line)
      : EvalError("line " + std::to_string(line) + ": duplicate item_id '" +
                  item_id + "'") {}
};

class EmptyItem : public EvalError {
 public:
  EmptyItem(const std::string& what, std::size_t line)
      : EvalError("line " + std::to_string(line) + ": " + what) {}
};

class IoError : public EvalError {
 public:
  using EvalError::EvalError;
};

}  // namespace capeval
