#pragma once

#include <string>
#include <vector>

#include "capeval/spider.hpp"

namespace capeval {

// Reads a JSON-lines dataset: one object per line with
//   item_id      string (unique, non-empty)
//   candidates   array of captions
//   references   array of captions (non-empty)
// A caption is either a bare string or an object
//   {"text": ..., "likelihood": p?, "tuples": [[...], ...]?}
// where each tuple is an array of 1..3 words (arity determines the
// tuple kind). Throws ParseError / DuplicateId / EmptyItem with 1-based
// line numbers, IoError when the file cannot be opened.
std::vector<EvalItem> load_dataset(const std::string& path);

// Writes items back out in the same JSON-lines schema. Tuple
// annotations and likelihoods are preserved; load(save(x)) == x.
void save_dataset(const std::vector<EvalItem>& items,
                  const std::string& path);

}  // namespace capeval
