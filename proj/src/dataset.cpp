#include "capeval/dataset.hpp"

#include <fstream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "capeval/errors.hpp"

namespace capeval {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Caption parse_caption(const json& node, std::size_t line_no,
                      std::optional<TupleSet>& tuples_out) {
  if (node.is_string()) return normalize(node.get<std::string>());
  if (!node.is_object())
    throw ParseError("caption must be a string or an object", line_no);
  if (!node.contains("text") || !node["text"].is_string())
    throw ParseError("caption object needs a string 'text'", line_no);

  Caption caption = normalize(node["text"].get<std::string>());
  if (node.contains("likelihood")) {
    if (!node["likelihood"].is_number())
      throw ParseError("likelihood must be a number", line_no);
    const double likelihood = node["likelihood"].get<double>();
    if (likelihood < 0.0 || likelihood > 1.0)
      throw ParseError("likelihood must lie in [0, 1]", line_no);
    caption.likelihood = likelihood;
  }
  if (node.contains("tuples")) {
    if (!node["tuples"].is_array())
      throw ParseError("tuples must be an array of word arrays", line_no);
    TupleSet tuples;
    for (const json& entry : node["tuples"]) {
      if (!entry.is_array() || entry.empty() || entry.size() > 3)
        throw ParseError("each tuple must be an array of 1 to 3 words",
                         line_no);
      std::vector<std::string> words;
      words.reserve(entry.size());
      for (const json& word : entry) {
        if (!word.is_string())
          throw ParseError("tuple entries must be strings", line_no);
        const Caption token = normalize(word.get<std::string>());
        if (token.tokens.size() != 1)
          throw ParseError("tuple word '" + word.get<std::string>() +
                               "' must normalize to exactly one token",
                           line_no);
        words.push_back(token.tokens.front());
      }
      tuples.insert(make_tuple(std::move(words)));
    }
    tuples_out = std::move(tuples);
  }
  return caption;
}

void parse_caption_list(const json& node, const char* key, std::size_t line_no,
                        const std::string& item_id,
                        std::vector<Caption>& captions,
                        std::vector<std::optional<TupleSet>>& tuples) {
  if (!node.contains(key) || !node[key].is_array())
    throw ParseError(std::string("missing array '") + key + "'", line_no);
  if (node[key].empty())
    throw EmptyItem("item '" + item_id + "' has no " + key, line_no);
  for (const json& entry : node[key]) {
    std::optional<TupleSet> annotation;
    captions.push_back(parse_caption(entry, line_no, annotation));
    tuples.push_back(std::move(annotation));
  }
}

ordered_json caption_json(const Caption& caption,
                          const std::optional<TupleSet>& tuples) {
  if (!caption.likelihood && !tuples) return caption.raw_text;
  ordered_json node;
  node["text"] = caption.raw_text;
  if (caption.likelihood) node["likelihood"] = *caption.likelihood;
  if (tuples) {
    auto list = ordered_json::array();
    for (const SemanticTuple& tuple : *tuples) list.push_back(tuple.words);
    node["tuples"] = std::move(list);
  }
  return node;
}

}  // namespace

std::vector<EvalItem> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path);

  std::vector<EvalItem> items;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    json node;
    try {
      node = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!node.is_object())
      throw ParseError("expected a JSON object per line", line_no);
    if (!node.contains("item_id") || !node["item_id"].is_string())
      throw ParseError("missing string 'item_id'", line_no);

    EvalItem item;
    item.item_id = node["item_id"].get<std::string>();
    if (item.item_id.empty())
      throw ParseError("item_id must be non-empty", line_no);
    if (!seen_ids.insert(item.item_id).second)
      throw DuplicateId(item.item_id, line_no);

    parse_caption_list(node, "candidates", line_no, item.item_id,
                       item.candidates, item.candidate_tuples);
    parse_caption_list(node, "references", line_no, item.item_id,
                       item.references, item.reference_tuples);
    items.push_back(std::move(item));
  }
  return items;
}

void save_dataset(const std::vector<EvalItem>& items,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  for (const EvalItem& item : items) {
    ordered_json node;
    node["item_id"] = item.item_id;
    auto candidates = ordered_json::array();
    for (std::size_t i = 0; i < item.candidates.size(); ++i) {
      const std::optional<TupleSet> annotation =
          i < item.candidate_tuples.size() ? item.candidate_tuples[i]
                                           : std::nullopt;
      candidates.push_back(caption_json(item.candidates[i], annotation));
    }
    node["candidates"] = std::move(candidates);
    auto references = ordered_json::array();
    for (std::size_t i = 0; i < item.references.size(); ++i) {
      const std::optional<TupleSet> annotation =
          i < item.reference_tuples.size() ? item.reference_tuples[i]
                                           : std::nullopt;
      references.push_back(caption_json(item.references[i], annotation));
    }
    node["references"] = std::move(references);
    out << node.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace capeval
