#include "capeval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "capeval/errors.hpp"
#include "capeval/version.hpp"

namespace capeval {

namespace {

using nlohmann::json;

constexpr Metric kAllMetrics[] = {Metric::Cider,  Metric::CiderD,
                                  Metric::Spice,  Metric::MSpice,
                                  Metric::Spider, Metric::SpiderMax};

// Fixed 6-decimal rendering shared by every report surface; "-0.000000"
// would make byte-level comparisons depend on the sign of a zero.
std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string text(buf);
  if (text == "-0.000000") text = "0.000000";
  return text;
}

std::string json_string(const std::string& text) {
  return json(text).dump();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

TupleSet tuples_for(const Caption& caption,
                    const std::vector<std::optional<TupleSet>>& annotations,
                    std::size_t index, const std::optional<Lexicon>& lexicon,
                    const std::string& item_id) {
  if (index < annotations.size() && annotations[index])
    return *annotations[index];
  if (!lexicon) throw MissingLexicon(item_id);
  return extract_tuples(caption, *lexicon);
}

}  // namespace

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::Cider: return "cider";
    case Metric::CiderD: return "cider-d";
    case Metric::Spice: return "spice";
    case Metric::MSpice: return "m-spice";
    case Metric::Spider: return "spider";
    case Metric::SpiderMax: return "spider-max";
  }
  throw ParseError("invalid metric value");
}

Metric parse_metric(const std::string& name) {
  for (const Metric m : kAllMetrics)
    if (metric_name(m) == name) return m;
  throw ParseError("unknown metric '" + name + "'");
}

std::string selection_name(Selection s) {
  switch (s) {
    case Selection::First: return "first";
    case Selection::MaxLikelihood: return "max-likelihood";
    case Selection::OracleSpider: return "oracle-spider";
  }
  throw ParseError("invalid selection value");
}

Selection parse_selection(const std::string& name) {
  for (const Selection s : {Selection::First, Selection::MaxLikelihood,
                            Selection::OracleSpider})
    if (selection_name(s) == name) return s;
  throw ParseError("unknown selection rule '" + name + "'");
}

std::string analysis_name(AnalysisKind k) {
  switch (k) {
    case AnalysisKind::Agreement: return "agreement";
    case AnalysisKind::Correlation: return "correlation";
    case AnalysisKind::BeamHist: return "beam-hist";
    case AnalysisKind::TfidfDelta: return "tfidf-delta";
    case AnalysisKind::BeamCurve: return "beam-curve";
  }
  throw ParseError("invalid analysis value");
}

AnalysisKind parse_analysis(const std::string& name) {
  for (const AnalysisKind k :
       {AnalysisKind::Agreement, AnalysisKind::Correlation,
        AnalysisKind::BeamHist, AnalysisKind::TfidfDelta,
        AnalysisKind::BeamCurve})
    if (analysis_name(k) == name) return k;
  throw ParseError("unknown analysis report '" + name + "'");
}

ScoreReport run_evaluation(const std::vector<EvalItem>& items,
                           const EvalConfig& config) {
  if (items.empty()) throw EmptyCorpus();
  if (config.metrics.empty()) throw ParseError("no metrics requested");
  if (config.params.max_order < 1)
    throw ParseError("ngram-max must be at least 1");
  if (config.params.sigma <= 0.0) throw ParseError("sigma must be positive");
  if (config.params.scale <= 0.0) throw ParseError("scale must be positive");

  // canonical metric order with duplicates collapsed
  std::vector<Metric> metrics = config.metrics;
  std::sort(metrics.begin(), metrics.end());
  metrics.erase(std::unique(metrics.begin(), metrics.end()), metrics.end());

  const auto want = [&metrics](Metric m) {
    return std::find(metrics.begin(), metrics.end(), m) != metrics.end();
  };
  const bool oracle_selection = config.selection == Selection::OracleSpider;
  const bool detail = want(Metric::Spider) || want(Metric::SpiderMax);
  const bool need_all_scores = detail || oracle_selection;
  const bool need_all_tuples = need_all_scores || want(Metric::MSpice);
  const bool need_tuples = need_all_tuples || want(Metric::Spice);
  const bool need_plain_idf = need_all_scores || want(Metric::CiderD);
  const bool need_stemmed_idf = want(Metric::Cider);

  std::size_t min_candidates = items.front().candidates.size();
  std::vector<std::vector<Caption>> corpus_references;
  corpus_references.reserve(items.size());
  for (const EvalItem& item : items) {
    if (item.candidates.empty()) throw NoCandidates(item.item_id);
    if (item.references.empty()) throw NoReferences(item.item_id);
    min_candidates = std::min(min_candidates, item.candidates.size());
    corpus_references.push_back(item.references);
  }
  if (want(Metric::SpiderMax)) {
    if (config.top_k < 1) throw BadTopK(config.top_k, min_candidates);
    for (const EvalItem& item : items) {
      if (item.candidates.size() < config.top_k)
        throw RaggedCandidates(item.item_id, item.candidates.size(),
                               config.top_k);
    }
  }

  const CiderParams& params = config.params;
  std::optional<IdfTable> idf_plain, idf_stemmed;
  if (need_plain_idf)
    idf_plain = build_idf(corpus_references, params.max_order, false);
  if (need_stemmed_idf)
    idf_stemmed = build_idf(corpus_references, params.max_order, true);

  ScoreReport report;
  report.meta.version = kVersion;
  report.meta.ngram_max = params.max_order;
  report.meta.sigma = params.sigma;
  report.meta.scale = params.scale;
  report.meta.top_k = config.top_k;
  report.meta.selection = config.selection;
  report.meta.metrics = metrics;

  std::vector<double> curve_acc;
  if (want(Metric::SpiderMax)) curve_acc.assign(config.top_k, 0.0);

  for (const EvalItem& item : items) {
    const std::size_t num_candidates = item.candidates.size();

    TupleSet merged_refs;
    if (need_tuples) {
      for (std::size_t i = 0; i < item.references.size(); ++i) {
        const TupleSet tuples =
            tuples_for(item.references[i], item.reference_tuples, i,
                       config.lexicon, item.item_id);
        merged_refs.insert(tuples.begin(), tuples.end());
      }
    }
    std::vector<TupleSet> candidate_tuples;
    if (need_all_tuples) {
      candidate_tuples.reserve(num_candidates);
      for (std::size_t i = 0; i < num_candidates; ++i)
        candidate_tuples.push_back(tuples_for(item.candidates[i],
                                              item.candidate_tuples, i,
                                              config.lexicon, item.item_id));
    }
    std::vector<SpiderScore> all_scores;
    if (need_all_scores) {
      all_scores.reserve(num_candidates);
      for (std::size_t i = 0; i < num_candidates; ++i)
        all_scores.push_back(spider(item.candidates[i], candidate_tuples[i],
                                    item.references, merged_refs, *idf_plain,
                                    params));
    }

    std::size_t selected = 0;
    if (config.selection == Selection::MaxLikelihood) {
      for (std::size_t i = 0; i < num_candidates; ++i) {
        if (!item.candidates[i].likelihood) throw MissingLikelihood(item.item_id);
        if (*item.candidates[i].likelihood >
            *item.candidates[selected].likelihood)
          selected = i;
      }
    } else if (oracle_selection) {
      for (std::size_t i = 1; i < num_candidates; ++i)
        if (all_scores[i].spider > all_scores[selected].spider) selected = i;
    }

    ReportRow row;
    row.item_id = item.item_id;
    row.selected_index = selected;

    for (const Metric m : metrics) {
      switch (m) {
        case Metric::Cider:
          row.values[m] = cider(item.candidates[selected], item.references,
                                *idf_stemmed, params);
          break;
        case Metric::CiderD:
          row.values[m] = need_all_scores
                              ? all_scores[selected].cider_d
                              : cider_d(item.candidates[selected],
                                        item.references, *idf_plain, params);
          break;
        case Metric::Spice: {
          const TupleSet tuples =
              need_all_tuples
                  ? candidate_tuples[selected]
                  : tuples_for(item.candidates[selected],
                               item.candidate_tuples, selected, config.lexicon,
                               item.item_id);
          row.values[m] = spice_fscore(tuples, merged_refs);
          break;
        }
        case Metric::MSpice:
          row.values[m] = m_spice(candidate_tuples, merged_refs);
          break;
        case Metric::Spider:
          row.values[m] = all_scores[selected].spider;
          break;
        case Metric::SpiderMax: {
          double best = all_scores[0].spider;
          std::size_t best_index = 0;
          for (std::size_t k = 1; k < config.top_k; ++k) {
            if (all_scores[k].spider > best) {
              best = all_scores[k].spider;
              best_index = k;
            }
          }
          row.values[m] = best;
          row.spider_max_index = best_index;
          break;
        }
      }
    }
    // prefix-max accumulation for the per-k curve, same arithmetic as
    // corpus_spider_max
    if (want(Metric::SpiderMax)) {
      double running = 0.0;
      for (std::size_t k = 0; k < config.top_k; ++k) {
        running = (k == 0) ? all_scores[k].spider
                           : std::max(running, all_scores[k].spider);
        curve_acc[k] += running;
      }
    }

    if (detail) {
      row.candidates.reserve(num_candidates);
      for (std::size_t i = 0; i < num_candidates; ++i) {
        CandidateDetail d;
        d.likelihood = item.candidates[i].likelihood;
        d.cider_d = all_scores[i].cider_d;
        d.spice = all_scores[i].spice;
        d.spider = all_scores[i].spider;
        d.tfidf_mass =
            tfidf_vector(ngram_profile(item.candidates[i], params.max_order,
                                       false),
                         *idf_plain)
                .mass();
        row.candidates.push_back(std::move(d));
      }
    }
    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return a.item_id < b.item_id;
            });

  const auto count = static_cast<double>(report.rows.size());
  for (const Metric m : metrics) {
    double sum = 0.0;
    for (const ReportRow& row : report.rows) sum += row.values.at(m);
    report.means[m] = sum / count;
  }
  if (want(Metric::SpiderMax)) {
    report.per_k_curve.reserve(curve_acc.size());
    for (const double total : curve_acc)
      report.per_k_curve.push_back(total / count);
  }
  return report;
}

namespace {

void emit_json_lines(const ScoreReport& report, std::ostream& out) {
  const RunMeta& meta = report.meta;
  out << "{\"type\":\"meta\",\"version\":" << json_string(meta.version)
      << ",\"ngram_max\":" << meta.ngram_max
      << ",\"sigma\":" << format_fixed(meta.sigma)
      << ",\"scale\":" << format_fixed(meta.scale)
      << ",\"top_k\":" << meta.top_k
      << ",\"selection\":" << json_string(selection_name(meta.selection))
      << ",\"metrics\":[";
  for (std::size_t i = 0; i < meta.metrics.size(); ++i) {
    if (i) out << ',';
    out << json_string(metric_name(meta.metrics[i]));
  }
  out << "]}\n";

  for (const ReportRow& row : report.rows) {
    out << "{\"type\":\"item\",\"item_id\":" << json_string(row.item_id)
        << ",\"selected_index\":" << row.selected_index << ",\"metrics\":{";
    bool first = true;
    for (const Metric m : meta.metrics) {
      if (!first) out << ',';
      first = false;
      out << json_string(metric_name(m)) << ':'
          << format_fixed(row.values.at(m));
    }
    out << '}';
    if (row.spider_max_index)
      out << ",\"spider_max_index\":" << *row.spider_max_index;
    if (!row.candidates.empty()) {
      out << ",\"candidates\":[";
      for (std::size_t i = 0; i < row.candidates.size(); ++i) {
        const CandidateDetail& d = row.candidates[i];
        if (i) out << ',';
        out << '{';
        if (d.likelihood)
          out << "\"likelihood\":" << format_fixed(*d.likelihood) << ',';
        out << "\"cider-d\":" << format_fixed(d.cider_d)
            << ",\"spice\":" << format_fixed(d.spice)
            << ",\"spider\":" << format_fixed(d.spider)
            << ",\"tfidf_mass\":" << format_fixed(d.tfidf_mass) << '}';
      }
      out << ']';
    }
    out << "}\n";
  }

  out << "{\"type\":\"summary\",\"items\":" << report.rows.size()
      << ",\"mean\":{";
  bool first = true;
  for (const Metric m : meta.metrics) {
    if (!first) out << ',';
    first = false;
    out << json_string(metric_name(m)) << ':'
        << format_fixed(report.means.at(m));
  }
  out << '}';
  if (!report.per_k_curve.empty()) {
    out << ",\"per_k_curve\":[";
    for (std::size_t i = 0; i < report.per_k_curve.size(); ++i) {
      if (i) out << ',';
      out << format_fixed(report.per_k_curve[i]);
    }
    out << ']';
  }
  out << "}\n";
}

void emit_csv(const ScoreReport& report, std::ostream& out) {
  const RunMeta& meta = report.meta;
  out << "# capeval=" << meta.version << " ngram_max=" << meta.ngram_max
      << " sigma=" << format_fixed(meta.sigma)
      << " scale=" << format_fixed(meta.scale) << " top_k=" << meta.top_k
      << " selection=" << selection_name(meta.selection) << " metrics=";
  for (std::size_t i = 0; i < meta.metrics.size(); ++i) {
    if (i) out << ';';
    out << metric_name(meta.metrics[i]);
  }
  out << '\n';

  out << "item_id,selected_index";
  for (const Metric m : meta.metrics) {
    out << ',' << metric_name(m);
    if (m == Metric::SpiderMax) out << ",spider-max-index";
  }
  out << '\n';

  for (const ReportRow& row : report.rows) {
    out << csv_field(row.item_id) << ',' << row.selected_index;
    for (const Metric m : meta.metrics) {
      out << ',' << format_fixed(row.values.at(m));
      if (m == Metric::SpiderMax) {
        out << ',';
        if (row.spider_max_index) out << *row.spider_max_index;
      }
    }
    out << '\n';
  }

  out << "__mean__,";
  for (const Metric m : meta.metrics) {
    out << ',' << format_fixed(report.means.at(m));
    if (m == Metric::SpiderMax) out << ',';
  }
  out << '\n';
}

}  // namespace

void emit_report(const ScoreReport& report, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::Csv)
    emit_csv(report, out);
  else
    emit_json_lines(report, out);
  if (!out) throw IoError("report write failed");
}

void emit_report(const ScoreReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open report for writing: " + path);
  emit_report(report, format, out);
  out.close();
  if (!out) throw IoError("report write failed: " + path);
}

namespace {

double require_number(const json& node, const char* key, std::size_t line_no) {
  if (!node.contains(key) || !node[key].is_number())
    throw ParseError(std::string("missing number '") + key + "'", line_no);
  return node[key].get<double>();
}

std::size_t require_uint(const json& node, const char* key,
                         std::size_t line_no) {
  if (!node.contains(key) || !node[key].is_number_unsigned())
    throw ParseError(std::string("missing non-negative integer '") + key + "'",
                     line_no);
  return node[key].get<std::size_t>();
}

std::string require_string(const json& node, const char* key,
                           std::size_t line_no) {
  if (!node.contains(key) || !node[key].is_string())
    throw ParseError(std::string("missing string '") + key + "'", line_no);
  return node[key].get<std::string>();
}

}  // namespace

ScoreReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report: " + path);

  ScoreReport report;
  bool saw_meta = false;
  bool saw_summary = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#')
      throw ParseError("expected a json-lines report (is this a csv file?)",
                       line_no);

    json node;
    try {
      node = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!node.is_object())
      throw ParseError("expected a JSON object per line", line_no);
    const std::string type = node.value("type", "");

    if (type == "meta") {
      report.meta.version = require_string(node, "version", line_no);
      report.meta.ngram_max =
          static_cast<int>(require_uint(node, "ngram_max", line_no));
      report.meta.sigma = require_number(node, "sigma", line_no);
      report.meta.scale = require_number(node, "scale", line_no);
      report.meta.top_k = require_uint(node, "top_k", line_no);
      report.meta.selection =
          parse_selection(require_string(node, "selection", line_no));
      if (!node.contains("metrics") || !node["metrics"].is_array())
        throw ParseError("missing array 'metrics'", line_no);
      for (const json& name : node["metrics"]) {
        if (!name.is_string())
          throw ParseError("metric names must be strings", line_no);
        report.meta.metrics.push_back(parse_metric(name.get<std::string>()));
      }
      saw_meta = true;
    } else if (type == "item") {
      ReportRow row;
      row.item_id = require_string(node, "item_id", line_no);
      row.selected_index = require_uint(node, "selected_index", line_no);
      if (!node.contains("metrics") || !node["metrics"].is_object())
        throw ParseError("missing object 'metrics'", line_no);
      for (const auto& [name, value] : node["metrics"].items()) {
        if (!value.is_number())
          throw ParseError("metric values must be numbers", line_no);
        row.values[parse_metric(name)] = value.get<double>();
      }
      if (node.contains("spider_max_index"))
        row.spider_max_index = require_uint(node, "spider_max_index", line_no);
      if (node.contains("candidates")) {
        if (!node["candidates"].is_array())
          throw ParseError("'candidates' must be an array", line_no);
        for (const json& entry : node["candidates"]) {
          if (!entry.is_object())
            throw ParseError("candidate entries must be objects", line_no);
          CandidateDetail d;
          if (entry.contains("likelihood"))
            d.likelihood = require_number(entry, "likelihood", line_no);
          d.cider_d = require_number(entry, "cider-d", line_no);
          d.spice = require_number(entry, "spice", line_no);
          d.spider = require_number(entry, "spider", line_no);
          d.tfidf_mass = require_number(entry, "tfidf_mass", line_no);
          row.candidates.push_back(std::move(d));
        }
      }
      report.rows.push_back(std::move(row));
    } else if (type == "summary") {
      if (!node.contains("mean") || !node["mean"].is_object())
        throw ParseError("missing object 'mean'", line_no);
      for (const auto& [name, value] : node["mean"].items()) {
        if (!value.is_number())
          throw ParseError("mean values must be numbers", line_no);
        report.means[parse_metric(name)] = value.get<double>();
      }
      if (node.contains("per_k_curve")) {
        if (!node["per_k_curve"].is_array())
          throw ParseError("'per_k_curve' must be an array", line_no);
        for (const json& value : node["per_k_curve"]) {
          if (!value.is_number())
            throw ParseError("curve values must be numbers", line_no);
          report.per_k_curve.push_back(value.get<double>());
        }
      }
      saw_summary = true;
    } else {
      throw ParseError("unknown record type '" + type + "'", line_no);
    }
  }
  if (!saw_meta) throw ParseError("report has no meta record");
  if (!saw_summary) throw ParseError("report has no summary record");
  for (const Metric m : report.meta.metrics) {
    if (!report.means.count(m))
      throw ParseError("summary is missing the mean for '" + metric_name(m) +
                       "'");
  }
  return report;
}

std::vector<ScoredItem> scored_items(const ScoreReport& report) {
  std::vector<ScoredItem> items;
  items.reserve(report.rows.size());
  for (const ReportRow& row : report.rows) {
    if (row.candidates.empty())
      throw ParseError("report row '" + row.item_id +
                       "' carries no per-candidate detail; rerun score with "
                       "spider or spider-max");
    ScoredItem item;
    item.item_id = row.item_id;
    for (const CandidateDetail& d : row.candidates) {
      item.likelihoods.push_back(d.likelihood);
      SpiderScore score;
      score.cider_d = d.cider_d;
      score.spice = d.spice;
      score.spider = d.spider;
      item.scores.push_back(score);
      item.tfidf_mass.push_back(d.tfidf_mass);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::string analyze_table(const ScoreReport& report, AnalysisKind kind) {
  const std::vector<ScoredItem> items = scored_items(report);
  std::string out;
  switch (kind) {
    case AnalysisKind::Agreement:
      out = "metric,value\nagreement_accuracy," +
            format_fixed(agreement_accuracy(items)) + "\n";
      break;
    case AnalysisKind::Correlation:
      out = "metric,value\nlikelihood_spider_pearson," +
            format_fixed(likelihood_score_correlation(items)) + "\n";
      break;
    case AnalysisKind::TfidfDelta:
      out = "metric,value\ntfidf_delta_pearson," +
            format_fixed(tfidf_delta_correlation(items)) + "\n";
      break;
    case AnalysisKind::BeamHist: {
      const auto histogram = best_beam_histogram(items);
      std::size_t max_candidates = 0;
      for (const ScoredItem& item : items)
        max_candidates = std::max(max_candidates, item.scores.size());
      out = "beam_index,count\n";
      for (std::size_t i = 0; i < max_candidates; ++i) {
        const auto it = histogram.find(i);
        const std::size_t count = it == histogram.end() ? 0 : it->second;
        out += std::to_string(i) + "," + std::to_string(count) + "\n";
      }
      break;
    }
    case AnalysisKind::BeamCurve: {
      if (items.empty()) throw EmptyCorpus();
      std::size_t min_candidates = items.front().scores.size();
      for (const ScoredItem& item : items)
        min_candidates = std::min(min_candidates, item.scores.size());
      out = "k,spider_max_mean\n";
      for (std::size_t k = 1; k <= min_candidates; ++k) {
        double sum = 0.0;
        for (const ScoredItem& item : items) {
          double best = item.scores[0].spider;
          for (std::size_t i = 1; i < k; ++i)
            best = std::max(best, item.scores[i].spider);
          sum += best;
        }
        out += std::to_string(k) + "," +
               format_fixed(sum / static_cast<double>(items.size())) + "\n";
      }
      break;
    }
  }
  return out;
}

}  // namespace capeval
