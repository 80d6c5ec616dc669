#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capeval/analysis.hpp"
#include "capeval/cider.hpp"
#include "capeval/spice.hpp"
#include "capeval/spider.hpp"

namespace capeval {

enum class Metric { Cider, CiderD, Spice, MSpice, Spider, SpiderMax };

std::string metric_name(Metric m);
Metric parse_metric(const std::string& name);  // ParseError on unknown

enum class Selection { First, MaxLikelihood, OracleSpider };

std::string selection_name(Selection s);
Selection parse_selection(const std::string& name);

struct EvalConfig {
  std::vector<Metric> metrics;
  Selection selection = Selection::First;
  CiderParams params;
  std::size_t top_k = 5;
  std::optional<Lexicon> lexicon;
};

// Per-candidate detail retained when spider or spider-max is requested.
struct CandidateDetail {
  std::optional<double> likelihood;
  double cider_d = 0.0;
  double spice = 0.0;
  double spider = 0.0;
  double tfidf_mass = 0.0;
};

struct ReportRow {
  std::string item_id;
  std::size_t selected_index = 0;
  std::map<Metric, double> values;
  std::optional<std::size_t> spider_max_index;
  std::vector<CandidateDetail> candidates;
};

struct RunMeta {
  std::string version;
  int ngram_max = 4;
  double sigma = 6.0;
  double scale = 10.0;
  std::size_t top_k = 5;
  Selection selection = Selection::First;
  std::vector<Metric> metrics;
};

struct ScoreReport {
  RunMeta meta;
  std::vector<ReportRow> rows;  // sorted by item_id
  std::map<Metric, double> means;
  std::vector<double> per_k_curve;  // non-empty iff spider-max requested
};

// Scores a corpus end to end: builds the IDF tables the requested
// metrics need, resolves tuples (annotation first, else the lexicon
// extractor; MissingLexicon when neither is available), applies the
// candidate-selection rule, and aggregates corpus means.
ScoreReport run_evaluation(const std::vector<EvalItem>& items,
                           const EvalConfig& config);

enum class ReportFormat { Csv, JsonLines };

// Deterministic emission: fixed field order, fixed 6-decimal floats,
// "\n" line terminators, rows sorted by item_id. Byte-identical output
// for identical inputs.
void emit_report(const ScoreReport& report, ReportFormat format,
                 std::ostream& out);
void emit_report(const ScoreReport& report, ReportFormat format,
                 const std::string& path);

// Reads back a JSON-lines report produced by emit_report.
ScoreReport load_report(const std::string& path);

// Extracts the per-candidate detail needed by the diagnostics; the
// report must carry candidate blocks (spider or spider-max runs).
std::vector<ScoredItem> scored_items(const ScoreReport& report);

enum class AnalysisKind { Agreement, Correlation, BeamHist, TfidfDelta, BeamCurve };

std::string analysis_name(AnalysisKind k);
AnalysisKind parse_analysis(const std::string& name);

// Runs one diagnostic over a loaded report and renders the result as a
// small CSV table (header + rows), deterministic like emit_report.
std::string analyze_table(const ScoreReport& report, AnalysisKind kind);

}  // namespace capeval
