#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capeval/dataset.hpp"
#include "capeval/errors.hpp"
#include "capeval/report.hpp"
#include "capeval/version.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

struct ScoreArgs {
  std::string dataset;
  std::string metrics;
  int ngram_max = 4;
  double sigma = 6.0;
  double scale = 10.0;
  std::size_t top_k = 5;
  std::string selection = "first";
  std::string lexicon;
  std::string out = "-";
  std::string format = "json-lines";
};

int run_score(const ScoreArgs& args) {
  const std::vector<capeval::EvalItem> items =
      capeval::load_dataset(args.dataset);

  capeval::EvalConfig config;
  for (const std::string& name : split_list(args.metrics))
    config.metrics.push_back(capeval::parse_metric(name));
  config.selection = capeval::parse_selection(args.selection);
  config.params.max_order = args.ngram_max;
  config.params.sigma = args.sigma;
  config.params.scale = args.scale;
  config.top_k = args.top_k;
  if (!args.lexicon.empty())
    config.lexicon = capeval::Lexicon::load(args.lexicon);

  const capeval::ScoreReport report = capeval::run_evaluation(items, config);
  const capeval::ReportFormat format = args.format == "csv"
                                           ? capeval::ReportFormat::Csv
                                           : capeval::ReportFormat::JsonLines;
  if (args.out == "-")
    capeval::emit_report(report, format, std::cout);
  else
    capeval::emit_report(report, format, args.out);
  return 0;
}

int run_analyze(const std::string& scores, const std::string& kind) {
  const capeval::ScoreReport report = capeval::load_report(scores);
  std::cout << capeval::analyze_table(report,
                                      capeval::parse_analysis(kind));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("capeval ") + capeval::kVersion +
               " - corpus-level caption scoring"};
  app.require_subcommand(1);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score", "score a dataset");
  score->add_option("--dataset", score_args.dataset, "JSON-lines dataset file")
      ->required();
  score
      ->add_option("--metrics", score_args.metrics,
                   "comma-separated list from: cider, cider-d, spice, "
                   "m-spice, spider, spider-max")
      ->required();
  score->add_option("--ngram-max", score_args.ngram_max,
                    "maximum n-gram order");
  score->add_option("--sigma", score_args.sigma, "length-penalty width");
  score->add_option("--scale", score_args.scale, "similarity rescale factor");
  score->add_option("--top-k", score_args.top_k,
                    "candidates considered by spider-max");
  score
      ->add_option("--selection", score_args.selection,
                   "candidate selection rule")
      ->check(CLI::IsMember({"first", "max-likelihood", "oracle-spider"}));
  score->add_option("--lexicon", score_args.lexicon,
                    "word-class lexicon for tuple extraction");
  score->add_option("--out", score_args.out, "output path ('-' for stdout)");
  score->add_option("--format", score_args.format, "report format")
      ->check(CLI::IsMember({"csv", "json-lines"}));

  std::string scores_path;
  std::string report_kind;
  CLI::App* analyze =
      app.add_subcommand("analyze", "diagnostics over a score report");
  analyze->add_option("--scores", scores_path, "json-lines score report")
      ->required();
  analyze->add_option("--report", report_kind, "diagnostic to compute")
      ->required()
      ->check(CLI::IsMember({"agreement", "correlation", "beam-hist",
                             "tfidf-delta", "beam-curve"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (score->parsed()) return run_score(score_args);
    return run_analyze(scores_path, report_kind);
  } catch (const capeval::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const capeval::EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
