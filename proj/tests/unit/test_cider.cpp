#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "capeval/cider.hpp"
#include "capeval/errors.hpp"
#include "capeval/text_prep.hpp"
#include "support/brute_force.hpp"
#include "support/random_corpus.hpp"

using capeval::build_idf;
using capeval::Caption;
using capeval::cider;
using capeval::cider_d;
using capeval::CiderParams;
using capeval::corpus_cider_d;
using capeval::IdfTable;
using capeval::ngram_profile;
using capeval::normalize;
using capeval::penalty;
using capeval::TfIdfVector;
using capeval::tfidf_vector;

namespace {

std::vector<Caption> captions(const std::vector<const char*>& texts) {
  std::vector<Caption> out;
  out.reserve(texts.size());
  for (const char* text : texts) out.push_back(normalize(text));
  return out;
}

}  // namespace

TEST_CASE("build_idf counts documents, not mentions") {
  const IdfTable idf = build_idf({captions({"a b"}), captions({"a c"})}, 1,
                                 false);
  CHECK(idf.num_items == 2);
  CHECK(idf.df[0].at("a") == 2);
  CHECK(idf.df[0].at("b") == 1);
  CHECK(idf.df[0].at("c") == 1);
  CHECK(idf.idf(1, "a") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(idf.idf(1, "b") == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(idf.idf(1, "unseen") == 0.0);

  // repeating a gram inside one item's references still counts once
  const IdfTable idf2 =
      build_idf({captions({"a b", "a a"}), captions({"c"})}, 1, false);
  CHECK(idf2.df[0].at("a") == 1);
}

TEST_CASE("build_idf degenerate and error cases") {
  const IdfTable idf = build_idf({captions({"a dog barks"})}, 4, false);
  CHECK(idf.idf(1, "dog") == 0.0);  // ln(1/1)

  CHECK_THROWS_AS(build_idf({}, 4, false), capeval::EmptyCorpus);
  CHECK_THROWS_AS(build_idf({captions({"a"}), {}}, 4, false),
                  capeval::NoReferences);
}

TEST_CASE("tfidf_vector arithmetic") {
  // profile {a:2, b:1}; df a->2, b->1; num_items = 2
  const IdfTable idf = build_idf({captions({"a b"}), captions({"a"})}, 1,
                                 false);
  const TfIdfVector vec = tfidf_vector(ngram_profile(normalize("a a b"), 1,
                                                     false),
                                       idf);
  const double expected_b = (1.0 / 3.0) * std::log(2.0);
  CHECK(vec.weights[0].count("a") == 0);  // idf 0 weights are not stored
  CHECK(vec.weights[0].at("b") == doctest::Approx(expected_b).epsilon(1e-12));
  CHECK(vec.norms[0] == doctest::Approx(expected_b).epsilon(1e-12));
  CHECK(vec.mass() == doctest::Approx(expected_b).epsilon(1e-12));

  // unseen grams contribute nothing
  const TfIdfVector unseen =
      tfidf_vector(ngram_profile(normalize("z z"), 1, false), idf);
  CHECK(unseen.weights[0].empty());
  CHECK(unseen.norms[0] == 0.0);
}

TEST_CASE("penalty arithmetic") {
  CHECK(penalty(7, 7, 6.0) == 1.0);
  CHECK(penalty(13, 7, 6.0) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(penalty(0, 10, 6.0) ==
        doctest::Approx(std::exp(-100.0 / 72.0)).epsilon(1e-12));
}

TEST_CASE("penalty is symmetric and maximal iff lengths agree") {
  for (std::size_t a = 0; a <= 10; ++a) {
    for (std::size_t b = 0; b <= 10; ++b) {
      CHECK(penalty(a, b, 6.0) == penalty(b, a, 6.0));
      if (a == b)
        CHECK(penalty(a, b, 6.0) == 1.0);
      else
        CHECK(penalty(a, b, 6.0) < 1.0);
    }
  }
}

TEST_CASE("cider_d perfect match and disjoint extremes") {
  const CiderParams params;
  const std::vector<Caption> refs_a = captions({"heavy rain falls on a roof"});
  const std::vector<Caption> refs_b = captions({"someone whistles a tune"});
  const IdfTable idf = build_idf({refs_a, refs_b}, params.max_order, false);

  CHECK(cider_d(normalize("heavy rain falls on a roof"), refs_a, idf, params) ==
        doctest::Approx(10.0).epsilon(1e-9));
  CHECK(cider_d(normalize("a goat bleats"), refs_a, idf, params) == 0.0);
  // empty candidates score zero instead of throwing
  CHECK(cider_d(normalize(""), refs_a, idf, params) == 0.0);
  CHECK_THROWS_AS(cider_d(normalize("x"), {}, idf, params),
                  capeval::NoReferences);
}

TEST_CASE("plain cider matches stems and skips the penalty") {
  const CiderParams params;
  const std::vector<Caption> refs_a = captions({"a goat is bleating"});
  const std::vector<Caption> refs_b = captions({"someone whistles"});
  const IdfTable idf = build_idf({refs_a, refs_b}, params.max_order, true);

  // same stems, different surface forms: full similarity at every order
  CHECK(cider(normalize("a goat is bleats"), refs_a, idf, params) ==
        doctest::Approx(10.0).epsilon(1e-9));
  CHECK_THROWS_AS(cider(normalize("x"), {}, idf, params),
                  capeval::NoReferences);
}

TEST_CASE("repetition past the reference length only hurts cider_d") {
  // count clipping caps every per-order similarity at the single-mention
  // level, so the growing length penalty strictly lowers the score
  const CiderParams params;
  const std::vector<Caption> refs = captions({"a dog barks"});
  const std::vector<Caption> other = captions({"rain falls"});
  const IdfTable idf = build_idf({refs, other}, params.max_order, false);

  const Caption once = normalize("a dog barks");
  const Caption twice = normalize("a dog barks a dog barks");
  const Caption thrice = normalize("a dog barks a dog barks a dog barks");
  const double s1 = cider_d(once, refs, idf, params);
  const double s2 = cider_d(twice, refs, idf, params);
  const double s3 = cider_d(thrice, refs, idf, params);
  CHECK(s2 < s1);
  CHECK(s3 < s2);
}

TEST_CASE("corpus coupling: other items' references shift the score") {
  const CiderParams params;
  const Caption candidate = normalize("a dog barks loudly");
  const std::vector<Caption> refs = captions({"a big dog barks loudly"});

  const IdfTable idf_distinct = build_idf(
      {refs, captions({"rain falls on tin"})}, params.max_order, false);
  const IdfTable idf_shared = build_idf(
      {refs, captions({"a dog barks quietly"})}, params.max_order, false);
  const double distinct = cider_d(candidate, refs, idf_distinct, params);
  const double shared = cider_d(candidate, refs, idf_shared, params);
  CHECK(distinct > 0.0);
  CHECK(shared > 0.0);
  CHECK(shared != distinct);

  // an exact match sits at the ceiling under either table
  const Caption exact = normalize("a big dog barks loudly");
  CHECK(cider_d(exact, refs, idf_distinct, params) ==
        doctest::Approx(10.0).epsilon(1e-9));
  CHECK(cider_d(exact, refs, idf_shared, params) ==
        doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("corpus_cider_d averages per-item scores") {
  const CiderParams params;
  std::vector<std::pair<Caption, std::vector<Caption>>> items;
  items.emplace_back(normalize("a dog barks loudly"),
                     captions({"a dog barks loudly"}));
  items.emplace_back(normalize("nothing here"), captions({"rain falls"}));
  const capeval::CorpusScore score = corpus_cider_d(items, params);
  REQUIRE(score.per_item.size() == 2);
  CHECK(score.per_item[0] == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(score.per_item[1] == 0.0);
  CHECK(score.mean == doctest::Approx(5.0).epsilon(1e-9));
  CHECK_THROWS_AS(corpus_cider_d({}, params), capeval::EmptyCorpus);
}

TEST_CASE("cider_d equals a from-scratch recomputation on random corpora") {
  const CiderParams params;
  std::mt19937 rng(101);
  for (int round = 0; round < 200; ++round) {
    const auto items = testsupport::random_corpus(rng);
    std::vector<std::vector<brute::Tokens>> corpus_refs;
    std::vector<std::vector<Caption>> reference_lists;
    for (const auto& item : items) {
      std::vector<brute::Tokens> refs;
      for (const Caption& ref : item.references) refs.push_back(ref.tokens);
      corpus_refs.push_back(std::move(refs));
      reference_lists.push_back(item.references);
    }
    const IdfTable idf = build_idf(reference_lists, params.max_order, false);

    for (const auto& item : items) {
      std::vector<brute::Tokens> ref_tokens;
      for (const Caption& ref : item.references)
        ref_tokens.push_back(ref.tokens);
      for (const Caption& cand : item.candidates) {
        const double lib = cider_d(cand, item.references, idf, params);
        const double naive =
            brute::cider_d(cand.tokens, ref_tokens, corpus_refs,
                           params.max_order, params.sigma, params.scale);
        CHECK(lib == doctest::Approx(naive).epsilon(1e-9));
        CHECK(lib >= 0.0);
        CHECK(lib <= params.scale);
      }
    }
  }
}

TEST_CASE("plain cider equals a from-scratch recomputation on random corpora") {
  const CiderParams params;
  std::mt19937 rng(202);
  for (int round = 0; round < 100; ++round) {
    const auto items = testsupport::random_corpus(rng);
    std::vector<std::vector<Caption>> reference_lists;
    std::vector<std::vector<brute::Tokens>> corpus_refs_stemmed;
    for (const auto& item : items) {
      reference_lists.push_back(item.references);
      std::vector<brute::Tokens> refs;
      for (const Caption& ref : item.references) {
        brute::Tokens stems;
        for (const std::string& token : ref.tokens)
          stems.push_back(capeval::stem(token));
        refs.push_back(std::move(stems));
      }
      corpus_refs_stemmed.push_back(std::move(refs));
    }
    const IdfTable idf = build_idf(reference_lists, params.max_order, true);

    for (std::size_t i = 0; i < items.size(); ++i) {
      std::vector<brute::Tokens> ref_tokens = corpus_refs_stemmed[i];
      for (const Caption& cand : items[i].candidates) {
        brute::Tokens cand_stems;
        for (const std::string& token : cand.tokens)
          cand_stems.push_back(capeval::stem(token));
        const double lib = cider(cand, items[i].references, idf, params);
        const double naive =
            brute::cider(cand_stems, ref_tokens, corpus_refs_stemmed,
                         params.max_order, params.scale);
        CHECK(lib == doctest::Approx(naive).epsilon(1e-9));
      }
    }
  }
}
