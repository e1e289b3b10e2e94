// Glue between resources, the individual models, and ranking: one call per
// (document, model) that yields scores, a ranked list, and a summary.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "hybridsumm/config.hpp"
#include "hybridsumm/lexicon.hpp"
#include "hybridsumm/preprocess.hpp"
#include "hybridsumm/ranking.hpp"
#include "hybridsumm/semmodels.hpp"
#include "hybridsumm/statmodels.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

// Loaded model resources. The flags say which optional files were supplied;
// validation maps models to the resources they cannot run without.
struct Resources {
  Lexicon lexicon;
  WordVectorTable vectors;
  SentenceEmbeddingStore embeddings;
  std::set<std::string> stopwords;
  bool has_lexicon = false;
  bool has_vectors = false;
  bool has_embeddings = false;
};

inline void validate_resources(const std::vector<Model>& models, const Resources& res) {
  for (Model m : models) {
    if (m == Model::wordnet && !res.has_lexicon)
      throw ResourceError("model 'wordnet' requires a lexicon file (--lexicon)");
    if (m == Model::glove && !res.has_vectors)
      throw ResourceError("model 'glove' requires a word-vector file (--vectors)");
    if (m == Model::embedding && !res.has_embeddings)
      throw ResourceError("model 'embedding' requires a sentence-embedding file (--embeddings)");
  }
}

enum class RankStrategy { rscore, hcluster };

inline RankStrategy rank_strategy_from_name(const std::string& name) {
  if (name == "rscore") return RankStrategy::rscore;
  if (name == "hcluster") return RankStrategy::hcluster;
  throw DataError("unknown ranking strategy: '" + name + "' (expected rscore or hcluster)");
}

// Output of one standalone model run on one document.
struct ModelRun {
  Model model = Model::jaccard;
  bool has_matrix = false;
  SimilarityMatrix matrix;  // set for the matrix-producing models
  RankVector scores;        // set for score-producing models and rscore ranking
  RankedList ranks;
  Summary summary;
};

namespace detail {

inline FrequencyMatrix document_frequency_matrix(const Document& doc,
                                                 const std::vector<Document>& corpus,
                                                 const Options& opts) {
  return build_frequency_matrix(corpus, doc.id, {}, opts.low_df, opts.high_df,
                                opts.min_corpus_size, opts.count_form);
}

}  // namespace detail

// Run one model standalone on a document. `corpus` is the document
// collection the document belongs to (used for document-frequency
// filtering); it must contain the document itself.
inline ModelRun run_model(const Document& doc, const std::vector<Document>& corpus, Model model,
                          const Resources& res, const Options& opts, RankStrategy strategy,
                          const Budget& budget) {
  ModelRun run;
  run.model = model;

  switch (model) {
    case Model::jaccard:
    case Model::cosine: {
      FrequencyMatrix fm = detail::document_frequency_matrix(doc, corpus, opts);
      run.matrix = similarity_matrix(fm, model, model == Model::cosine && opts.cosine_distance);
      run.has_matrix = true;
      break;
    }
    case Model::textrank: {
      // TextRank iterates over the cosine similarity reading regardless of
      // the cosine.distance flag: the iteration needs similarities.
      FrequencyMatrix fm = detail::document_frequency_matrix(doc, corpus, opts);
      SimilarityMatrix sim = similarity_matrix(fm, Model::cosine, false);
      run.scores = textrank(sim, opts.textrank_d, opts.textrank_epsilon, opts.textrank_max_iter);
      run.scores.model = Model::textrank;
      break;
    }
    case Model::tfidf: {
      FrequencyMatrix fm = detail::document_frequency_matrix(doc, corpus, opts);
      TfIdfMatrix tm = tfidf_matrix(fm);
      run.scores = tfidf_sentence_scores(doc, tm, opts.tfidf_position, opts.count_form);
      break;
    }
    case Model::wordnet:
      run.matrix = wordnet_similarity_matrix(doc, res.lexicon, opts);
      run.has_matrix = true;
      break;
    case Model::glove:
      run.matrix = glove_similarity_matrix(doc, res.vectors, opts);
      run.has_matrix = true;
      break;
    case Model::embedding:
      run.matrix = embedding_similarity_matrix(doc, res.embeddings);
      run.has_matrix = true;
      break;
    case Model::ensemble:
      throw DataError("run_model: the ensemble is not a standalone model");
  }

  if (run.has_matrix) {
    if (strategy == RankStrategy::hcluster) {
      run.ranks = hierarchical_cluster_rank(run.matrix);
    } else {
      run.scores = relevance_scores(run.matrix);
      run.ranks = ranked_list(run.scores);
    }
  } else {
    run.ranks = ranked_list(run.scores);
  }
  run.summary = select_summary(run.ranks, doc, budget);
  return run;
}

}  // namespace hybridsumm
