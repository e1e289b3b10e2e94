// Consensus summarization: cWeight sentence scoring over per-model
// summaries, F1-based weight training, corpus vectors, and nearest-profile
// weight selection with JSON persistence.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridsumm/evaluate.hpp"
#include "hybridsumm/pipeline.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

// cWeight(s_i) = sum over models of W_model * B(model, s_i), where B is 1
// when the model's summary contains sentence i.
inline RankVector cweight(const std::map<Model, Summary>& summaries, const ModelWeights& weights,
                          std::size_t sentence_count) {
  RankVector rv;
  rv.model = Model::ensemble;
  rv.scores.assign(sentence_count, 0.0);
  for (const auto& [model, summary] : summaries) {
    auto it = weights.weights.find(model);
    if (it == weights.weights.end())
      throw DataError("cweight: no weight for model '" + std::string(model_name(model)) + "'");
    for (std::size_t idx : summary.indices)
      if (idx < sentence_count) rv.scores[idx] += it->second;
  }
  return rv;
}

struct EnsembleResult {
  std::vector<ModelRun> runs;  // one per model, in the order given
  RankVector scores;           // cWeight per sentence
  Summary summary;
};

// Consensus summary: every model runs standalone under the same budget, the
// sentences each model selected are combined through cweight, and the
// candidates (cweight > 0 — sentences at least one model chose) are ranked
// by score, then by the best rank any single model gave them, then by
// index.
inline EnsembleResult ensemble_summarize(const Document& doc, const std::vector<Document>& corpus,
                                         const std::vector<Model>& models,
                                         const ModelWeights& weights, const Resources& res,
                                         const Options& opts, RankStrategy strategy,
                                         const Budget& budget) {
  EnsembleResult result;
  std::map<Model, Summary> summaries;
  for (Model m : models) {
    result.runs.push_back(run_model(doc, corpus, m, res, opts, strategy, budget));
    summaries[m] = result.runs.back().summary;
  }

  const std::size_t n = doc.sentences.size();
  result.scores = cweight(summaries, weights, n);

  // Best (smallest) rank position each sentence reaches in any model.
  std::vector<std::size_t> best_rank(n, n);
  for (const ModelRun& run : result.runs)
    for (std::size_t pos = 0; pos < run.ranks.order.size(); ++pos) {
      std::size_t idx = run.ranks.order[pos];
      if (idx < n) best_rank[idx] = std::min(best_rank[idx], pos);
    }

  RankedList order;
  order.model = Model::ensemble;
  for (std::size_t i = 0; i < n; ++i)
    if (result.scores.scores[i] > 0.0) order.order.push_back(i);
  std::stable_sort(order.order.begin(), order.order.end(), [&](std::size_t a, std::size_t b) {
    if (result.scores.scores[a] != result.scores.scores[b])
      return result.scores.scores[a] > result.scores.scores[b];
    return best_rank[a] < best_rank[b];
  });

  result.summary = select_summary(order, doc, budget);
  return result;
}

struct TrainReport {
  ModelWeights weights;
  std::map<Model, std::vector<double>> f1_by_model;  // per training example
  std::vector<std::string> warnings;
};

namespace detail {

// Sentence-level F1: normalized sentence strings as units.
inline double sentence_f1(const std::string& candidate, const std::string& gold,
                          const std::set<std::string>& abbreviations) {
  auto bag = [&](const std::string& text) {
    std::map<std::string, int> b;
    for (const Sentence& s : split_sentences(text, abbreviations)) {
      std::string norm;
      for (const Token& t : tokenize_words(clean(s.raw))) {
        if (!norm.empty()) norm += ' ';
        norm += t.normalized;
      }
      ++b[norm];
    }
    return b;
  };
  std::map<std::string, int> c = bag(candidate), g = bag(gold);
  int c_total = 0, g_total = 0, matched = 0;
  for (const auto& [s, k] : c) c_total += k;
  for (const auto& [s, k] : g) g_total += k;
  for (const auto& [s, k] : c) {
    auto it = g.find(s);
    if (it != g.end()) matched += std::min(k, it->second);
  }
  if (c_total == 0 || g_total == 0) return 0.0;
  return f1(static_cast<double>(matched) / c_total, static_cast<double>(matched) / g_total);
}

inline double training_f1(const std::string& candidate, const std::string& gold,
                          const Options& opts) {
  if (opts.train_f1 == "sentence")
    return sentence_f1(candidate, gold, opts.abbreviation_set());
  int n = opts.train_f1 == "unigram" ? 1 : 2;
  return rouge_n(candidate, {gold}, n, opts.rouge_stem).f1;
}

}  // namespace detail

// W_model = mean F1 of the model's standalone summaries against the gold
// summaries, normalized to sum to 1 (normalize_weights=false keeps the raw
// means). A model failure on one document contributes F1 = 0 plus a
// warning.
inline TrainReport train_weights(const std::vector<TrainingExample>& examples,
                                 const std::vector<Model>& models, const Resources& res,
                                 const Options& opts, RankStrategy strategy,
                                 const Budget& budget) {
  if (examples.empty()) throw DataError("train_weights: at least one training example is required");
  if (models.empty()) throw DataError("train_weights: at least one model is required");

  std::vector<Document> corpus;
  corpus.reserve(examples.size());
  for (const TrainingExample& ex : examples) corpus.push_back(ex.doc);

  TrainReport report;
  report.weights.provenance = WeightProvenance::trained;
  for (Model m : models) {
    std::vector<double>& f1s = report.f1_by_model[m];
    for (const TrainingExample& ex : examples) {
      double f = 0.0;
      try {
        ModelRun run = run_model(ex.doc, corpus, m, res, opts, strategy, budget);
        f = detail::training_f1(run.summary.text, ex.gold, opts);
      } catch (const std::exception& e) {
        report.warnings.push_back("model '" + std::string(model_name(m)) + "' failed on '" +
                                  ex.doc.id + "': " + e.what());
      }
      f1s.push_back(f);
    }
    double mean = 0.0;
    for (double f : f1s) mean += f;
    mean /= static_cast<double>(f1s.size());
    report.weights.weights[m] = mean;
  }

  if (opts.normalize_weights) {
    double sum = 0.0;
    for (const auto& [m, w] : report.weights.weights) sum += w;
    if (sum > 0.0) {
      for (auto& [m, w] : report.weights.weights) w /= sum;
    } else {
      report.warnings.push_back("all models scored F1 = 0; falling back to uniform weights");
      for (auto& [m, w] : report.weights.weights)
        w = 1.0 / static_cast<double>(report.weights.weights.size());
    }
  }
  return report;
}

// Mean of the document's GloVe sentence vectors; zero vector (plus warning
// slot) when every sentence is out of vocabulary.
inline std::vector<double> document_vector(const Document& doc, const WordVectorTable& table,
                                           const std::string& token_filter = "content") {
  std::vector<double> acc(table.dim, 0.0);
  if (doc.sentences.empty()) return acc;
  for (const Sentence& s : doc.sentences) {
    SentenceVector sv = glove_sentence_vector(s, table, token_filter);
    for (std::size_t d = 0; d < table.dim; ++d) acc[d] += sv.values[d];
  }
  for (double& v : acc) v /= static_cast<double>(doc.sentences.size());
  return acc;
}

// cDocs = sum over documents of the document vector.
inline std::vector<double> corpus_vector(const std::vector<Document>& docs,
                                         const WordVectorTable& table,
                                         const std::string& token_filter = "content",
                                         std::vector<std::string>* warnings = nullptr) {
  if (docs.empty()) throw DataError("corpus_vector: at least one document is required");
  std::vector<double> acc(table.dim, 0.0);
  for (const Document& doc : docs) {
    std::vector<double> dv = document_vector(doc, table, token_filter);
    bool all_zero = true;
    for (double v : dv)
      if (v != 0.0) all_zero = false;
    if (all_zero && warnings != nullptr)
      warnings->push_back("document '" + doc.id + "' contributed a zero vector (out-of-vocabulary)");
    for (std::size_t d = 0; d < table.dim; ++d) acc[d] += dv[d];
  }
  return acc;
}

// Weights of the stored profile whose cdoc is most cosine-similar to the
// query document's vector; ties keep the first-listed profile.
inline ModelWeights nearest_corpus_weights(const Document& doc,
                                           const std::vector<CorpusProfile>& profiles,
                                           const WordVectorTable& table,
                                           const std::string& token_filter = "content") {
  if (profiles.empty()) throw DataError("nearest_corpus_weights: profile list is empty");
  std::vector<double> qv = document_vector(doc, table, token_filter);
  std::size_t best = 0;
  double best_sim = -2.0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (profiles[i].cdoc.size() != qv.size())
      throw DataError("profile '" + profiles[i].corpus_id + "' has dimension " +
                      std::to_string(profiles[i].cdoc.size()) + ", word vectors have " +
                      std::to_string(qv.size()));
    double sim = cosine_similarity(qv, profiles[i].cdoc);
    if (sim > best_sim) {
      best_sim = sim;
      best = i;
    }
  }
  ModelWeights w = profiles[best].weights;
  w.provenance = WeightProvenance::nearest;
  return w;
}

// ---- profile persistence ----

inline nlohmann::ordered_json profile_to_json(const CorpusProfile& p) {
  nlohmann::ordered_json j;
  j["corpus_id"] = p.corpus_id;
  j["cdoc"] = p.cdoc;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& [m, v] : p.weights.weights) w[std::string(model_name(m))] = v;
  j["weights"] = w;
  return j;
}

inline std::string profiles_to_json(const std::vector<CorpusProfile>& profiles) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CorpusProfile& p : profiles) arr.push_back(profile_to_json(p));
  return arr.dump(2) + "\n";
}

inline std::vector<CorpusProfile> profiles_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("profile JSON: ") + e.what());
  }
  if (!j.is_array()) throw DataError("profile JSON: expected a top-level array");
  std::vector<CorpusProfile> profiles;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("corpus_id") || !entry.contains("cdoc") ||
        !entry.contains("weights"))
      throw DataError("profile JSON: each entry needs corpus_id, cdoc, weights");
    CorpusProfile p;
    try {
      p.corpus_id = entry.at("corpus_id").get<std::string>();
      p.cdoc = entry.at("cdoc").get<std::vector<double>>();
      for (const auto& [name, value] : entry.at("weights").items())
        p.weights.weights[model_from_name(name)] = value.get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("profile JSON: ") + e.what());
    }
    p.weights.provenance = WeightProvenance::trained;
    profiles.push_back(std::move(p));
  }
  return profiles;
}

inline std::vector<CorpusProfile> load_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open profile file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return profiles_from_json(ss.str());
}

inline void save_profiles(const std::string& path, const std::vector<CorpusProfile>& profiles) {
  std::ofstream out(path);
  if (!out) throw ResourceError("cannot write profile file: " + path);
  out << profiles_to_json(profiles);
}

}  // namespace hybridsumm
