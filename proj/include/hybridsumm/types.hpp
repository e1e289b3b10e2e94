// Core domain types shared across the summarization pipeline.
#pragma once

#include <cassert>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridsumm {

// Raised when an external resource (file, table, store) is missing or
// unreadable. The CLI maps this to exit code 2.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when input content is malformed or inconsistent (parse errors,
// dangling references, unknown ids). The CLI maps this to exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Pos { noun, verb, adjective, adverb, other };

inline char pos_tag_char(Pos p) {
  switch (p) {
    case Pos::noun: return 'n';
    case Pos::verb: return 'v';
    case Pos::adjective: return 'a';
    case Pos::adverb: return 'r';
    case Pos::other: return 'x';
  }
  return 'x';
}

inline Pos pos_from_char(char c) {
  switch (c) {
    case 'n': return Pos::noun;
    case 'v': return Pos::verb;
    case 'a': return Pos::adjective;
    case 'r': return Pos::adverb;
    case 'x': return Pos::other;
  }
  throw DataError(std::string("unknown POS tag '") + c + "'");
}

// Summarization models. Enumerator order is the canonical model order used
// for deterministic aggregation and output.
enum class Model {
  jaccard,
  cosine,
  textrank,
  tfidf,
  wordnet,
  glove,
  embedding,
  ensemble,
};

inline const std::vector<Model>& all_models() {
  static const std::vector<Model> models = {
      Model::jaccard, Model::cosine,  Model::textrank, Model::tfidf,
      Model::wordnet, Model::glove,   Model::embedding};
  return models;
}

inline std::string model_name(Model m) {
  switch (m) {
    case Model::jaccard: return "jaccard";
    case Model::cosine: return "cosine";
    case Model::textrank: return "textrank";
    case Model::tfidf: return "tfidf";
    case Model::wordnet: return "wordnet";
    case Model::glove: return "glove";
    case Model::embedding: return "embedding";
    case Model::ensemble: return "ensemble";
  }
  return "?";
}

inline Model model_from_name(const std::string& name) {
  for (Model m : all_models())
    if (model_name(m) == name) return m;
  if (name == "ensemble") return Model::ensemble;
  throw DataError("unknown model tag '" + name + "'");
}

struct Token {
  std::string surface;     // as written (post clean)
  std::string normalized;  // lowercased surface
  std::string stem;        // Porter stem of normalized
  std::string lemma;       // lexicon base form of normalized
  Pos pos = Pos::other;
  bool is_stopword = false;

  bool alphabetic() const {
    if (normalized.empty()) return false;
    for (char c : normalized)
      if ((c < 'a' || c > 'z') && c != '\'') return false;
    return true;
  }
};

struct Sentence {
  std::size_t index = 0;  // 0-based position within the document
  std::string raw;        // original text, untrimmed interior whitespace
  std::vector<Token> tokens;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  std::vector<std::string> vocabulary;  // distinct normalized words, first-seen order
};

// Dense row-major matrix of doubles. Small documents only, no sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> v_;
};

// n sentences x p retained words, integer occurrence counts.
struct FrequencyMatrix {
  std::vector<std::string> words;        // retained words, first-occurrence order
  std::vector<std::vector<int>> counts;  // counts[sentence][word]
  std::size_t sentence_count = 0;
  std::size_t retained = 0;
};

// n x n symmetric sentence-similarity matrix tagged with its producing model.
struct SimilarityMatrix {
  Model model = Model::jaccard;
  std::size_t size = 0;
  Matrix values;
};

struct RankVector {
  Model model = Model::jaccard;
  std::vector<double> scores;
};

// Sentence indices, best first.
struct RankedList {
  Model model = Model::jaccard;
  std::vector<std::size_t> order;
};

struct Budget {
  enum class Kind { sentences, words, chars };
  Kind kind = Kind::chars;
  std::size_t limit = 665;

  static Budget top_k(std::size_t k) { return {Kind::sentences, k}; }
  static Budget max_words(std::size_t w) { return {Kind::words, w}; }
  static Budget max_chars(std::size_t c) { return {Kind::chars, c}; }
};

struct Summary {
  std::string doc_id;
  std::vector<std::size_t> indices;  // chosen sentences, original document order
  std::string text;                  // sentences joined by single spaces
  Budget budget;
  bool budget_warning = false;       // set when even the top sentence did not fit
};

enum class WeightProvenance { uniform, trained, nearest };

inline std::string provenance_name(WeightProvenance p) {
  switch (p) {
    case WeightProvenance::uniform: return "uniform";
    case WeightProvenance::trained: return "trained";
    case WeightProvenance::nearest: return "nearest";
  }
  return "?";
}

// Per-model ensemble weights. Invariant: W_i >= 0 and sum W_i = 1.
struct ModelWeights {
  std::map<Model, double> weights;
  WeightProvenance provenance = WeightProvenance::uniform;

  std::size_t model_count() const { return weights.size(); }

  static ModelWeights uniform(const std::vector<Model>& models) {
    ModelWeights w;
    w.provenance = WeightProvenance::uniform;
    for (Model m : models) w.weights[m] = 1.0 / static_cast<double>(models.size());
    return w;
  }
};

struct CorpusProfile {
  std::string corpus_id;
  std::vector<double> cdoc;
  ModelWeights weights;
};

struct TrainingExample {
  Document doc;
  std::string gold;  // human-composed reference summary text
};

struct RougeScore {
  int n = 2;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

}  // namespace hybridsumm
