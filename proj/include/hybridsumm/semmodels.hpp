// Semantic similarity models: WordNet-style sentence similarity (Lesk WSD,
// taxonomy path distance, bipartite matching, Dice), GloVe sentence vectors,
// and precomputed sentence-embedding similarity.
#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hybridsumm/config.hpp"
#include "hybridsumm/hungarian.hpp"
#include "hybridsumm/lexicon.hpp"
#include "hybridsumm/preprocess.hpp"
#include "hybridsumm/statmodels.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

// Synset choice per participating token of one sentence; absent when the
// lexicon has no sense for the token.
using SenseAssignment = std::vector<std::optional<std::string>>;

struct PairSimilarityMatrix {
  Matrix values;  // |tokens(A)| x |tokens(B)|
};

struct SentenceVector {
  Model model = Model::glove;
  std::vector<double> values;
};

namespace detail {

inline bool is_content_pos(Pos p) {
  return p == Pos::noun || p == Pos::verb || p == Pos::adjective || p == Pos::adverb;
}

// Tokens that participate in the semantic models. "content" keeps open-class
// non-stopwords; "all" keeps every non-stopword token.
inline std::vector<std::size_t> semantic_token_indices(const Sentence& s,
                                                       const std::string& filter) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    if (t.is_stopword) continue;
    if (filter == "content" && !is_content_pos(t.pos)) continue;
    idx.push_back(i);
  }
  return idx;
}

// Lemma multiset of free text (glosses, usage examples).
inline std::map<std::string, int> lemma_bag(const std::string& text, const Lexicon& lexicon) {
  std::map<std::string, int> bag;
  for (const Token& t : tokenize_words(clean(text))) {
    if (!t.alphabetic()) continue;
    ++bag[lemmatize_any(t.normalized, lexicon)];
  }
  return bag;
}

inline int bag_overlap(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
  int n = 0;
  for (const auto& [w, c] : a) {
    auto it = b.find(w);
    if (it != b.end()) n += std::min(c, it->second);
  }
  return n;
}

}  // namespace detail

// Simplified Lesk: among the candidate synsets for (token.lemma, token.pos),
// pick the one whose gloss+example lemma bag overlaps the context bag most.
// Ties and all-zero overlap fall back to the first-listed (most frequent)
// sense. No candidates -> absent.
inline std::optional<std::string> lesk_disambiguate(const Token& token,
                                                    const std::map<std::string, int>& context,
                                                    const Lexicon& lexicon) {
  const std::vector<std::string>* cand = lexicon.senses(token.lemma, token.pos);
  if (cand == nullptr || cand->empty()) return std::nullopt;
  std::string best = (*cand)[0];
  int best_overlap = 0;
  for (const std::string& id : *cand) {
    const Synset* syn = lexicon.synset(id);
    if (syn == nullptr) continue;
    std::string text = syn->gloss;
    for (const std::string& ex : syn->examples) {
      text += ' ';
      text += ex;
    }
    int overlap = detail::bag_overlap(detail::lemma_bag(text, lexicon), context);
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = id;
    }
  }
  return best;
}

// Sense choice for every participating token of the sentence. The context
// for token k is the lemma bag of the other participating tokens.
inline SenseAssignment disambiguate_sentence(const Sentence& s, const Lexicon& lexicon,
                                             const std::string& token_filter = "content") {
  std::vector<std::size_t> idx = detail::semantic_token_indices(s, token_filter);
  std::map<std::string, int> all;
  for (std::size_t i : idx) ++all[s.tokens[i].lemma];

  SenseAssignment assignment;
  assignment.reserve(idx.size());
  for (std::size_t i : idx) {
    std::map<std::string, int> context = all;
    auto it = context.find(s.tokens[i].lemma);
    if (it != context.end() && --(it->second) == 0) context.erase(it);
    assignment.push_back(lesk_disambiguate(s.tokens[i], context, lexicon));
  }
  return assignment;
}

// sd(s1, s2) = 1 / (number of nodes on the shortest path between the synsets
// in the undirected hypernym graph). Identical synsets sit on a 1-node path,
// so sd = 1. Disconnected synsets -> 0.
inline double synset_path_similarity(const std::string& s1, const std::string& s2,
                                     const Lexicon& lexicon) {
  if (lexicon.synset(s1) == nullptr || lexicon.synset(s2) == nullptr) return 0.0;
  if (s1 == s2) return 1.0;
  std::map<std::string, std::size_t> dist;
  std::deque<std::string> queue;
  dist[s1] = 1;
  queue.push_back(s1);
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    std::size_t d = dist[cur];
    const Synset* syn = lexicon.synset(cur);
    std::vector<std::string> neighbors = syn->hypernyms;
    const std::vector<std::string>& hypo = lexicon.hyponyms(cur);
    neighbors.insert(neighbors.end(), hypo.begin(), hypo.end());
    for (const std::string& next : neighbors) {
      if (dist.count(next)) continue;
      dist[next] = d + 1;
      if (next == s2) return 1.0 / static_cast<double>(d + 1);
      queue.push_back(next);
    }
  }
  return 0.0;
}

// S_{m x n}: path similarity between every assigned sense of sentence A and
// of sentence B. Tokens without a sense contribute zero rows/columns.
inline PairSimilarityMatrix pair_similarity_matrix(const SenseAssignment& a,
                                                   const SenseAssignment& b,
                                                   const Lexicon& lexicon) {
  PairSimilarityMatrix s;
  s.values = Matrix(a.size(), b.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      s.values.at(i, j) = synset_path_similarity(*a[i], *b[j], lexicon);
    }
  }
  return s;
}

namespace detail {

// Memo for synset pair distances; key is the ordered id pair.
using SdCache = std::map<std::pair<std::string, std::string>, double>;

inline double cached_path_similarity(const std::string& s1, const std::string& s2,
                                     const Lexicon& lexicon, SdCache* cache) {
  if (cache == nullptr) return synset_path_similarity(s1, s2, lexicon);
  std::pair<std::string, std::string> key = s1 <= s2 ? std::make_pair(s1, s2)
                                                     : std::make_pair(s2, s1);
  auto it = cache->find(key);
  if (it != cache->end()) return it->second;
  double v = synset_path_similarity(key.first, key.second, lexicon);
  (*cache)[key] = v;
  return v;
}

inline PairSimilarityMatrix pair_similarity_matrix_cached(const SenseAssignment& a,
                                                          const SenseAssignment& b,
                                                          const Lexicon& lexicon,
                                                          SdCache* cache) {
  PairSimilarityMatrix s;
  s.values = Matrix(a.size(), b.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      s.values.at(i, j) = cached_path_similarity(*a[i], *b[j], lexicon, cache);
    }
  }
  return s;
}

inline double wordnet_similarity_from_assignments(const SenseAssignment& a,
                                                  const SenseAssignment& b,
                                                  const Lexicon& lexicon, const Options& opts,
                                                  SdCache* cache) {
  const std::size_t size_a = a.size();
  const std::size_t size_b = b.size();
  if (size_a == 0 && size_b == 0) return 0.0;
  PairSimilarityMatrix s = pair_similarity_matrix_cached(a, b, lexicon, cache);
  Matching m = hungarian_max_matching(s.values);
  std::size_t matched = 0;
  for (const MatchedPair& p : m.pairs)
    if (p.weight >= opts.wordnet_threshold) ++matched;
  double sim = static_cast<double>(matched) / static_cast<double>(size_a + size_b);
  if (opts.dice_classic) sim *= 2.0;
  return sim;
}

}  // namespace detail

// Dice-style sentence similarity over the best sense-to-sense matching:
// count of matched pairs at weight >= threshold, divided by |A| + |B|
// (participating-token counts). dice_classic doubles the quotient.
inline double wordnet_sentence_similarity(const Sentence& a, const Sentence& b,
                                          const Lexicon& lexicon,
                                          const Options& opts = Options{}) {
  SenseAssignment sa = disambiguate_sentence(a, lexicon, opts.token_filter);
  SenseAssignment sb = disambiguate_sentence(b, lexicon, opts.token_filter);
  return detail::wordnet_similarity_from_assignments(sa, sb, lexicon, opts, nullptr);
}

// Sim3: WordNet similarity for every sentence pair. WSD runs once per
// sentence, then each unordered pair is evaluated once and mirrored; the
// diagonal is forced to 1.
inline SimilarityMatrix wordnet_similarity_matrix(const Document& doc, const Lexicon& lexicon,
                                                  const Options& opts = Options{}) {
  const std::size_t n = doc.sentences.size();
  SimilarityMatrix sim;
  sim.model = Model::wordnet;
  sim.size = n;
  sim.values = Matrix(n, n, 0.0);

  std::vector<SenseAssignment> assignments;
  assignments.reserve(n);
  for (const Sentence& s : doc.sentences)
    assignments.push_back(disambiguate_sentence(s, lexicon, opts.token_filter));

  detail::SdCache cache;
  for (std::size_t i = 0; i < n; ++i) {
    sim.values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = clamp01(detail::wordnet_similarity_from_assignments(
          assignments[i], assignments[j], lexicon, opts, &cache));
      sim.values.at(i, j) = v;
      sim.values.at(j, i) = v;
    }
  }
  return sim;
}

// SVec(s) = (1/|s|) * sum over distinct in-vocabulary words of f * vec(w),
// where |s| counts in-vocabulary participating-token occurrences. Lookup
// tries the lemma first, then the normalized surface form. All tokens out
// of vocabulary -> zero vector.
inline SentenceVector glove_sentence_vector(const Sentence& s, const WordVectorTable& table,
                                            const std::string& token_filter = "content") {
  SentenceVector sv;
  sv.model = Model::glove;
  sv.values.assign(table.dim, 0.0);

  std::map<std::string, int> freq;  // resolved vocabulary key -> occurrences
  for (std::size_t i : detail::semantic_token_indices(s, token_filter)) {
    const Token& t = s.tokens[i];
    if (table.find(t.lemma) != nullptr)
      ++freq[t.lemma];
    else if (table.find(t.normalized) != nullptr)
      ++freq[t.normalized];
  }

  int total = 0;
  for (const auto& [word, f] : freq) {
    const std::vector<double>* vec = table.find(word);
    for (std::size_t d = 0; d < table.dim; ++d)
      sv.values[d] += static_cast<double>(f) * (*vec)[d];
    total += f;
  }
  if (total > 0)
    for (double& v : sv.values) v /= static_cast<double>(total);
  return sv;
}

// Sim4: cosine similarity of GloVe sentence vectors, clamped to [0,1];
// diagonal forced to 1.
inline SimilarityMatrix glove_similarity_matrix(const Document& doc, const WordVectorTable& table,
                                                const Options& opts = Options{}) {
  const std::size_t n = doc.sentences.size();
  SimilarityMatrix sim;
  sim.model = Model::glove;
  sim.size = n;
  sim.values = Matrix(n, n, 0.0);

  std::vector<SentenceVector> vecs;
  vecs.reserve(n);
  for (const Sentence& s : doc.sentences)
    vecs.push_back(glove_sentence_vector(s, table, opts.token_filter));

  for (std::size_t i = 0; i < n; ++i) {
    sim.values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = clamp01(cosine_similarity(vecs[i].values, vecs[j].values));
      sim.values.at(i, j) = v;
      sim.values.at(j, i) = v;
    }
  }
  return sim;
}

// Sim5: cosine similarity of externally produced sentence embeddings,
// clamped to [0,1]; diagonal forced to 1. Every sentence must have a stored
// vector.
inline SimilarityMatrix embedding_similarity_matrix(const Document& doc,
                                                    const SentenceEmbeddingStore& store) {
  const std::size_t n = doc.sentences.size();
  SimilarityMatrix sim;
  sim.model = Model::embedding;
  sim.size = n;
  sim.values = Matrix(n, n, 0.0);

  std::vector<const std::vector<double>*> vecs(n, nullptr);
  for (std::size_t i = 0; i < n; ++i) {
    vecs[i] = store.find(doc.id, i);
    if (vecs[i] == nullptr)
      throw DataError("embedding_similarity_matrix: no embedding for document '" + doc.id +
                      "' sentence " + std::to_string(i));
  }

  for (std::size_t i = 0; i < n; ++i) {
    sim.values.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = clamp01(cosine_similarity(*vecs[i], *vecs[j]));
      sim.values.at(i, j) = v;
      sim.values.at(j, i) = v;
    }
  }
  return sim;
}

}  // namespace hybridsumm
