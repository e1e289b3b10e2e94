#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <deque>
#include <random>

#include "helpers.hpp"
#include "hybridsumm/pipeline.hpp"
#include "hybridsumm/semmodels.hpp"

using namespace hybridsumm;

namespace {

Token make_token(const std::string& word, Pos pos) {
  Token t;
  t.surface = word;
  t.normalized = word;
  t.stem = word;
  t.lemma = word;
  t.pos = pos;
  return t;
}

Sentence make_sentence(const std::vector<std::pair<std::string, Pos>>& words,
                       std::size_t index = 0) {
  Sentence s;
  s.index = index;
  for (const auto& [w, p] : words) {
    s.tokens.push_back(make_token(w, p));
    s.raw += (s.raw.empty() ? "" : " ") + w;
  }
  return s;
}

// Independent shortest-path oracle over the undirected hypernym graph,
// counting nodes on the path.
double bfs_path_similarity(const std::string& a, const std::string& b, const Lexicon& lex) {
  if (a == b) return 1.0;
  std::map<std::string, std::size_t> dist;
  std::deque<std::string> queue{a};
  dist[a] = 1;
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    std::vector<std::string> next = lex.synset(cur)->hypernyms;
    for (const std::string& h : lex.hyponyms(cur)) next.push_back(h);
    for (const std::string& n : next) {
      if (dist.count(n)) continue;
      dist[n] = dist[cur] + 1;
      if (n == b) return 1.0 / static_cast<double>(dist[n]);
      queue.push_back(n);
    }
  }
  return 0.0;
}

WordVectorTable tiny_table() {
  WordVectorTable t;
  t.dim = 3;
  t.vectors["storm"] = {1.0, 0.0, 0.0};
  t.vectors["harbor"] = {0.0, 1.0, 0.0};
  t.vectors["boat"] = {0.0, 0.0, 1.0};
  t.vectors["wall"] = {1.0, 1.0, 0.0};
  return t;
}

}  // namespace

TEST_CASE("lesk picks the gloss with maximal context overlap", "[semmodels]") {
  const Lexicon& lex = testutil::main_lexicon();

  // only one sense of "storm" exists -> forced choice
  Token storm = make_token("storm", Pos::noun);
  CHECK(lesk_disambiguate(storm, {}, lex) == std::optional<std::string>("storm.n.01"));

  // "catch" noun: sense 1 is about fish from the sea, sense 2 a hidden
  // drawback. A fishing context must select sense 1 even though both tie
  // on zero overlap otherwise.
  Token catch_tok = make_token("catch", Pos::noun);
  std::map<std::string, int> fishing = {{"fish", 1}, {"sea", 1}};
  CHECK(lesk_disambiguate(catch_tok, fishing, lex) ==
        std::optional<std::string>("catch.n.01"));

  std::map<std::string, int> bargaining = {{"offer", 1}, {"plan", 1}};
  CHECK(lesk_disambiguate(catch_tok, bargaining, lex) ==
        std::optional<std::string>("catch.n.02"));

  // zero overlap and ties fall back to the first-listed sense
  CHECK(lesk_disambiguate(catch_tok, {{"zzz", 3}}, lex) ==
        std::optional<std::string>("catch.n.01"));

  // no candidate synsets -> absent
  Token unknown = make_token("qwxy", Pos::noun);
  CHECK_FALSE(lesk_disambiguate(unknown, fishing, lex).has_value());
}

TEST_CASE("sentence disambiguation assigns senses to content tokens", "[semmodels]") {
  const Lexicon& lex = testutil::main_lexicon();
  Sentence s = make_sentence({{"the", Pos::other},
                              {"fleet", Pos::noun},
                              {"landed", Pos::verb},
                              {"catch", Pos::noun}});
  s.tokens[0].is_stopword = true;
  s.tokens[2].lemma = "land";
  SenseAssignment a = disambiguate_sentence(s, lex);
  REQUIRE(a.size() == 3);  // stopword dropped
  CHECK(a[0] == std::optional<std::string>("fleet.n.01"));
  CHECK(a[1] == std::optional<std::string>("land.v.01"));
  CHECK(a[2].has_value());
}

TEST_CASE("path similarity counts nodes on the shortest hypernym path", "[semmodels]") {
  const Lexicon& toy = testutil::toy_taxonomy();
  CHECK(synset_path_similarity("cat.n.01", "cat.n.01", toy) == 1.0);
  // cat -> feline -> animal -> canine -> dog: five nodes
  CHECK(synset_path_similarity("cat.n.01", "dog.n.01", toy) == Catch::Approx(0.2));
  // dog -> canine -> wolf: three nodes
  CHECK(synset_path_similarity("dog.n.01", "wolf.n.01", toy) ==
        Catch::Approx(1.0 / 3.0));
  // direct hypernym: two nodes
  CHECK(synset_path_similarity("dog.n.01", "canine.n.01", toy) == Catch::Approx(0.5));
  // missing synset -> 0
  CHECK(synset_path_similarity("dog.n.01", "ghost.n.01", toy) == 0.0);

  // disconnected hierarchies (noun tree vs verb root) in the main lexicon
  const Lexicon& lex = testutil::main_lexicon();
  CHECK(synset_path_similarity("storm.n.01", "go.v.01", lex) == 0.0);

  // every toy pair agrees with an independent BFS oracle and is symmetric
  for (const std::string& a : toy.load_order())
    for (const std::string& b : toy.load_order()) {
      double got = synset_path_similarity(a, b, toy);
      CHECK(got == Catch::Approx(bfs_path_similarity(a, b, toy)).margin(1e-12));
      CHECK(got == synset_path_similarity(b, a, toy));
      CHECK(got >= 0.0);
      CHECK(got <= 1.0);
      if (a == b) CHECK(got == 1.0);
      if (a != b) CHECK(got < 1.0);
    }
}

TEST_CASE("pair similarity matrix fills sense-by-sense entries", "[semmodels]") {
  const Lexicon& toy = testutil::toy_taxonomy();
  SenseAssignment a = {std::optional<std::string>("cat.n.01"),
                       std::optional<std::string>("dog.n.01")};
  SenseAssignment b = {std::optional<std::string>("cat.n.01"),
                       std::optional<std::string>("sparrow.n.01"),
                       std::nullopt};
  PairSimilarityMatrix s = pair_similarity_matrix(a, b, toy);
  REQUIRE(s.values.rows() == 2);
  REQUIRE(s.values.cols() == 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double want = 0.0;
      if (a[i] && b[j]) want = bfs_path_similarity(*a[i], *b[j], toy);
      CHECK(s.values.at(i, j) == Catch::Approx(want).margin(1e-12));
    }
  CHECK(s.values.at(0, 0) == 1.0);   // identical senses
  CHECK(s.values.at(0, 2) == 0.0);   // unassigned column
  CHECK(s.values.at(1, 2) == 0.0);

  // identical sequences -> unit diagonal
  PairSimilarityMatrix diag = pair_similarity_matrix(a, a, toy);
  CHECK(diag.values.at(0, 0) == 1.0);
  CHECK(diag.values.at(1, 1) == 1.0);

  // all senses unassigned -> zero matrix
  SenseAssignment none = {std::nullopt, std::nullopt};
  PairSimilarityMatrix zero = pair_similarity_matrix(none, none, toy);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(zero.values.at(i, j) == 0.0);
}

TEST_CASE("wordnet sentence similarity follows the thresholded dice form", "[semmodels]") {
  const Lexicon& toy = testutil::toy_taxonomy();
  Options opts;

  // identical three-content-word sentences: every pair matches at weight 1
  Sentence zoo = make_sentence(
      {{"cat", Pos::noun}, {"dog", Pos::noun}, {"sparrow", Pos::noun}});
  CHECK(wordnet_sentence_similarity(zoo, zoo, toy, opts) == Catch::Approx(0.5));

  // best match weight 0.2 < threshold 0.5 -> no qualifying pair
  Sentence cat = make_sentence({{"cat", Pos::noun}});
  Sentence sparrow = make_sentence({{"sparrow", Pos::noun}});
  CHECK(wordnet_sentence_similarity(cat, sparrow, toy, opts) == 0.0);

  // |A| = 2, |B| = 3, exactly one qualifying match -> 1/5
  Sentence a = make_sentence({{"cat", Pos::noun}, {"wolf", Pos::noun}});
  Sentence b = make_sentence(
      {{"cat", Pos::noun}, {"sparrow", Pos::noun}, {"snake", Pos::noun}});
  CHECK(wordnet_sentence_similarity(a, b, toy, opts) == Catch::Approx(0.2));

  // dice_classic doubles the quotient
  Options classic;
  classic.dice_classic = true;
  CHECK(wordnet_sentence_similarity(a, b, toy, classic) == Catch::Approx(0.4));

  // lowering the threshold admits weaker matches
  Options low;
  low.wordnet_threshold = 0.15;
  CHECK(wordnet_sentence_similarity(cat, sparrow, toy, low) == Catch::Approx(0.5));

  // both sentences empty of content tokens -> 0
  Sentence empty;
  CHECK(wordnet_sentence_similarity(empty, empty, toy, opts) == 0.0);
}

TEST_CASE("wordnet similarity matrix is symmetric with forced diagonal", "[semmodels]") {
  const Lexicon& toy = testutil::toy_taxonomy();
  Document doc;
  doc.id = "zoo";
  doc.sentences = {
      make_sentence({{"cat", Pos::noun}, {"dog", Pos::noun}}, 0),
      make_sentence({{"lion", Pos::noun}, {"wolf", Pos::noun}}, 1),
      make_sentence({{"qqq", Pos::other}}, 2),  // no content tokens
  };
  SimilarityMatrix sim = wordnet_similarity_matrix(doc, toy);
  CHECK(sim.model == Model::wordnet);
  REQUIRE(sim.size == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sim.values.at(i, i) == 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(sim.values.at(i, j) == sim.values.at(j, i));
      CHECK(sim.values.at(i, j) >= 0.0);
      CHECK(sim.values.at(i, j) <= 1.0);
    }
  }
  // hand trace for (0,1): pairs cat/lion 1/3, cat/wolf 0.2, dog/lion 0.2,
  // dog/wolf 1/3; best matching = {cat-lion, dog-wolf} total 2/3; no pair
  // reaches 0.5 -> similarity 0
  CHECK(sim.values.at(0, 1) == 0.0);
  CHECK(sim.values.at(0, 2) == 0.0);

  Options low;
  low.wordnet_threshold = 0.3;
  SimilarityMatrix lowsim = wordnet_similarity_matrix(doc, toy, low);
  CHECK(lowsim.values.at(0, 1) == Catch::Approx(0.5));  // both matches now qualify
}

TEST_CASE("glove sentence vectors average in-vocabulary occurrences", "[semmodels]") {
  WordVectorTable table = tiny_table();

  Sentence one = make_sentence({{"storm", Pos::noun}});
  SentenceVector sv = glove_sentence_vector(one, table);
  CHECK(sv.model == Model::glove);
  CHECK(sv.values == std::vector<double>{1.0, 0.0, 0.0});

  // the same word twice: f=2, |s|=2 -> still that word's vector
  Sentence twice = make_sentence({{"storm", Pos::noun}, {"storm", Pos::noun}});
  CHECK(glove_sentence_vector(twice, table).values == std::vector<double>{1.0, 0.0, 0.0});

  // all OOV -> zero vector
  Sentence oov = make_sentence({{"zzz", Pos::noun}});
  CHECK(glove_sentence_vector(oov, table).values == std::vector<double>{0.0, 0.0, 0.0});

  // mixed: (storm + wall)/2 = (1, 0.5, 0) with OOV tokens ignored
  Sentence mixed = make_sentence(
      {{"storm", Pos::noun}, {"wall", Pos::noun}, {"zzz", Pos::noun}});
  CHECK(glove_sentence_vector(mixed, table).values == std::vector<double>{1.0, 0.5, 0.0});

  // token order does not matter
  Sentence swapped = make_sentence(
      {{"zzz", Pos::noun}, {"wall", Pos::noun}, {"storm", Pos::noun}});
  CHECK(glove_sentence_vector(swapped, table).values ==
        glove_sentence_vector(mixed, table).values);

  // stopwords and non-content tokens are excluded under the default filter
  Sentence stopped = make_sentence({{"storm", Pos::noun}, {"boat", Pos::noun}});
  stopped.tokens[1].is_stopword = true;
  CHECK(glove_sentence_vector(stopped, table).values == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("glove lookup prefers the lemma and falls back to the surface", "[semmodels]") {
  WordVectorTable table;
  table.dim = 2;
  table.vectors["boat"] = {1.0, 0.0};
  table.vectors["harbors"] = {0.0, 1.0};

  Sentence s = make_sentence({{"boats", Pos::noun}, {"harbors", Pos::noun}});
  s.tokens[0].lemma = "boat";     // lemma hit
  s.tokens[1].lemma = "harbor";   // lemma miss -> normalized hit
  CHECK(glove_sentence_vector(s, table).values == std::vector<double>{0.5, 0.5});
}

TEST_CASE("glove similarity matrix matches independent recomputation", "[semmodels]") {
  WordVectorTable table = tiny_table();
  Document doc;
  doc.id = "d";
  doc.sentences = {
      make_sentence({{"storm", Pos::noun}, {"harbor", Pos::noun}}, 0),
      make_sentence({{"wall", Pos::noun}}, 1),
      make_sentence({{"zzz", Pos::noun}}, 2),
      make_sentence({{"storm", Pos::noun}, {"harbor", Pos::noun}}, 3),
  };
  SimilarityMatrix sim = glove_similarity_matrix(doc, table);
  REQUIRE(sim.size == 4);

  // oracle: dot products computed here from the same vectors
  auto cos = [](const std::vector<double>& u, const std::vector<double>& v) {
    double dot = 0, nu = 0, nv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      dot += u[i] * v[i];
      nu += u[i] * u[i];
      nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
  };
  std::vector<std::vector<double>> svec = {
      {0.5, 0.5, 0.0}, {1.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.5, 0.5, 0.0}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double want = (i == j) ? 1.0 : std::clamp(cos(svec[i], svec[j]), 0.0, 1.0);
      CHECK(sim.values.at(i, j) == Catch::Approx(want).margin(1e-8));
    }
  CHECK(sim.values.at(0, 3) == Catch::Approx(1.0).margin(1e-12));  // identical sentences
  CHECK(sim.values.at(0, 2) == 0.0);                               // against all-OOV
}

TEST_CASE("embedding similarity reads the sidecar store", "[semmodels]") {
  SentenceEmbeddingStore store;
  store.dim = 2;
  store.vectors[{"d", 0}] = {1.0, 0.0};
  store.vectors[{"d", 1}] = {0.0, 1.0};
  store.vectors[{"d", 2}] = {1.0, 0.0};

  Document doc;
  doc.id = "d";
  doc.sentences = {make_sentence({{"a", Pos::noun}}, 0),
                   make_sentence({{"b", Pos::noun}}, 1),
                   make_sentence({{"c", Pos::noun}}, 2)};
  SimilarityMatrix sim = embedding_similarity_matrix(doc, store);
  CHECK(sim.model == Model::embedding);
  CHECK(sim.values.at(0, 1) == 0.0);                               // orthogonal
  CHECK(sim.values.at(0, 2) == Catch::Approx(1.0).margin(1e-12));  // identical vectors
  for (std::size_t i = 0; i < 3; ++i) CHECK(sim.values.at(i, i) == 1.0);

  // missing embedding names the document and sentence index
  doc.sentences.push_back(make_sentence({{"d", Pos::noun}}, 3));
  CHECK_THROWS_WITH(embedding_similarity_matrix(doc, store),
                    Catch::Matchers::ContainsSubstring("d") &&
                        Catch::Matchers::ContainsSubstring("3"));
}

TEST_CASE("token filter widens participation when set to all", "[semmodels]") {
  const Lexicon& toy = testutil::toy_taxonomy();
  // "qqq" tags other: excluded under content, included under all
  Sentence mixed = make_sentence({{"cat", Pos::noun}, {"qqq", Pos::other}});
  SenseAssignment content = disambiguate_sentence(mixed, toy, "content");
  SenseAssignment all = disambiguate_sentence(mixed, toy, "all");
  CHECK(content.size() == 1);
  CHECK(all.size() == 2);
  CHECK_FALSE(all[1].has_value());  // no synset for qqq
}

TEST_CASE("semantic matrices on the mini corpus satisfy similarity invariants",
          "[semmodels]") {
  const Lexicon& lex = testutil::main_lexicon();
  WordVectorTable table = load_vectors(testutil::data_file("vectors.txt"), 16);
  const Document& doc = testutil::mini_corpus()[0];

  for (const SimilarityMatrix& sim :
       {wordnet_similarity_matrix(doc, lex), glove_similarity_matrix(doc, table)}) {
    REQUIRE(sim.size == doc.sentences.size());
    for (std::size_t i = 0; i < sim.size; ++i) {
      CHECK(sim.values.at(i, i) == 1.0);
      for (std::size_t j = 0; j < sim.size; ++j) {
        CHECK(sim.values.at(i, j) == sim.values.at(j, i));
        CHECK(sim.values.at(i, j) >= 0.0);
        CHECK(sim.values.at(i, j) <= 1.0);
      }
    }
  }
}
