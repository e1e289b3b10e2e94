#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "helpers.hpp"
#include "hybridsumm/pipeline.hpp"
#include "hybridsumm/statmodels.hpp"

using namespace hybridsumm;
namespace fs = std::filesystem;

namespace {

std::string shared_flags() {
  return " --stopwords " + testutil::data_file("stopwords.txt") + " --lexicon " +
         testutil::data_file("lexicon.txt") + " --vectors " +
         testutil::data_file("vectors.txt") + " --embeddings " +
         testutil::data_file("minicorpus.emb");
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::string dir_bytes(const std::string& dir) {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir)) paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::string all;
  for (const auto& p : paths) {
    all += p.filename().string();
    all += '\0';
    all += testutil::read_file(p.string());
    all += '\0';
  }
  return all;
}

}  // namespace

TEST_CASE("summarize writes a top-k summary per document", "[cli]") {
  std::string out = testutil::scratch_dir() + "/cli_k3";
  auto r = testutil::run_cli("summarize " + testutil::data_file("corpus/doc01.txt") +
                             " --models textrank --k 3 --stopwords " +
                             testutil::data_file("stopwords.txt") + " --out " + out);
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  auto summary = lines_of(testutil::read_file(out + "/doc01.txt"));
  CHECK(summary.size() == 3);
}

TEST_CASE("summarize reports missing resources with exit 2", "[cli]") {
  auto missing_vectors =
      testutil::run_cli("summarize " + testutil::data_file("corpus/doc01.txt") +
                        " --models glove --stopwords " + testutil::data_file("stopwords.txt"));
  CHECK(missing_vectors.code == 2);
  CHECK(missing_vectors.err.find("--vectors") != std::string::npos);

  auto missing_input = testutil::run_cli("summarize /nonexistent/path.txt --models textrank");
  CHECK(missing_input.code == 2);
}

TEST_CASE("usage and data errors map to exit codes 1 and 3", "[cli]") {
  CHECK(testutil::run_cli("").code == 1);                 // no subcommand
  CHECK(testutil::run_cli("frobnicate").code == 1);       // unknown subcommand
  CHECK(testutil::run_cli("summarize").code == 1);        // missing inputs
  CHECK(testutil::run_cli("summarize x --bogus").code == 1);

  auto unknown_model =
      testutil::run_cli("summarize " + testutil::data_file("corpus/doc01.txt") +
                        " --models warp --stopwords " + testutil::data_file("stopwords.txt"));
  CHECK(unknown_model.code == 3);

  auto ensemble_tag =
      testutil::run_cli("summarize " + testutil::data_file("corpus/doc01.txt") +
                        " --models ensemble --stopwords " +
                        testutil::data_file("stopwords.txt"));
  CHECK(ensemble_tag.code == 3);
}

TEST_CASE("eval scores directories and appends a mean row", "[cli]") {
  std::string cand = testutil::scratch_dir() + "/eval_cand";
  std::string ref = testutil::scratch_dir() + "/eval_ref";
  fs::create_directories(cand);
  fs::create_directories(ref);
  testutil::write_file(cand + "/a.txt", "the storm broke the harbor wall\n");
  testutil::write_file(ref + "/a.txt", "the storm broke the harbor wall\n");
  testutil::write_file(cand + "/b.txt", "alpha beta gamma delta\n");
  testutil::write_file(ref + "/b.txt", "epsilon zeta eta theta\n");

  auto r = testutil::run_cli("eval " + cand + " " + ref + " --n 2");
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);  // header, a, b, MEAN
  CHECK(lines[0] == "doc\trouge2_recall\tprecision\tf1");
  CHECK(lines[1].substr(0, 2) == "a\t");
  CHECK(lines[1].find("1.000000") != std::string::npos);
  CHECK(lines[2].substr(0, 2) == "b\t");
  CHECK(lines[2].find("0.000000") != std::string::npos);
  CHECK(lines[3].substr(0, 5) == "MEAN\t");
  CHECK(lines[3].find("0.500000") != std::string::npos);
}

TEST_CASE("eval skips unpaired files with a warning", "[cli]") {
  std::string cand = testutil::scratch_dir() + "/pair_cand";
  std::string ref = testutil::scratch_dir() + "/pair_ref";
  fs::create_directories(cand);
  fs::create_directories(ref);
  testutil::write_file(cand + "/shared.txt", "common text here\n");
  testutil::write_file(ref + "/shared.txt", "common text here\n");
  testutil::write_file(cand + "/only_cand.txt", "orphan\n");
  testutil::write_file(ref + "/only_ref.txt", "orphan\n");

  auto r = testutil::run_cli("eval " + cand + " " + ref);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("only_cand") != std::string::npos);
  CHECK(r.err.find("only_ref") != std::string::npos);
  CHECK(lines_of(r.out).size() == 3);  // header, shared, MEAN
}

TEST_CASE("inspect dumps match the library computation byte for byte", "[cli]") {
  auto r = testutil::run_cli("inspect " + testutil::data_file("corpus/doc01.txt") +
                             " --dump textrank --stopwords " +
                             testutil::data_file("stopwords.txt") + " --lexicon " +
                             testutil::data_file("lexicon.txt"));
  CAPTURE(r.err);
  REQUIRE(r.code == 0);

  // library-side replica of the same pipeline
  Document doc = testutil::make_document(
      "doc01", testutil::read_file(testutil::data_file("corpus/doc01.txt")));
  Resources res;
  res.stopwords = testutil::stopwords();
  Options opts;
  ModelRun run = run_model(doc, {doc}, Model::textrank, res, opts, RankStrategy::rscore,
                           Budget::max_chars(665));
  std::string expect = "# textrank\n";
  for (std::size_t i = 0; i < run.scores.scores.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%zu\t%.17g\n", i, run.scores.scores[i]);
    expect += buf;
  }
  CHECK(r.out == expect);

  // scores sum to one
  double sum = 0.0;
  for (double s : run.scores.scores) sum += s;
  CHECK(sum == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("inspect emits square similarity matrices", "[cli]") {
  std::string doc = testutil::scratch_file(
      "inspect/tiny.txt",
      "The storm broke the wall. The wall protected the harbor. Boats left the harbor.");
  auto r = testutil::run_cli("inspect " + doc + " --dump sim2 --stopwords " +
                             testutil::data_file("stopwords.txt"));
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);  // "# sim2" + 3 rows
  CHECK(lines[0] == "# sim2");
  for (int i = 1; i <= 3; ++i) {
    std::istringstream row(lines[i]);
    int fields = 0;
    std::string cell;
    while (std::getline(row, cell, '\t')) ++fields;
    CHECK(fields == 3);
  }

  auto bad = testutil::run_cli("inspect " + doc + " --dump simX --stopwords " +
                               testutil::data_file("stopwords.txt"));
  CHECK(bad.code == 3);
}

TEST_CASE("train writes a normalized profile and favors the gold model", "[cli]") {
  // gold directory = textrank standalone outputs
  std::string gold = testutil::scratch_dir() + "/train_gold";
  auto seed = testutil::run_cli("summarize " + testutil::data_file("corpus") +
                                " --models textrank --chars 665" + shared_flags() +
                                " --out " + gold);
  REQUIRE(seed.code == 0);

  std::string profile_path = testutil::scratch_dir() + "/train_profiles.json";
  auto r = testutil::run_cli("train " + testutil::data_file("corpus") + " " + gold +
                             " --models jaccard,textrank,tfidf --chars 665" + shared_flags() +
                             " --profiles " + profile_path + " --corpus-id mini");
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("corpus\tmini") != std::string::npos);

  auto json = nlohmann::json::parse(testutil::read_file(profile_path));
  REQUIRE(json.is_array());
  REQUIRE(json.size() == 1);
  CHECK(json[0]["corpus_id"] == "mini");
  const auto& weights = json[0]["weights"];
  double sum = 0.0;
  for (const auto& [name, value] : weights.items()) sum += value.get<double>();
  CHECK(sum == Catch::Approx(1.0).margin(1e-9));
  CHECK(weights["textrank"].get<double>() > weights["jaccard"].get<double>());
  CHECK(weights["textrank"].get<double>() > weights["tfidf"].get<double>());
  CHECK(json[0]["cdoc"].size() == 16);

  // retraining under the same corpus id replaces the entry
  auto again = testutil::run_cli("train " + testutil::data_file("corpus") + " " + gold +
                                 " --models textrank --chars 665" + shared_flags() +
                                 " --profiles " + profile_path + " --corpus-id mini");
  REQUIRE(again.code == 0);
  auto json2 = nlohmann::json::parse(testutil::read_file(profile_path));
  REQUIRE(json2.size() == 1);
  CHECK(json2[0]["weights"].size() == 1);

  // profiles then steer summarize
  auto steered = testutil::run_cli("summarize " + testutil::data_file("corpus/doc01.txt") +
                                   " --models textrank --chars 665" + shared_flags() +
                                   " --profiles " + profile_path);
  CHECK(steered.code == 0);

  // empty gold directory is a data error
  std::string empty = testutil::scratch_dir() + "/train_gold_empty";
  fs::create_directories(empty);
  auto no_gold = testutil::run_cli("train " + testutil::data_file("corpus") + " " + empty +
                                   " --models textrank --chars 665" + shared_flags() +
                                   " --profiles " + profile_path);
  CHECK(no_gold.code == 3);

  // train requires vectors for the corpus vector
  auto no_vectors = testutil::run_cli("train " + testutil::data_file("corpus") + " " + gold +
                                      " --models textrank --chars 665 --stopwords " +
                                      testutil::data_file("stopwords.txt"));
  CHECK(no_vectors.code == 2);
}

TEST_CASE("summaries are deterministic and job-count independent", "[cli]") {
  std::string base = " --models jaccard,textrank,tfidf --rank rscore --chars 665" +
                     shared_flags() + " ";
  std::string out1 = testutil::scratch_dir() + "/det_1";
  std::string out2 = testutil::scratch_dir() + "/det_2";
  std::string out4 = testutil::scratch_dir() + "/det_4";

  REQUIRE(testutil::run_cli("summarize " + testutil::data_file("corpus") + base + "--out " +
                            out1)
              .code == 0);
  REQUIRE(testutil::run_cli("summarize " + testutil::data_file("corpus") + base + "--out " +
                            out2)
              .code == 0);
  REQUIRE(testutil::run_cli("summarize " + testutil::data_file("corpus") + base +
                            "--jobs 4 --out " + out4)
              .code == 0);

  CHECK(dir_bytes(out1) == dir_bytes(out2));
  CHECK(dir_bytes(out1) == dir_bytes(out4));
}

TEST_CASE("json sidecar reports indices, scores, and budget", "[cli]") {
  std::string out = testutil::scratch_dir() + "/cli_json";
  auto r = testutil::run_cli("summarize " + testutil::data_file("corpus/doc02.txt") +
                             " --models textrank,tfidf --chars 665" + shared_flags() +
                             " --json --out " + out);
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  auto json = nlohmann::json::parse(testutil::read_file(out + "/doc02.json"));
  CHECK(json["doc"] == "doc02");
  CHECK(json["indices"].is_array());
  CHECK(json["cweight"].is_array());
  CHECK(json["budget"]["kind"] == "chars");
  CHECK(json["budget"]["limit"] == 665);
  CHECK(json["text"].is_string());

  // text matches the plain-text sidecar joined by spaces
  auto text_lines = lines_of(testutil::read_file(out + "/doc02.txt"));
  std::string joined;
  for (const auto& l : text_lines) joined += (joined.empty() ? "" : " ") + l;
  CHECK(json["text"].get<std::string>() == joined);
}

TEST_CASE("config file and environment variable tune the pipeline", "[cli]") {
  std::string cfg = testutil::scratch_file("cfg/cli.conf", "tfidf.position = reversed\n");
  std::string doc = testutil::data_file("corpus/doc05.txt");
  std::string stop = " --stopwords " + testutil::data_file("stopwords.txt");

  auto paper = testutil::run_cli("summarize " + doc + " --models tfidf --chars 300" + stop);
  auto reversed = testutil::run_cli("summarize " + doc + " --models tfidf --chars 300" + stop +
                                    " --config " + cfg);
  auto via_env = testutil::run_cli("summarize " + doc + " --models tfidf --chars 300" + stop,
                                   "HYBRIDSUMM_CONFIG=" + cfg);
  REQUIRE(paper.code == 0);
  REQUIRE(reversed.code == 0);
  REQUIRE(via_env.code == 0);
  CHECK(paper.out != reversed.out);     // positional weighting flipped the pick
  CHECK(reversed.out == via_env.out);   // env var equals explicit flag

  auto missing_cfg = testutil::run_cli("summarize " + doc + " --models tfidf" + stop +
                                       " --config /nonexistent.conf");
  CHECK(missing_cfg.code == 2);
}

TEST_CASE("word budgets cap summary length", "[cli]") {
  std::string out = testutil::scratch_dir() + "/cli_words";
  auto r = testutil::run_cli("summarize " + testutil::data_file("corpus") +
                             " --models textrank --words 100 --stopwords " +
                             testutil::data_file("stopwords.txt") + " --out " + out);
  REQUIRE(r.code == 0);
  for (const auto& e : fs::directory_iterator(out)) {
    std::istringstream ss(testutil::read_file(e.path().string()));
    std::string w;
    std::size_t count = 0;
    while (ss >> w) ++count;
    CHECK(count <= 100);
  }
}

TEST_CASE("conflicting budget flags are a usage error", "[cli]") {
  auto r = testutil::run_cli("summarize " + testutil::data_file("corpus/doc01.txt") +
                             " --models textrank --k 2 --chars 100 --stopwords " +
                             testutil::data_file("stopwords.txt"));
  CHECK(r.code == 1);
}
