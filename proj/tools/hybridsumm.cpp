// hybridsumm — hybrid extractive summarizer CLI.
//
// Commands:
//   summarize  one summary per input document (single model or consensus)
//   train      learn per-model weights from gold summaries, save a profile
//   eval       ROUGE-N report over candidate/reference directories
//   inspect    dump similarity matrices and rank vectors as TSV
//
// Exit codes: 0 ok, 1 usage, 2 missing/unreadable resource, 3 bad data.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hybridsumm/ensemble.hpp"

namespace fs = std::filesystem;
using namespace hybridsumm;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write file: " + path.string());
  out << content;
}

// Files from a mix of file and directory arguments; directory entries are
// taken in name order.
std::vector<fs::path> collect_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> sub;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file()) sub.push_back(entry.path());
      std::sort(sub.begin(), sub.end());
      files.insert(files.end(), sub.begin(), sub.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw ResourceError("no such file or directory: " + in);
    }
  }
  return files;
}

struct SharedArgs {
  std::string models_csv = "textrank";
  std::string rank = "rscore";
  std::size_t k = 0;
  std::size_t chars = 0;
  std::size_t words = 0;
  std::string lexicon_path;
  std::string vectors_path;
  std::string embeddings_path;
  std::string stopwords_path;
  std::string profiles_path;
  std::string config_path;
  unsigned jobs = 1;
  bool rouge_stem = false;
  bool no_normalize = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--models", models_csv, "comma-separated model set")
        ->capture_default_str();
    cmd->add_option("--rank", rank, "ranking strategy for matrix models")
        ->check(CLI::IsMember({"rscore", "hcluster"}))
        ->capture_default_str();
    auto* k_opt = cmd->add_option("--k", k, "budget: number of sentences");
    auto* c_opt = cmd->add_option("--chars", chars, "budget: max summary characters");
    auto* w_opt = cmd->add_option("--words", words, "budget: max summary words");
    k_opt->excludes(c_opt)->excludes(w_opt);
    c_opt->excludes(w_opt);
    cmd->add_option("--lexicon", lexicon_path, "synset lexicon file");
    cmd->add_option("--vectors", vectors_path, "word-vector file");
    cmd->add_option("--embeddings", embeddings_path, "sentence-embedding sidecar file");
    cmd->add_option("--stopwords", stopwords_path, "stopword list, one word per line");
    cmd->add_option("--profiles", profiles_path, "corpus-profile JSON file");
    cmd->add_option("--config", config_path, "key=value config file (default: $HYBRIDSUMM_CONFIG)");
    cmd->add_option("--jobs", jobs, "parallel worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--rouge-stem", rouge_stem, "stem tokens before n-gram matching");
    cmd->add_flag("--no-normalize", no_normalize, "keep raw mean F1 weights unnormalized");
  }

  Options options() const {
    std::string path = config_path;
    if (path.empty())
      if (const char* env = std::getenv("HYBRIDSUMM_CONFIG")) path = env;
    Options opts = path.empty() ? Options{} : Options::from_config(Config::from_file(path));
    if (rouge_stem) opts.rouge_stem = true;
    if (no_normalize) opts.normalize_weights = false;
    return opts;
  }

  std::vector<Model> models() const {
    std::set<Model> set;
    std::stringstream ss(models_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::string name = detail::trim(item);
      if (name.empty()) continue;
      Model m = model_from_name(name);
      if (m == Model::ensemble)
        throw DataError("'ensemble' is the combination step, not a selectable model");
      set.insert(m);
    }
    if (set.empty()) throw DataError("--models must name at least one model");
    std::vector<Model> out;
    for (Model m : all_models())
      if (set.count(m)) out.push_back(m);
    return out;
  }

  Budget budget() const {
    if (k > 0) return Budget::top_k(k);
    if (words > 0) return Budget::max_words(words);
    if (chars > 0) return Budget::max_chars(chars);
    return Budget::max_chars(665);
  }

  Resources resources() const {
    Resources res;
    if (!lexicon_path.empty()) {
      res.lexicon = load_lexicon(lexicon_path);
      res.has_lexicon = true;
    }
    if (!vectors_path.empty()) {
      res.vectors = load_vectors(vectors_path, sniff_vector_dim(vectors_path));
      res.has_vectors = true;
    }
    if (!embeddings_path.empty()) {
      res.embeddings = load_sentence_embeddings(embeddings_path);
      res.has_embeddings = true;
    }
    if (!stopwords_path.empty()) res.stopwords = load_stopwords(stopwords_path);
    return res;
  }
};

// Run fn(0..count-1) on up to `jobs` threads; the first exception wins and
// is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Document> preprocess_files(const std::vector<fs::path>& files, const Resources& res,
                                       const Options& opts, unsigned jobs) {
  std::vector<std::string> texts(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) texts[i] = read_file(files[i]);

  std::vector<Document> docs(files.size());
  std::set<std::string> abbrev = opts.abbreviation_set();
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    docs[i] = process_document(files[i].stem().string(), texts[i], res.lexicon, res.stopwords,
                               abbrev);
  });

  std::set<std::string> seen;
  for (const Document& d : docs)
    if (!seen.insert(d.id).second)
      throw DataError("duplicate document id '" + d.id + "' (file stems must be unique)");
  return docs;
}

std::string summary_lines(const Summary& summary, const Document& doc) {
  std::string out;
  for (std::size_t idx : summary.indices) {
    out += doc.sentences[idx].raw;
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json summary_json(const Summary& summary, const RankVector& scores) {
  nlohmann::ordered_json j;
  j["doc"] = summary.doc_id;
  j["indices"] = summary.indices;
  nlohmann::ordered_json sc = nlohmann::ordered_json::array();
  for (double v : scores.scores) sc.push_back(v);
  j["cweight"] = sc;
  j["budget"]["kind"] = summary.budget.kind == Budget::Kind::sentences ? "sentences"
                        : summary.budget.kind == Budget::Kind::words   ? "words"
                                                                       : "chars";
  j["budget"]["limit"] = summary.budget.limit;
  j["budget_warning"] = summary.budget_warning;
  j["text"] = summary.text;
  return j;
}

int cmd_summarize(const SharedArgs& shared, const std::vector<std::string>& inputs,
                  const std::string& out_dir, bool json) {
  Options opts = shared.options();
  std::vector<Model> models = shared.models();
  Resources res = shared.resources();
  validate_resources(models, res);
  RankStrategy strategy = rank_strategy_from_name(shared.rank);
  Budget budget = shared.budget();

  std::vector<fs::path> files = collect_files(inputs);
  if (files.empty()) throw DataError("no input documents");
  std::vector<Document> docs = preprocess_files(files, res, opts, shared.jobs);

  std::vector<CorpusProfile> profiles;
  if (!shared.profiles_path.empty()) {
    if (!res.has_vectors)
      throw ResourceError("--profiles requires --vectors for the nearest-profile search");
    profiles = load_profiles(shared.profiles_path);
    if (profiles.empty()) throw DataError("profile file holds no profiles");
  }

  ModelWeights uniform = ModelWeights::uniform(models);
  std::vector<EnsembleResult> results(docs.size());
  parallel_for(docs.size(), shared.jobs, [&](std::size_t i) {
    ModelWeights weights = profiles.empty()
                               ? uniform
                               : nearest_corpus_weights(docs[i], profiles, res.vectors,
                                                        opts.token_filter);
    results[i] = ensemble_summarize(docs[i], docs, models, weights, res, opts, strategy, budget);
  });

  if (!out_dir.empty()) fs::create_directories(out_dir);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const Summary& summary = results[i].summary;
    if (summary.budget_warning)
      std::cerr << "warning: budget too small for any sentence of '" << docs[i].id << "'\n";
    if (!out_dir.empty()) {
      write_file(fs::path(out_dir) / (docs[i].id + ".txt"), summary_lines(summary, docs[i]));
      if (json)
        write_file(fs::path(out_dir) / (docs[i].id + ".json"),
                   summary_json(summary, results[i].scores).dump(2) + "\n");
    } else if (json) {
      std::cout << summary_json(summary, results[i].scores).dump(2) << "\n";
    } else {
      std::cout << "# " << docs[i].id << "\n"
                << summary_lines(summary, docs[i]) << "\n";
    }
  }
  return 0;
}

// Pair files from two directories by filename; unpaired files are reported
// and skipped.
std::vector<std::pair<fs::path, fs::path>> pair_by_filename(const std::string& left_dir,
                                                            const std::string& right_dir,
                                                            const char* left_role,
                                                            const char* right_role) {
  std::map<std::string, fs::path> left, right;
  for (const fs::path& p : collect_files({left_dir})) left[p.filename().string()] = p;
  for (const fs::path& p : collect_files({right_dir})) right[p.filename().string()] = p;
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const auto& [name, p] : left) {
    auto it = right.find(name);
    if (it == right.end()) {
      std::cerr << "warning: no " << right_role << " for '" << name << "', skipped\n";
      continue;
    }
    pairs.emplace_back(p, it->second);
  }
  for (const auto& [name, p] : right)
    if (!left.count(name))
      std::cerr << "warning: no " << left_role << " for '" << name << "', skipped\n";
  return pairs;
}

int cmd_train(const SharedArgs& shared, const std::string& corpus_dir, const std::string& gold_dir,
              std::string corpus_id) {
  Options opts = shared.options();
  std::vector<Model> models = shared.models();
  Resources res = shared.resources();
  validate_resources(models, res);
  if (!res.has_vectors)
    throw ResourceError("train requires --vectors to build the corpus vector");
  RankStrategy strategy = rank_strategy_from_name(shared.rank);
  Budget budget = shared.budget();

  auto pairs = pair_by_filename(corpus_dir, gold_dir, "corpus document", "gold summary");
  if (pairs.empty()) throw DataError("no paired training documents");

  std::vector<fs::path> doc_files;
  for (const auto& [doc_file, gold_file] : pairs) doc_files.push_back(doc_file);
  std::vector<Document> docs = preprocess_files(doc_files, res, opts, shared.jobs);

  std::vector<TrainingExample> examples;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    examples.push_back({docs[i], read_file(pairs[i].second)});

  TrainReport report = train_weights(examples, models, res, opts, strategy, budget);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";

  std::vector<std::string> vec_warnings;
  CorpusProfile profile;
  profile.corpus_id = corpus_id.empty() ? fs::path(corpus_dir).filename().string() : corpus_id;
  profile.cdoc = corpus_vector(docs, res.vectors, opts.token_filter, &vec_warnings);
  profile.weights = report.weights;
  for (const std::string& w : vec_warnings) std::cerr << "warning: " << w << "\n";

  std::string path = shared.profiles_path.empty() ? "profiles.json" : shared.profiles_path;
  std::vector<CorpusProfile> profiles;
  if (fs::exists(path)) profiles = load_profiles(path);
  bool replaced = false;
  for (CorpusProfile& p : profiles)
    if (p.corpus_id == profile.corpus_id) {
      p = profile;
      replaced = true;
    }
  if (!replaced) profiles.push_back(profile);
  save_profiles(path, profiles);

  std::cout << "corpus\t" << profile.corpus_id << "\n";
  for (const auto& [m, w] : report.weights.weights)
    std::cout << model_name(m) << "\t" << fmt_double(w) << "\n";
  std::cout << "profile\t" << path << "\n";
  return 0;
}

int cmd_eval(const SharedArgs& shared, const std::string& cand_dir, const std::string& ref_dir,
             int n) {
  Options opts = shared.options();
  auto pairs = pair_by_filename(cand_dir, ref_dir, "candidate", "reference");
  if (pairs.empty()) throw DataError("no paired candidate/reference files");

  std::vector<RougeScore> scores(pairs.size());
  parallel_for(pairs.size(), shared.jobs, [&](std::size_t i) {
    scores[i] = rouge_n(read_file(pairs[i].first), {read_file(pairs[i].second)}, n,
                        opts.rouge_stem);
  });

  std::cout << "doc\trouge" << n << "_recall\tprecision\tf1\n";
  double mr = 0.0, mp = 0.0, mf = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::cout << pairs[i].first.stem().string() << "\t" << fmt_fixed(scores[i].recall) << "\t"
              << fmt_fixed(scores[i].precision) << "\t" << fmt_fixed(scores[i].f1) << "\n";
    mr += scores[i].recall;
    mp += scores[i].precision;
    mf += scores[i].f1;
  }
  double count = static_cast<double>(pairs.size());
  std::cout << "MEAN\t" << fmt_fixed(mr / count) << "\t" << fmt_fixed(mp / count) << "\t"
            << fmt_fixed(mf / count) << "\n";
  return 0;
}

std::string matrix_tsv(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += '\t';
      out += fmt_double(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string scores_tsv(const RankVector& rv) {
  std::string out;
  for (std::size_t i = 0; i < rv.scores.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += fmt_double(rv.scores[i]);
    out += '\n';
  }
  return out;
}

int cmd_inspect(const SharedArgs& shared, const std::string& input,
                const std::vector<std::string>& dumps) {
  Options opts = shared.options();
  Resources res = shared.resources();
  RankStrategy strategy = rank_strategy_from_name(shared.rank);
  Budget budget = shared.budget();

  static const std::map<std::string, Model> dump_models = {
      {"sim1", Model::jaccard},  {"sim2", Model::cosine}, {"sim3", Model::wordnet},
      {"sim4", Model::glove},    {"sim5", Model::embedding},
      {"textrank", Model::textrank}, {"tfidf", Model::tfidf}};

  std::vector<Model> needed;
  for (const std::string& d : dumps) {
    auto it = dump_models.find(d);
    if (it == dump_models.end())
      throw DataError("unknown dump '" + d +
                      "' (expected sim1..sim5, textrank, or tfidf)");
    needed.push_back(it->second);
  }
  validate_resources(needed, res);

  std::vector<fs::path> files = collect_files({input});
  if (files.size() != 1) throw DataError("inspect expects exactly one document");
  std::vector<Document> docs = preprocess_files(files, res, opts, 1);

  for (std::size_t i = 0; i < dumps.size(); ++i) {
    ModelRun run = run_model(docs[0], docs, needed[i], res, opts, strategy, budget);
    std::cout << "# " << dumps[i] << "\n";
    if (run.has_matrix)
      std::cout << matrix_tsv(run.matrix.values);
    else
      std::cout << scores_tsv(run.scores);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid extractive summarizer"};
  app.require_subcommand(1);

  SharedArgs shared;

  auto* sum = app.add_subcommand("summarize", "summarize documents");
  std::vector<std::string> sum_inputs;
  std::string sum_out;
  bool sum_json = false;
  sum->add_option("inputs", sum_inputs, "document files or directories")->required();
  sum->add_option("--out", sum_out, "write one summary file per document into this directory");
  sum->add_flag("--json", sum_json, "emit JSON with indices and scores");
  shared.attach(sum);

  auto* train = app.add_subcommand("train", "train model weights against gold summaries");
  std::string train_corpus, train_gold, train_corpus_id;
  train->add_option("corpus", train_corpus, "directory of training documents")->required();
  train->add_option("gold", train_gold, "directory of gold summaries (paired by filename)")
      ->required();
  train->add_option("--corpus-id", train_corpus_id, "profile name (default: corpus dir name)");
  shared.attach(train);

  auto* eval = app.add_subcommand("eval", "score candidate summaries against references");
  std::string eval_cand, eval_ref;
  int eval_n = 2;
  eval->add_option("candidates", eval_cand, "directory of candidate summaries")->required();
  eval->add_option("references", eval_ref, "directory of reference summaries")->required();
  eval->add_option("--n", eval_n, "n-gram order")->check(CLI::PositiveNumber)
      ->capture_default_str();
  shared.attach(eval);

  auto* inspect = app.add_subcommand("inspect", "dump model internals for one document");
  std::string inspect_input;
  std::vector<std::string> inspect_dumps;
  inspect->add_option("input", inspect_input, "document file")->required();
  inspect->add_option("--dump", inspect_dumps,
                      "what to print: sim1..sim5, textrank, tfidf (repeatable)")
      ->required();
  shared.attach(inspect);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sum->parsed()) return cmd_summarize(shared, sum_inputs, sum_out, sum_json);
    if (train->parsed()) return cmd_train(shared, train_corpus, train_gold, train_corpus_id);
    if (eval->parsed()) return cmd_eval(shared, eval_cand, eval_ref, eval_n);
    if (inspect->parsed()) return cmd_inspect(shared, inspect_input, inspect_dumps);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
