// Shared fixtures and small utilities for the test suite.
#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hybridsumm/config.hpp"
#include "hybridsumm/lexicon.hpp"
#include "hybridsumm/preprocess.hpp"

namespace testutil {

inline std::string data_dir() { return HYBRIDSUMM_DATA_DIR; }
inline std::string cli_path() { return HYBRIDSUMM_CLI_PATH; }

inline std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

inline const hybridsumm::Lexicon& main_lexicon() {
  static const hybridsumm::Lexicon lex = hybridsumm::load_lexicon(data_file("lexicon.txt"));
  return lex;
}

inline const hybridsumm::Lexicon& toy_taxonomy() {
  static const hybridsumm::Lexicon lex = hybridsumm::load_lexicon(data_file("toy_taxonomy.txt"));
  return lex;
}

inline const std::set<std::string>& stopwords() {
  static const std::set<std::string> words =
      hybridsumm::load_stopwords(data_file("stopwords.txt"));
  return words;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Unique scratch directory per test process.
inline std::string scratch_dir() {
  static const std::string dir = [] {
    std::string d = (std::filesystem::temp_directory_path() /
                     ("hybridsumm_test_" + std::to_string(::getpid())))
                        .string();
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::string scratch_file(const std::string& name, const std::string& content) {
  std::string path = scratch_dir() + "/" + name;
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  write_file(path, content);
  return path;
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI binary with `args` appended; captures stdout/stderr.
inline CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  std::string out_path = scratch_dir() + "/cli_out_" + std::to_string(counter);
  std::string err_path = scratch_dir() + "/cli_err_" + std::to_string(counter);
  ++counter;
  std::string cmd = env_prefix + " \"" + cli_path() + "\" " + args + " > " + out_path +
                    " 2> " + err_path;
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = (status == -1) ? -1 : WEXITSTATUS(status);
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  return r;
}

// Preprocesses a raw text into a Document against the main lexicon.
inline hybridsumm::Document make_document(const std::string& id, const std::string& text) {
  hybridsumm::Options opts;
  return hybridsumm::process_document(id, text, main_lexicon(), stopwords(),
                                      opts.abbreviation_set());
}

// The bundled ten-document corpus, preprocessed once.
inline const std::vector<hybridsumm::Document>& mini_corpus() {
  static const std::vector<hybridsumm::Document> docs = [] {
    std::vector<hybridsumm::Document> out;
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(data_file("corpus")))
      paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths)
      out.push_back(make_document(p.stem().string(), read_file(p.string())));
    return out;
  }();
  return docs;
}

}  // namespace testutil
