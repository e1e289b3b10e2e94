// Key/value run configuration. One `key = value` pair per line, `#` comments,
// values optionally double-quoted, lists comma-separated.
#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hybridsumm/types.hpp"

namespace hybridsumm {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open config file: " + path);
    Config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#') continue;
      std::size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw DataError(path + ":" + std::to_string(lineno) + ": expected key = value");
      std::string key = detail::trim(t.substr(0, eq));
      std::string val = detail::trim(t.substr(eq + 1));
      if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
        val = val.substr(1, val.size() - 2);
      if (key.empty())
        throw DataError(path + ":" + std::to_string(lineno) + ": empty key");
      cfg.values_[key] = val;
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw DataError("config key '" + key + "' is not a number: " + it->second);
    }
  }

  int get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t used = 0;
      int v = std::stoi(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw DataError("config key '" + key + "' is not an integer: " + it->second);
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw DataError("config key '" + key + "' is not a boolean: " + v);
  }

  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::string> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::string t = detail::trim(item);
      if (!t.empty()) out.push_back(t);
    }
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Pipeline knobs resolved from config + flags. Defaults match the documented
// configuration reference in the README.
struct Options {
  // preprocess
  double low_df = 0.002;
  double high_df = 0.15;
  int min_corpus_size = 20;
  std::vector<std::string> abbreviations = {"Mr.",  "Mrs.", "Dr.",  "Prof.", "St.",
                                            "vs.",  "etc.", "e.g.", "i.e."};
  std::string count_form = "stem";  // stem | lemma | surface

  // statmodels
  double textrank_d = 0.85;
  double textrank_epsilon = 1e-6;
  int textrank_max_iter = 200;
  std::string tfidf_position = "paper";  // paper | reversed | off
  bool cosine_distance = false;          // store 1 - cos instead of cos

  // semmodels
  double wordnet_threshold = 0.5;
  bool dice_classic = false;
  std::string token_filter = "content";  // content | all

  // evaluate / training
  bool rouge_stem = false;
  std::string train_f1 = "bigram";  // bigram | unigram | sentence
  bool normalize_weights = true;

  static Options from_config(const Config& cfg) {
    Options o;
    o.low_df = cfg.get_double("low_df", o.low_df);
    o.high_df = cfg.get_double("high_df", o.high_df);
    o.min_corpus_size = cfg.get_int("min_corpus_size", o.min_corpus_size);
    o.abbreviations = cfg.get_list("abbreviations", o.abbreviations);
    o.count_form = cfg.get_string("count_form", o.count_form);
    o.textrank_d = cfg.get_double("textrank.d", o.textrank_d);
    o.textrank_epsilon = cfg.get_double("textrank.epsilon", o.textrank_epsilon);
    o.textrank_max_iter = cfg.get_int("textrank.max_iter", o.textrank_max_iter);
    o.tfidf_position = cfg.get_string("tfidf.position", o.tfidf_position);
    o.cosine_distance = cfg.get_bool("cosine.distance", o.cosine_distance);
    o.wordnet_threshold = cfg.get_double("wordnet.threshold", o.wordnet_threshold);
    o.dice_classic = cfg.get_bool("dice_classic", o.dice_classic);
    o.token_filter = cfg.get_string("semantic.token_filter", o.token_filter);
    o.rouge_stem = cfg.get_bool("rouge.stem", o.rouge_stem);
    o.train_f1 = cfg.get_string("train.f1", o.train_f1);
    o.normalize_weights = cfg.get_bool("train.normalize", o.normalize_weights);
    return o;
  }

  std::set<std::string> abbreviation_set() const {
    return {abbreviations.begin(), abbreviations.end()};
  }
};

}  // namespace hybridsumm
