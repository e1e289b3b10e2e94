// Lexical resources: synset database with is-a hierarchy, word-vector table,
// precomputed sentence-embedding store, stopword list.
//
// Lexicon file format, one record per line, '#' comments:
//   SYN <id> <pos> lemmas=<l1,l2,...> hyper=<id1,id2,...> gloss="..." ex="...|..."
//   EXC <pos> <surface> <lemma>
// Word vectors: "<word> <v1> ... <vd>" per line, no header.
// Embedding sidecar: "DIM <d>" header, then "<doc-id> <index> <v1> ... <vd>".
#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hybridsumm/config.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

struct Synset {
  std::string id;
  Pos pos = Pos::noun;
  std::vector<std::string> lemmas;
  std::vector<std::string> hypernyms;
  std::string gloss;
  std::vector<std::string> examples;

  bool operator==(const Synset&) const = default;
};

class Lexicon {
 public:
  void add_synset(Synset s) {
    if (synsets_.count(s.id)) throw DataError("duplicate synset id: " + s.id);
    order_.push_back(s.id);
    for (const std::string& lemma : s.lemmas) {
      index_[{lemma, s.pos}].push_back(s.id);
      lemma_senses_[lemma].emplace_back(s.id, s.pos);
    }
    synsets_.emplace(s.id, std::move(s));
  }

  void add_exceptional_form(Pos pos, const std::string& surface, const std::string& lemma) {
    exceptional_[{surface, pos}] = lemma;
    exc_order_.emplace_back(pos, std::make_pair(surface, lemma));
  }

  // Validates hypernym targets and per-POS acyclicity; builds reverse edges.
  void finalize() {
    hyponyms_.clear();
    for (const std::string& id : order_) {
      const Synset& s = synsets_.at(id);
      for (const std::string& h : s.hypernyms) {
        if (!synsets_.count(h))
          throw DataError("synset " + id + " references missing hypernym " + h);
        hyponyms_[h].push_back(id);
      }
    }
    check_acyclic();
  }

  bool empty() const { return synsets_.empty(); }
  std::size_t synset_count() const { return synsets_.size(); }

  std::size_t hypernym_edge_count() const {
    std::size_t n = 0;
    for (const auto& [id, s] : synsets_) n += s.hypernyms.size();
    return n;
  }

  const Synset* synset(const std::string& id) const {
    auto it = synsets_.find(id);
    return it == synsets_.end() ? nullptr : &it->second;
  }

  // Synset ids for (lemma, pos), most frequent (file order) first.
  const std::vector<std::string>* senses(const std::string& lemma, Pos pos) const {
    auto it = index_.find({lemma, pos});
    return it == index_.end() ? nullptr : &it->second;
  }

  // POS of the first-listed sense of 'lemma' across all parts of speech.
  std::optional<Pos> first_sense_pos(const std::string& lemma) const {
    auto it = lemma_senses_.find(lemma);
    if (it == lemma_senses_.end()) return std::nullopt;
    return it->second.front().second;
  }

  bool has_lemma(const std::string& lemma, Pos pos) const {
    return index_.count({lemma, pos}) > 0;
  }

  std::optional<std::string> exceptional_form(const std::string& surface, Pos pos) const {
    auto it = exceptional_.find({surface, pos});
    if (it == exceptional_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<std::string>& hyponyms(const std::string& id) const {
    static const std::vector<std::string> none;
    auto it = hyponyms_.find(id);
    return it == hyponyms_.end() ? none : it->second;
  }

  const std::vector<std::string>& load_order() const { return order_; }

  bool operator==(const Lexicon& o) const {
    return synsets_ == o.synsets_ && order_ == o.order_ && exceptional_ == o.exceptional_;
  }

  std::string serialize() const {
    std::ostringstream out;
    for (const std::string& id : order_) {
      const Synset& s = synsets_.at(id);
      out << "SYN " << s.id << ' ' << pos_tag_char(s.pos) << " lemmas=";
      for (std::size_t i = 0; i < s.lemmas.size(); ++i)
        out << (i ? "," : "") << s.lemmas[i];
      out << " hyper=";
      for (std::size_t i = 0; i < s.hypernyms.size(); ++i)
        out << (i ? "," : "") << s.hypernyms[i];
      out << " gloss=\"" << s.gloss << "\" ex=\"";
      for (std::size_t i = 0; i < s.examples.size(); ++i)
        out << (i ? "|" : "") << s.examples[i];
      out << "\"\n";
    }
    for (const auto& [pos, form] : exc_order_)
      out << "EXC " << pos_tag_char(pos) << ' ' << form.first << ' ' << form.second << '\n';
    return out.str();
  }

 private:
  void check_acyclic() const {
    // Colors: 0 unvisited, 1 on stack, 2 done. Edges stay within one POS.
    std::map<std::string, int> color;
    for (const std::string& start : order_) {
      if (color[start]) continue;
      std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
      color[start] = 1;
      while (!stack.empty()) {
        auto& [id, edge] = stack.back();
        const Synset& s = synsets_.at(id);
        bool descended = false;
        while (edge < s.hypernyms.size()) {
          const std::string& h = s.hypernyms[edge++];
          if (synsets_.at(h).pos != s.pos) continue;
          if (color[h] == 1)
            throw DataError("hypernym cycle through synset " + h);
          if (color[h] == 0) {
            color[h] = 1;
            stack.emplace_back(h, 0);
            descended = true;
            break;
          }
        }
        if (!descended && stack.back().second >= s.hypernyms.size()) {
          color[id] = 2;
          stack.pop_back();
        }
      }
    }
  }

  std::map<std::string, Synset> synsets_;
  std::vector<std::string> order_;  // file order of synset ids
  std::map<std::pair<std::string, Pos>, std::vector<std::string>> index_;
  std::map<std::string, std::vector<std::pair<std::string, Pos>>> lemma_senses_;
  std::map<std::pair<std::string, Pos>, std::string> exceptional_;
  std::vector<std::pair<Pos, std::pair<std::string, std::string>>> exc_order_;
  std::map<std::string, std::vector<std::string>> hyponyms_;
};

namespace lexicon_detail {

// Splits one record line into fields; a field of the form key="..." keeps
// its spaces until the closing quote.
inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= n) break;
    std::size_t start = i;
    bool in_quote = false;
    while (i < n && (in_quote || (line[i] != ' ' && line[i] != '\t'))) {
      if (line[i] == '"') in_quote = !in_quote;
      ++i;
    }
    fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Extracts the value of `key=` or `key="..."`; throws if absent.
inline std::string field_value(const std::vector<std::string>& fields, const std::string& key,
                               const std::string& where) {
  const std::string prefix = key + "=";
  for (const std::string& f : fields) {
    if (f.compare(0, prefix.size(), prefix) != 0) continue;
    std::string v = f.substr(prefix.size());
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    return v;
  }
  throw DataError(where + ": missing field " + key + "=");
}

}  // namespace lexicon_detail

inline Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open lexicon file: " + path);
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = lexicon_detail::split_fields(t);
    if (fields[0] == "SYN") {
      if (fields.size() < 3) throw DataError(where + ": malformed SYN record");
      Synset s;
      s.id = fields[1];
      if (fields[2].size() != 1) throw DataError(where + ": malformed POS tag");
      try {
        s.pos = pos_from_char(fields[2][0]);
      } catch (const DataError&) {
        throw DataError(where + ": malformed POS tag");
      }
      s.lemmas = lexicon_detail::split_list(
          lexicon_detail::field_value(fields, "lemmas", where), ',');
      if (s.lemmas.empty()) throw DataError(where + ": synset with no lemmas");
      s.hypernyms = lexicon_detail::split_list(
          lexicon_detail::field_value(fields, "hyper", where), ',');
      s.gloss = lexicon_detail::field_value(fields, "gloss", where);
      s.examples = lexicon_detail::split_list(
          lexicon_detail::field_value(fields, "ex", where), '|');
      try {
        lex.add_synset(std::move(s));
      } catch (const DataError& e) {
        throw DataError(where + ": " + e.what());
      }
    } else if (fields[0] == "EXC") {
      if (fields.size() != 4 || fields[1].size() != 1)
        throw DataError(where + ": malformed EXC record");
      lex.add_exceptional_form(pos_from_char(fields[1][0]), fields[2], fields[3]);
    } else {
      throw DataError(where + ": unknown record type '" + fields[0] + "'");
    }
  }
  lex.finalize();
  return lex;
}

struct WordVectorTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& word) const {
    auto it = vectors.find(word);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

inline WordVectorTable load_vectors(const std::string& path, std::size_t expected_dim) {
  if (expected_dim == 0) throw DataError("vector dimension must be positive");
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open vector file: " + path);
  WordVectorTable table;
  table.dim = expected_dim;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    if (detail::trim(line).empty()) continue;
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    std::vector<double> vec;
    vec.reserve(expected_dim);
    double x;
    while (ss >> x) vec.push_back(x);
    if (!ss.eof()) throw DataError(where + ": unparsable number");
    if (vec.size() != expected_dim)
      throw DataError(where + ": expected " + std::to_string(expected_dim) +
                      " values, got " + std::to_string(vec.size()));
    table.vectors[word] = std::move(vec);  // later duplicates override
  }
  return table;
}

// Reads the first data line to infer the vector dimension.
inline std::size_t sniff_vector_dim(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open vector file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    std::size_t count = 0;
    double x;
    while (ss >> x) ++count;
    if (count == 0)
      throw DataError(path + ":" + std::to_string(lineno) + ": no vector values");
    return count;
  }
  throw DataError(path + ": empty vector file");
}

struct SentenceEmbeddingStore {
  std::size_t dim = 0;
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& doc_id, std::size_t index) const {
    auto it = vectors.find({doc_id, index});
    return it == vectors.end() ? nullptr : &it->second;
  }
};

inline SentenceEmbeddingStore load_sentence_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open embedding sidecar: " + path);
  SentenceEmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ss(t);
    if (!have_header) {
      std::string tag;
      long d = 0;
      ss >> tag >> d;
      if (tag != "DIM" || ss.fail() || d <= 0)
        throw DataError(where + ": expected 'DIM <d>' header");
      store.dim = static_cast<std::size_t>(d);
      have_header = true;
      continue;
    }
    std::string doc_id;
    long index = -1;
    ss >> doc_id >> index;
    if (ss.fail() || index < 0) throw DataError(where + ": expected '<doc-id> <index> <values>'");
    std::vector<double> vec;
    vec.reserve(store.dim);
    double x;
    while (ss >> x) vec.push_back(x);
    if (!ss.eof()) throw DataError(where + ": unparsable number");
    if (vec.size() != store.dim)
      throw DataError(where + ": row (" + doc_id + "," + std::to_string(index) + ") has " +
                      std::to_string(vec.size()) + " values, expected " +
                      std::to_string(store.dim));
    auto key = std::make_pair(doc_id, static_cast<std::size_t>(index));
    if (store.vectors.count(key))
      throw DataError(where + ": duplicate key (" + doc_id + "," + std::to_string(index) + ")");
    store.vectors.emplace(std::move(key), std::move(vec));
  }
  if (!have_header) throw DataError(path + ": missing DIM header");
  return store;
}

inline std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open stopword list: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    words.insert(t);
  }
  return words;
}

}  // namespace hybridsumm
