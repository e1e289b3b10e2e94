// Text preprocessing: sentence splitting, cleaning, word tokenization,
// POS tagging, lemmatization, and the filtered sentence/word frequency matrix.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hybridsumm/lexicon.hpp"
#include "hybridsumm/porter.hpp"
#include "hybridsumm/types.hpp"

namespace hybridsumm {

namespace detail {

inline bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_alnum(char c) {
  return is_ascii_alpha(c) || (c >= '0' && c <= '9');
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace detail

// Rule-based sentence splitter over [.?!] boundaries. No split after a listed
// abbreviation, before a lowercase continuation, or inside a decimal number.
inline std::vector<Sentence> split_sentences(const std::string& text,
                                             const std::set<std::string>& abbreviations) {
  std::set<std::string> abbrev_lower;
  for (const std::string& a : abbreviations) abbrev_lower.insert(detail::lower(a));

  std::vector<Sentence> sentences;
  auto push = [&](std::size_t begin, std::size_t end) {
    while (begin < end && detail::is_space(text[begin])) ++begin;
    while (end > begin && detail::is_space(text[end - 1])) --end;
    if (begin >= end) return;
    Sentence s;
    s.index = sentences.size();
    s.raw = text.substr(begin, end - begin);
    sentences.push_back(std::move(s));
  };

  const std::size_t n = text.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') {
      ++i;
      continue;
    }
    std::size_t run_begin = i;
    while (i < n && (text[i] == '.' || text[i] == '?' || text[i] == '!')) ++i;
    while (i < n && (text[i] == '"' || text[i] == '\'' || text[i] == ')')) ++i;
    std::size_t run_len = i - run_begin;

    bool boundary = true;
    if (run_len == 1 && text[run_begin] == '.') {
      // decimal point
      if (run_begin > 0 && i < n && std::isdigit((unsigned char)text[run_begin - 1]) &&
          std::isdigit((unsigned char)text[i]))
        boundary = false;
      // word ending at the period matches an abbreviation
      if (boundary) {
        std::size_t w = run_begin;
        while (w > start && !detail::is_space(text[w - 1])) --w;
        std::string word = detail::lower(text.substr(w, run_begin + 1 - w));
        if (abbrev_lower.count(word)) boundary = false;
      }
    }
    if (boundary) {
      std::size_t next = i;
      while (next < n && detail::is_space(text[next])) ++next;
      if (next < n && text[next] >= 'a' && text[next] <= 'z') boundary = false;
    }
    if (boundary) {
      push(start, i);
      start = i;
    }
  }
  push(start, n);
  return sentences;
}

// Replaces every character that is not an ASCII alphanumeric, whitespace, or
// a word-internal apostrophe with a single space.
inline std::string clean(const std::string& text) {
  std::string out = text;
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    char c = out[i];
    if (detail::is_ascii_alnum(c) || detail::is_space(c)) continue;
    if (c == '\'' && i > 0 && i + 1 < n && detail::is_ascii_alpha(text[i - 1]) &&
        detail::is_ascii_alpha(text[i + 1]))
      continue;
    out[i] = ' ';
  }
  return out;
}

namespace detail {

// Treebank irregular splits, lowercase key -> split point.
inline const std::map<std::string, std::size_t>& irregular_splits() {
  static const std::map<std::string, std::size_t> m = {
      {"cannot", 3}, {"gimme", 3}, {"gonna", 3},
      {"gotta", 3},  {"lemme", 3}, {"wanna", 3}};
  return m;
}

inline void emit_token(std::vector<Token>& out, const std::string& piece) {
  if (piece.empty()) return;
  Token t;
  t.surface = piece;
  t.normalized = lower(piece);
  out.push_back(std::move(t));
}

inline void split_word(std::vector<Token>& out, const std::string& word) {
  std::string lc = lower(word);
  auto it = irregular_splits().find(lc);
  if (it != irregular_splits().end()) {
    emit_token(out, word.substr(0, it->second));
    emit_token(out, word.substr(it->second));
    return;
  }
  if (lc.size() > 3 && lc.compare(lc.size() - 3, 3, "n't") == 0) {
    emit_token(out, word.substr(0, word.size() - 3));
    emit_token(out, word.substr(word.size() - 3));
    return;
  }
  static const std::vector<std::string> clitics = {"'re", "'ve", "'ll", "'s", "'d", "'m"};
  for (const std::string& cl : clitics) {
    if (lc.size() > cl.size() && lc.compare(lc.size() - cl.size(), cl.size(), cl) == 0) {
      emit_token(out, word.substr(0, word.size() - cl.size()));
      emit_token(out, word.substr(word.size() - cl.size()));
      return;
    }
  }
  emit_token(out, word);
}

}  // namespace detail

// Treebank-style word tokenizer over cleaned sentence text. Contraction
// clitics (n't, 's, 'll, ...) become separate tokens.
inline std::vector<Token> tokenize_words(const std::string& sentence_raw) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = sentence_raw.size();
  while (i < n) {
    while (i < n && detail::is_space(sentence_raw[i])) ++i;
    if (i >= n) break;
    std::size_t begin = i;
    while (i < n && !detail::is_space(sentence_raw[i])) ++i;
    detail::split_word(out, sentence_raw.substr(begin, i - begin));
  }
  return out;
}

// Lexicon-lookup tagger with suffix fallback: -ing/-ed verb, -ly adverb,
// -ous/-ful/-ive adjective, default noun. Non-word tokens tag as other.
inline void pos_tag(std::vector<Token>& tokens, const Lexicon& lexicon) {
  auto suffix_is = [](const std::string& w, const char* suf) {
    std::string s = suf;
    return w.size() >= s.size() + 2 && w.compare(w.size() - s.size(), s.size(), s) == 0;
  };
  for (Token& t : tokens) {
    if (!t.alphabetic()) {
      t.pos = Pos::other;
      continue;
    }
    if (auto pos = lexicon.first_sense_pos(t.normalized)) {
      t.pos = *pos;
      continue;
    }
    const std::string& w = t.normalized;
    if (suffix_is(w, "ing") || suffix_is(w, "ed"))
      t.pos = Pos::verb;
    else if (suffix_is(w, "ly"))
      t.pos = Pos::adverb;
    else if (suffix_is(w, "ous") || suffix_is(w, "ful") || suffix_is(w, "ive"))
      t.pos = Pos::adjective;
    else
      t.pos = Pos::noun;
  }
}

inline std::string stem(const std::string& word) { return porter_stem(word); }

namespace detail {

struct MorphRule {
  const char* suffix;
  const char* replacement;
};

inline const std::vector<MorphRule>& morph_rules(Pos pos) {
  static const std::vector<MorphRule> noun = {{"s", ""},      {"ses", "s"},  {"ves", "f"},
                                              {"xes", "x"},   {"zes", "z"},  {"ches", "ch"},
                                              {"shes", "sh"}, {"men", "man"}, {"ies", "y"}};
  static const std::vector<MorphRule> verb = {{"s", ""},   {"ies", "y"}, {"es", "e"},
                                              {"es", ""},  {"ed", "e"},  {"ed", ""},
                                              {"ing", "e"}, {"ing", ""}};
  static const std::vector<MorphRule> adjective = {
      {"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};
  static const std::vector<MorphRule> none;
  switch (pos) {
    case Pos::noun: return noun;
    case Pos::verb: return verb;
    case Pos::adjective: return adjective;
    default: return none;
  }
}

inline std::vector<std::string> apply_morph_rules(const std::vector<std::string>& forms,
                                                  const std::vector<MorphRule>& rules) {
  std::vector<std::string> out;
  for (const std::string& f : forms) {
    for (const MorphRule& r : rules) {
      std::string suf = r.suffix;
      if (f.size() > suf.size() && f.compare(f.size() - suf.size(), suf.size(), suf) == 0)
        out.push_back(f.substr(0, f.size() - suf.size()) + r.replacement);
    }
  }
  return out;
}

}  // namespace detail

// Morphy-style lemmatizer: exceptional forms first, then iterative suffix
// substitution, accepting the first candidate listed in the lexicon.
// Returns the word unchanged when nothing matches.
inline std::string lemmatize(const std::string& word, Pos pos, const Lexicon& lexicon) {
  if (pos == Pos::other) return word;
  if (auto exc = lexicon.exceptional_form(word, pos)) return *exc;

  const auto& rules = detail::morph_rules(pos);
  std::vector<std::string> forms = detail::apply_morph_rules({word}, rules);
  if (lexicon.has_lemma(word, pos)) return word;
  for (const std::string& f : forms)
    if (lexicon.has_lemma(f, pos)) return f;
  std::size_t rounds = word.size();
  while (!forms.empty() && rounds-- > 0) {
    forms = detail::apply_morph_rules(forms, rules);
    for (const std::string& f : forms)
      if (lexicon.has_lemma(f, pos)) return f;
  }
  return word;
}

// Lemmatize with unknown POS: first part of speech whose rules reach a
// lexicon entry wins.
inline std::string lemmatize_any(const std::string& word, const Lexicon& lexicon) {
  for (Pos pos : {Pos::noun, Pos::verb, Pos::adjective, Pos::adverb}) {
    std::string lemma = lemmatize(word, pos, lexicon);
    if (lemma != word || lexicon.has_lemma(word, pos)) return lemma;
  }
  return word;
}

// Full preprocessing chain for one document.
inline Document process_document(const std::string& id, const std::string& text,
                                 const Lexicon& lexicon,
                                 const std::set<std::string>& stopwords,
                                 const std::set<std::string>& abbreviations) {
  Document doc;
  doc.id = id;
  doc.sentences = split_sentences(text, abbreviations);
  std::set<std::string> seen;
  for (Sentence& s : doc.sentences) {
    s.tokens = tokenize_words(clean(s.raw));
    pos_tag(s.tokens, lexicon);
    for (Token& t : s.tokens) {
      t.stem = t.alphabetic() ? porter_stem(t.normalized) : t.normalized;
      t.lemma = t.alphabetic() ? lemmatize(t.normalized, t.pos, lexicon) : t.normalized;
      // digits and similar non-word tokens carry no content, same as stopwords
      t.is_stopword = stopwords.count(t.normalized) > 0 || !t.alphabetic();
      if (seen.insert(t.normalized).second) doc.vocabulary.push_back(t.normalized);
    }
  }
  return doc;
}

namespace detail {

inline const std::string& counted_form(const Token& t, const std::string& form) {
  if (form == "lemma") return t.lemma;
  if (form == "surface") return t.normalized;
  return t.stem;
}

}  // namespace detail

// Frequency matrix over the target document's sentences. Words are the
// target's non-stopword forms; the corpus-level document-frequency filter
// [low_df, high_df] applies only when the corpus has at least
// min_corpus_size documents.
inline FrequencyMatrix build_frequency_matrix(const std::vector<Document>& docs,
                                              const std::string& target,
                                              const std::set<std::string>& stopwords,
                                              double low_df, double high_df,
                                              int min_corpus_size = 20,
                                              const std::string& count_form = "stem") {
  const Document* target_doc = nullptr;
  for (const Document& d : docs)
    if (d.id == target) target_doc = &d;
  if (!target_doc) throw DataError("unknown target document id: " + target);

  auto eligible = [&](const Token& t) {
    return !t.is_stopword && t.alphabetic() && stopwords.count(t.normalized) == 0;
  };

  std::set<std::string> retained;
  bool apply_df = static_cast<int>(docs.size()) >= min_corpus_size;
  if (apply_df) {
    std::map<std::string, int> df;
    for (const Document& d : docs) {
      std::set<std::string> present;
      for (const Sentence& s : d.sentences)
        for (const Token& t : s.tokens)
          if (eligible(t)) present.insert(detail::counted_form(t, count_form));
      for (const std::string& w : present) df[w] += 1;
    }
    const double total = static_cast<double>(docs.size());
    for (const auto& [w, n] : df) {
      double frac = n / total;
      if (frac >= low_df && frac <= high_df) retained.insert(w);
    }
  }

  FrequencyMatrix fm;
  std::set<std::string> seen;
  for (const Sentence& s : target_doc->sentences)
    for (const Token& t : s.tokens) {
      if (!eligible(t)) continue;
      const std::string& w = detail::counted_form(t, count_form);
      if (apply_df && !retained.count(w)) continue;
      if (seen.insert(w).second) fm.words.push_back(w);
    }

  std::map<std::string, std::size_t> col;
  for (std::size_t j = 0; j < fm.words.size(); ++j) col[fm.words[j]] = j;

  fm.sentence_count = target_doc->sentences.size();
  fm.retained = fm.words.size();
  fm.counts.assign(fm.sentence_count, std::vector<int>(fm.retained, 0));
  for (std::size_t i = 0; i < target_doc->sentences.size(); ++i)
    for (const Token& t : target_doc->sentences[i].tokens) {
      if (!eligible(t)) continue;
      auto it = col.find(detail::counted_form(t, count_form));
      if (it != col.end()) fm.counts[i][it->second] += 1;
    }
  return fm;
}

}  // namespace hybridsumm
