// Porter stemmer (classic 1980 rule set).
#pragma once

#include <string>
#include <vector>

namespace hybridsumm {

namespace porter_detail {

inline bool is_consonant(const std::string& w, std::size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// Number of VC sequences in [C](VC)^m[V].
inline int measure(const std::string& w) {
  int m = 0;
  std::size_t i = 0;
  const std::size_t n = w.size();
  while (i < n && is_consonant(w, i)) ++i;
  while (i < n) {
    while (i < n && !is_consonant(w, i)) ++i;
    if (i >= n) break;
    ++m;
    while (i < n && is_consonant(w, i)) ++i;
  }
  return m;
}

inline bool has_vowel(const std::string& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

inline bool ends_double_consonant(const std::string& w) {
  std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o condition: stem ends cvc where the final c is not w, x or y.
inline bool ends_cvc(const std::string& w) {
  std::size_t n = w.size();
  if (n < 3) return false;
  if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) || !is_consonant(w, n - 1))
    return false;
  char c = w[n - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(const std::string& w, const std::string& suf) {
  return w.size() >= suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

struct Rule {
  const char* s1;
  const char* s2;
};

// Within a step the longest matching S1 is the one obeyed; if its measure
// condition fails, the step changes nothing.
inline bool apply_step(std::string& w, const std::vector<Rule>& rules, int min_measure) {
  const Rule* best = nullptr;
  std::size_t best_len = 0;
  for (const Rule& r : rules) {
    std::string s1 = r.s1;
    if (s1.size() > best_len && ends_with(w, s1)) {
      best = &r;
      best_len = s1.size();
    }
  }
  if (!best) return false;
  std::string stem = w.substr(0, w.size() - best_len);
  if (measure(stem) > min_measure) w = stem + best->s2;
  return true;
}

}  // namespace porter_detail

// Stems a lowercase alphabetic word. Words of length <= 2 pass through.
inline std::string porter_stem(const std::string& word) {
  using namespace porter_detail;
  if (word.size() <= 2) return word;
  std::string w = word;

  // Step 1a
  if (ends_with(w, "sses")) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // unchanged
  } else if (ends_with(w, "s")) {
    w.pop_back();
  }

  // Step 1b
  bool cleanup = false;
  if (ends_with(w, "eed")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (measure(stem) > 0) w = stem + "ee";
  } else if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (has_vowel(stem)) {
      w = stem;
      cleanup = true;
    }
  } else if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (has_vowel(stem)) {
      w = stem;
      cleanup = true;
    }
  }
  if (cleanup) {
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
      w += 'e';
    } else if (ends_double_consonant(w)) {
      char c = w.back();
      if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
      w += 'e';
    }
  }

  // Step 1c
  if (ends_with(w, "y") && has_vowel(w.substr(0, w.size() - 1))) w.back() = 'i';

  // Step 2 (m > 0)
  static const std::vector<Rule> step2 = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
      {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}};
  apply_step(w, step2, 0);

  // Step 3 (m > 0)
  static const std::vector<Rule> step3 = {{"icate", "ic"}, {"ative", ""}, {"alize", "al"},
                                          {"iciti", "ic"}, {"ical", "ic"}, {"ful", ""},
                                          {"ness", ""}};
  apply_step(w, step3, 0);

  // Step 4 (m > 1); "ion" additionally requires the stem to end in s or t
  {
    static const std::vector<Rule> step4 = {
        {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
        {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
        {"ent", ""},   {"ion", ""},  {"ou", ""},   {"ism", ""},  {"ate", ""},
        {"iti", ""},   {"ous", ""},  {"ive", ""},  {"ize", ""}};
    const Rule* best = nullptr;
    std::size_t best_len = 0;
    for (const Rule& r : step4) {
      std::string s1 = r.s1;
      if (s1.size() > best_len && ends_with(w, s1)) {
        best = &r;
        best_len = s1.size();
      }
    }
    if (best) {
      std::string stem = w.substr(0, w.size() - best_len);
      bool ok = measure(stem) > 1;
      if (ok && std::string(best->s1) == "ion")
        ok = !stem.empty() && (stem.back() == 's' || stem.back() == 't');
      if (ok) w = stem;
    }
  }

  // Step 5a
  if (ends_with(w, "e")) {
    std::string stem = w.substr(0, w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w = stem;
  }

  // Step 5b
  if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l') w.pop_back();

  return w;
}

}  // namespace hybridsumm
