#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace percept {

struct TermCount {
    std::string term;
    int count = 0;
};

// Lowercases, splits on ASCII non-alphanumerics (multibyte characters count
// as word characters), drops stop words, counts. Sorted by count descending,
// then term ascending.
std::vector<TermCount> count_terms(const std::vector<std::string>& texts,
                                   const std::set<std::string>& stopwords);

// One stop word per line; blank lines ignored.
std::set<std::string> load_stopwords(const std::string& path);

// The 50-word English list also shipped as data/stopwords_en.txt.
const std::set<std::string>& builtin_stopwords();

}  // namespace percept
