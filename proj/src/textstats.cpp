#include "percept/textstats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "percept/errors.hpp"
#include "percept/util.hpp"

namespace percept {

std::vector<TermCount> count_terms(const std::vector<std::string>& texts,
                                   const std::set<std::string>& stopwords) {
    std::map<std::string, int> counts;
    for (const auto& text : texts) {
        const std::string folded = fold_case(text);
        std::string token;
        auto flush = [&] {
            if (!token.empty() && !stopwords.count(token)) ++counts[token];
            token.clear();
        };
        for (unsigned char c : folded) {
            if (c >= 0x80 || std::isalnum(c))
                token.push_back(static_cast<char>(c));
            else
                flush();
        }
        flush();
    }
    std::vector<TermCount> table;
    table.reserve(counts.size());
    for (const auto& [term, count] : counts) table.push_back({term, count});
    std::stable_sort(table.begin(), table.end(), [](const TermCount& a, const TermCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.term < b.term;
    });
    return table;
}

const std::set<std::string>& builtin_stopwords() {
    static const std::set<std::string> kWords{
        "the",   "a",     "an",    "and",  "or",    "but",  "if",    "of",   "in",    "on",
        "at",    "to",    "for",   "with", "by",    "from", "as",    "is",   "are",   "was",
        "were",  "be",    "been",  "being", "it",   "its",  "this",  "that", "these", "those",
        "they",  "them",  "their", "there", "then", "than", "so",    "such", "not",   "no",
        "nor",   "too",   "very",  "can",  "will",  "just", "about", "into", "over",  "under"};
    return kWords;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stop-word list: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string word = trim(line);
        if (!word.empty()) words.insert(fold_case(word));
    }
    return words;
}

}  // namespace percept
