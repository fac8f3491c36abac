#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "percept/stimuli.hpp"

namespace percept {

enum class Language { en, ru };

std::string_view to_string(Language lang);
Language language_from_string(std::string_view s);  // throws DataError on unknown code

struct FewShotTriplet {
    std::string_view a;
    std::string_view b;
    std::string_view rating;  // exact decimal text, rendered unmodified
};

// One similarity template: preamble, three fixed in-context examples, target
// slots. Rendered output is byte-exact; golden files under tests/fixtures
// define the contract, including the colon-less "Rating 0.76" line and the
// extra blank line before the final "Rating:" in the color template.
struct PromptTemplate {
    Modality modality;
    std::vector<std::string_view> preamble;
    std::string_view prefix;  // "Color", "Note", "Vocal Consonant", ...
    FewShotTriplet triplets[3];
    bool first_rating_missing_colon = false;
    bool blank_line_before_final_rating = false;
};

const PromptTemplate& similarity_template(Modality m);

std::string render_similarity_prompt(Modality m, const StimulusDescriptor& a,
                                     const StimulusDescriptor& b);
// Label-level variant for callers that do not hold descriptors.
std::string render_similarity_prompt(Modality m, std::string_view label_a,
                                     std::string_view label_b);

// The 15 basic color terms per language, canonical order.
const std::vector<std::string>& default_terms(Language lang);

std::vector<std::string> shuffle_terms(std::uint64_t seed, std::vector<std::string> terms);

std::string render_naming_prompt(Language lang, const std::vector<std::string>& terms,
                                 std::string_view hex);

// First real-number token, accepted iff within [0,1]; nullopt means the
// caller should re-query.
std::optional<double> parse_rating(std::string_view response);

// Case-insensitive, punctuation-trimmed match against the allowed list;
// returns the canonical list entry. No fuzzy matching.
std::optional<std::string> parse_color_name(std::string_view response,
                                            const std::vector<std::string>& allowed);

}  // namespace percept
