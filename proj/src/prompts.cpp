#include "percept/prompts.hpp"

#include <cctype>
#include <charconv>

#include "percept/errors.hpp"
#include "percept/rng.hpp"
#include "percept/util.hpp"

namespace percept {

std::string_view to_string(Language lang) { return lang == Language::en ? "en" : "ru"; }

Language language_from_string(std::string_view s) {
    if (s == "en") return Language::en;
    if (s == "ru") return Language::ru;
    throw DataError("unknown language: " + std::string(s));
}

namespace {

const PromptTemplate kColor{
    Modality::color,
    {"People described pairs of colors using their hex codes.",
     "How similar are the two colors in each pair on a scale of 0-1 where 0 is completely "
     "dissimilar and 1 is completely similar?",
     "Respond only with the numerical similarity rating."},
    "Color",
    {{"#ff5700", "#ff9b00", "0.76"},
     {"#b3ff00", "#00ff61", "0.45"},
     {"#FF0000", "#00b2ff", "0.02"}},
    /*first_rating_missing_colon=*/true,
    /*blank_line_before_final_rating=*/true,
};

const PromptTemplate kPitch{
    Modality::pitch,
    {"People described pairs of musical notes using their frequencies in hertz.",
     "How similar are the musical notes in each pair on a scale of 0-1 where 0 is completely "
     "dissimilar and 1 is completely similar?"},
    "Note",
    {{"587.3295358348151 Hz", "987.7666025122483 Hz", "0.46083740655517463"},
     {"349.2282314330039 Hz", "277.1826309768721 Hz", "0.743838237117938"},
     {"415.3046975799451 Hz", "987.7666025122483 Hz", "0.19874605585261726"}},
};

const PromptTemplate kConsonant{
    Modality::consonant,
    {"People described vocal consonants using the international phonetic alphabet (IPA).",
     "How similar do the vocal consonants in each pair sound on a scale of 0-1 where 0 is "
     "completely dissimilar and 1 is completely similar?",
     "Respond only with the numerical similarity rating."},
    "Vocal Consonant",
    {{"f", "m", "0.5"},
     {"n", "ʒ", "0.40740740740740744"},
     {"ʃ", "ʃ", "1.0"}},
};

const PromptTemplate kLoudness{
    Modality::loudness,
    {"People described the loudness of pure tones in decibels (dB).",
     "How similar do the pure tones in each pair sound on a scale of 0-1 where 0 is completely "
     "dissimilar and 1 is completely similar?"},
    "Pure Tone",
    {{"72.6 dB", "74.1 dB", "0.3495324720283043"},
     {"74.6 dB", "73.6 dB", "0.5055839477695901"},
     {"74.1 dB", "74.1 dB", "1.0"}},
};

const PromptTemplate kTaste{
    Modality::taste,
    {"People described flavors they tasted using words.",
     "How similar are the flavors in each pair on a scale of 0-1 where 0 is completely "
     "dissimilar and 1 is completely similar?"},
    "Flavor",
    {{"quinine", "artificial sweetener", "0.0"},
     {"artificial sweetener", "salt", "0.015433904145892428"},
     {"quinine-sugar", "acid-sugar", "0.2539115246067999"}},
};

const PromptTemplate kTimbre{
    Modality::timbre,
    {"People listened to pairs of musical instruments and rated the similarity of their timbre.",
     "How similar is the timbre of the instruments in each pair on a scale of 0-1 where 0 is "
     "completely dissimilar and 1 is completely similar?"},
    "Instrument",
    {{"Cello", "Flute", "0.5604846433040316"},
     {"Flute", "Clarinet", "0.270932601836378"},
     {"Trombone", "Bassoon", "0.2893895067551666"}},
};

}  // namespace

const PromptTemplate& similarity_template(Modality m) {
    switch (m) {
        case Modality::color: return kColor;
        case Modality::pitch: return kPitch;
        case Modality::consonant: return kConsonant;
        case Modality::loudness: return kLoudness;
        case Modality::taste: return kTaste;
        case Modality::timbre: return kTimbre;
    }
    throw DataError("unknown modality");
}

std::string render_similarity_prompt(Modality m, std::string_view label_a,
                                     std::string_view label_b) {
    const PromptTemplate& t = similarity_template(m);
    std::string out;
    for (auto line : t.preamble) {
        out += line;
        out += '\n';
    }
    out += '\n';
    for (int i = 0; i < 3; ++i) {
        const FewShotTriplet& trip = t.triplets[i];
        out += t.prefix;
        out += " 1: ";
        out += trip.a;
        out += '\n';
        out += t.prefix;
        out += " 2: ";
        out += trip.b;
        out += '\n';
        out += (i == 0 && t.first_rating_missing_colon) ? "Rating " : "Rating: ";
        out += trip.rating;
        out += "\n\n";
    }
    out += t.prefix;
    out += " 1: ";
    out += label_a;
    out += '\n';
    out += t.prefix;
    out += " 2: ";
    out += label_b;
    out += '\n';
    if (t.blank_line_before_final_rating) out += '\n';
    out += "Rating:";
    return out;
}

std::string render_similarity_prompt(Modality m, const StimulusDescriptor& a,
                                     const StimulusDescriptor& b) {
    if (a.modality != m || b.modality != m)
        throw DataError("stimulus modality does not match the prompt template");
    return render_similarity_prompt(m, a.label, b.label);
}

const std::vector<std::string>& default_terms(Language lang) {
    static const std::vector<std::string> kEn{
        "red",   "orange", "yellow", "green",     "blue",   "purple", "pink", "brown",
        "black", "white",  "gray",   "turquoise", "violet", "magenta", "cyan"};
    static const std::vector<std::string> kRu{
        "красный",    "оранжевый", "жёлтый", "зелёный",   "синий",
        "голубой",    "фиолетовый", "лиловый", "розовый", "коричневый",
        "чёрный",     "белый",     "серый",  "бирюзовый", "бордовый"};
    return lang == Language::en ? kEn : kRu;
}

std::vector<std::string> shuffle_terms(std::uint64_t seed, std::vector<std::string> terms) {
    Rng rng(seed);
    rng.shuffle(terms);
    return terms;
}

std::string render_naming_prompt(Language lang, const std::vector<std::string>& terms,
                                 std::string_view hex) {
    if (terms.size() != 15) throw DataError("naming prompt requires exactly 15 terms");
    std::string list;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) list += ", ";
        list += terms[i];
    }
    std::string out;
    if (lang == Language::en) {
        out += "Here is a list of 15 basic color names: " + list + ".\n";
        out += "Which of these names best describes the following color: ";
        out += hex;
        out += "?\n";
        out += "Respond only using the name.";
    } else {
        out += "Вот список из 15 названий основных цветов: " + list + ".\n";
        out += "Какое из названий цветов лучше всего описывает следующий цвет: ";
        out += hex;
        out += "?\n";
        out += "Отвечайте только названием одного цвета из списка.";
    }
    return out;
}

std::optional<double> parse_rating(std::string_view response) {
    for (std::size_t i = 0; i < response.size(); ++i) {
        char c = response[i];
        bool starts_number = false;
        if (c >= '0' && c <= '9') {
            starts_number = true;
        } else if ((c == '+' || c == '-' || c == '.') && i + 1 < response.size()) {
            char d = response[i + 1];
            if (d >= '0' && d <= '9') starts_number = true;
            if ((c == '+' || c == '-') && d == '.' && i + 2 < response.size() &&
                response[i + 2] >= '0' && response[i + 2] <= '9')
                starts_number = true;
        }
        if (!starts_number) continue;
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(response.data() + i, response.data() + response.size(), value);
        if (ec == std::errc{}) {
            if (value >= 0.0 && value <= 1.0) return value;
            return std::nullopt;  // first numeric token out of range
        }
        i = static_cast<std::size_t>(ptr - response.data());
    }
    return std::nullopt;
}

std::optional<std::string> parse_color_name(std::string_view response,
                                            const std::vector<std::string>& allowed) {
    std::string folded = fold_case(response);
    // Trim ASCII whitespace and punctuation at both ends; multibyte letters
    // (Cyrillic) are untouched.
    auto is_edge_junk = [](unsigned char c) { return c < 0x80 && !std::isalnum(c); };
    std::size_t b = 0, e = folded.size();
    while (b < e && is_edge_junk(static_cast<unsigned char>(folded[b]))) ++b;
    while (e > b && is_edge_junk(static_cast<unsigned char>(folded[e - 1]))) --e;
    std::string_view core(folded.data() + b, e - b);
    for (const auto& term : allowed) {
        if (fold_case(term) == core) return term;
    }
    return std::nullopt;
}

}  // namespace percept
