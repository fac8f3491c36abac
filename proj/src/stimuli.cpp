#include "percept/stimuli.hpp"

#include <cmath>
#include <cstdio>

#include "percept/errors.hpp"
#include "percept/util.hpp"

namespace percept {

std::string_view to_string(Modality m) {
    switch (m) {
        case Modality::pitch: return "pitch";
        case Modality::loudness: return "loudness";
        case Modality::color: return "color";
        case Modality::consonant: return "consonant";
        case Modality::taste: return "taste";
        case Modality::timbre: return "timbre";
    }
    return "?";
}

Modality modality_from_string(std::string_view s) {
    for (Modality m : {Modality::pitch, Modality::loudness, Modality::color, Modality::consonant,
                       Modality::taste, Modality::timbre}) {
        if (s == to_string(m)) return m;
    }
    throw DataError("unknown modality: " + std::string(s));
}

int StimulusSet::index_of(std::string_view label) const {
    for (const auto& s : stimuli) {
        if (s.label == label) return s.id;
    }
    return -1;
}

double freq_to_semitones(double f_hz) {
    if (f_hz <= 0.0) throw DataError("frequency must be positive");
    return 12.0 * std::log2(f_hz / 440.0) + 69.0;
}

double semitones_to_freq(double midi) { return 440.0 * std::exp2((midi - 69.0) / 12.0); }

std::string wavelength_to_hex(double nm) {
    if (nm < 380.0 || nm > 780.0) throw DataError("wavelength out of visible range");
    double r = 0.0, g = 0.0, b = 0.0;
    if (nm < 440.0) {
        r = -(nm - 440.0) / (440.0 - 380.0);
        b = 1.0;
    } else if (nm < 490.0) {
        g = (nm - 440.0) / (490.0 - 440.0);
        b = 1.0;
    } else if (nm < 510.0) {
        g = 1.0;
        b = -(nm - 510.0) / (510.0 - 490.0);
    } else if (nm < 580.0) {
        r = (nm - 510.0) / (580.0 - 510.0);
        g = 1.0;
    } else if (nm < 645.0) {
        r = 1.0;
        g = -(nm - 645.0) / (645.0 - 580.0);
    } else {
        r = 1.0;
    }
    // Intensity drops toward the edges of the visible spectrum.
    double factor = 1.0;
    if (nm < 420.0) {
        factor = 0.3 + 0.7 * (nm - 380.0) / (420.0 - 380.0);
    } else if (nm > 700.0) {
        factor = 0.3 + 0.7 * (780.0 - nm) / (780.0 - 700.0);
    }
    const double gamma = 0.8;
    auto channel = [&](double c) -> int {
        if (c <= 0.0) return 0;
        return static_cast<int>(std::floor(255.0 * std::pow(c * factor, gamma) + 0.5));
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", channel(r), channel(g), channel(b));
    return buf;
}

StimulusSet build_pitch_set() {
    StimulusSet set{Modality::pitch, {}};
    for (int midi = 60; midi <= 84; ++midi) {
        double hz = semitones_to_freq(midi);
        set.stimuli.push_back(
            {Modality::pitch, midi - 60, format_double(hz) + " Hz", hz, "Hz"});
    }
    return set;
}

StimulusSet build_loudness_set() {
    StimulusSet set{Modality::loudness, {}};
    for (int k = 0; k < 8; ++k) {
        double db = (711 + 5 * k) / 10.0;  // 71.1 .. 74.6 in 0.5 dB steps
        set.stimuli.push_back(
            {Modality::loudness, k, format_double(db) + " dB", db, "dB"});
    }
    return set;
}

namespace {
constexpr double kBaseWavelengths[14] = {434, 445, 465, 472, 490, 504, 537,
                                         555, 584, 600, 610, 628, 651, 674};
}

StimulusSet build_color_set() {
    StimulusSet set{Modality::color, {}};
    for (int i = 0; i < 14; ++i) {
        double nm = kBaseWavelengths[i];
        set.stimuli.push_back({Modality::color, i, wavelength_to_hex(nm), nm, "nm"});
    }
    return set;
}

StimulusSet extend_color_set(const StimulusSet& base) {
    if (base.size() != 14) throw DataError("extend_color_set expects the 14-color base set");
    std::vector<double> wavelengths;
    for (const auto& s : base.stimuli) {
        if (!s.value) throw DataError("color stimulus lacks a wavelength");
        if (!wavelengths.empty() && *s.value <= wavelengths.back())
            throw DataError("base color set must be sorted by wavelength");
        wavelengths.push_back(*s.value);
    }
    // Midpoints go into the first 9 gaps, which covers the densest part of the
    // hue circle; the result stays sorted at 23 stimuli.
    std::vector<double> extended;
    for (std::size_t i = 0; i < wavelengths.size(); ++i) {
        extended.push_back(wavelengths[i]);
        if (i + 1 < wavelengths.size() && i < 9)
            extended.push_back((wavelengths[i] + wavelengths[i + 1]) / 2.0);
    }
    StimulusSet set{Modality::color, {}};
    for (std::size_t i = 0; i < extended.size(); ++i) {
        set.stimuli.push_back({Modality::color, static_cast<int>(i),
                               wavelength_to_hex(extended[i]), extended[i], "nm"});
    }
    return set;
}

StimulusSet build_consonant_set() {
    // 8 voiced/voiceless obstruent pairs plus the nasals m, n; symbols follow
    // ARPA-independent IPA rendering and include theta, eth, ezh and esh.
    static const char* kConsonants[16] = {"b", "p",      "m",      "n",      "g",      "k",
                                          "d", "t",      "f",      "v",      "s",      "z",
                                          "θ", "ð", "ʒ", "ʃ"};
    StimulusSet set{Modality::consonant, {}};
    for (int i = 0; i < 16; ++i) {
        set.stimuli.push_back({Modality::consonant, i, kConsonants[i], std::nullopt, ""});
    }
    return set;
}

StimulusSet build_taste_set() {
    static const char* kFlavors[10] = {"salt",  "salt-substitute", "MSG",
                                       "quinine", "acid",          "sugar",
                                       "artificial sweetener",     "salt-sugar",
                                       "acid-sugar",               "quinine-sugar"};
    StimulusSet set{Modality::taste, {}};
    for (int i = 0; i < 10; ++i) {
        set.stimuli.push_back({Modality::taste, i, kFlavors[i], std::nullopt, ""});
    }
    return set;
}

StimulusSet build_timbre_set() {
    static const char* kInstruments[12] = {"Clarinet", "Saxophone",    "Trumpet", "Cello",
                                           "French Horn", "Oboe",      "Flute",   "English Horn",
                                           "Bassoon",  "Trombone",     "Violin",  "Piano"};
    StimulusSet set{Modality::timbre, {}};
    for (int i = 0; i < 12; ++i) {
        set.stimuli.push_back({Modality::timbre, i, kInstruments[i], std::nullopt, ""});
    }
    return set;
}

StimulusSet builtin_set(Modality m, bool extended_colors) {
    switch (m) {
        case Modality::pitch: return build_pitch_set();
        case Modality::loudness: return build_loudness_set();
        case Modality::color:
            return extended_colors ? extend_color_set(build_color_set()) : build_color_set();
        case Modality::consonant: return build_consonant_set();
        case Modality::taste: return build_taste_set();
        case Modality::timbre: return build_timbre_set();
    }
    throw DataError("unknown modality");
}

SimilarityMatrix confusion_to_similarity(const ConfusionMatrix& c) {
    const Eigen::Index n = c.counts.rows();
    if (c.counts.cols() != n) throw DataError("confusion matrix must be square");
    auto label = [&](Eigen::Index i) {
        return i < static_cast<Eigen::Index>(c.labels.size()) ? c.labels[i]
                                                              : "#" + std::to_string(i);
    };
    Eigen::MatrixXd p(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            double v = c.counts(i, j);
            if (v < 0.0 || !std::isfinite(v))
                throw DataError("negative or non-finite confusion count for " + label(i));
            row_sum += v;
        }
        if (row_sum <= 0.0) throw DataError("confusion row sums to zero for " + label(i));
        p.row(i) = c.counts.row(i) / row_sum;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p(i, i) <= 0.0)
            throw DataError("zero diagonal confusion probability for " + label(i));
    }
    SimilarityMatrix s;
    s.labels = c.labels;
    s.values = Eigen::MatrixXd::Zero(n, n);
    s.scale_max = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        s.values(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double v = std::sqrt(p(i, j) * p(j, i) / (p(i, i) * p(j, j)));
            s.values(i, j) = v;
            s.values(j, i) = v;
            if (v > 1.0) ++s.n_above_scale;
        }
    }
    return s;
}

}  // namespace percept
