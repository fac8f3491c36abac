#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace percept {

enum class Modality { pitch, loudness, color, consonant, taste, timbre };

std::string_view to_string(Modality m);
Modality modality_from_string(std::string_view s);  // throws DataError on unknown name

struct StimulusDescriptor {
    Modality modality;
    int id = 0;                   // index within the set, unique, >= 0
    std::string label;            // text rendered into prompts ("440.0 Hz", "#ff5700", "f")
    std::optional<double> value;  // Hz, dB or nm payload where applicable
    std::string unit;             // "Hz", "dB", "nm" or empty
};

struct StimulusSet {
    Modality modality;
    std::vector<StimulusDescriptor> stimuli;

    int size() const { return static_cast<int>(stimuli.size()); }
    const StimulusDescriptor& operator[](int i) const { return stimuli.at(i); }
    // Index of the stimulus with the given label, or -1.
    int index_of(std::string_view label) const;
};

// n x n nonnegative counts or probabilities; labels follow stimulus order.
struct ConfusionMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd counts;
};

struct SimilarityMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;
    double scale_max = 1.0;
    // Cells whose similarity exceeded scale_max (possible for confusion-derived
    // scores); preserved in `values`, count surfaced here for reporting.
    int n_above_scale = 0;
};

// MIDI <-> frequency. p = 12*log2(f/440) + 69.
double freq_to_semitones(double f_hz);
double semitones_to_freq(double midi);

// Visible-spectrum approximation: six linear hue bands, gamma 0.8, intensity
// fall-off below 420 nm and above 700 nm. Valid for 380-780 nm.
std::string wavelength_to_hex(double nm);

StimulusSet build_pitch_set();      // 25 complex tones, MIDI 60..84
StimulusSet build_loudness_set();   // 8 pure tones, 71.1..74.6 dB
StimulusSet build_color_set();      // 14 hues, 434..674 nm
StimulusSet build_consonant_set();  // 16 consonant phonemes
StimulusSet build_taste_set();      // 10 flavors
StimulusSet build_timbre_set();     // 12 instruments

// Inserts the wavelength midpoint between each of the first 9 adjacent base
// pairs, giving 23 stimuli; base wavelengths are preserved unchanged.
StimulusSet extend_color_set(const StimulusSet& base);

StimulusSet builtin_set(Modality m, bool extended_colors = false);

// Row-normalizes counts to probabilities, then s_xy = sqrt(p_xy*p_yx/(p_xx*p_yy)).
// Result is exactly symmetric with unit diagonal. Values above 1 are kept.
SimilarityMatrix confusion_to_similarity(const ConfusionMatrix& c);

}  // namespace percept
