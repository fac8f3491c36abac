#pragma once

#include <optional>
#include <string>
#include <vector>

#include "percept/prompts.hpp"
#include "percept/stimuli.hpp"

namespace percept {

// One raw similarity judgment. `rating` empty means the slot was exhausted
// without a valid parse; serialized as "NA" and excluded downstream.
struct RatingRecord {
    Modality modality = Modality::pitch;
    std::string stim_a;
    std::string stim_b;
    std::string rater_id;
    int repetition = 0;
    std::optional<double> rating;
    double scale_max = 1.0;
    std::string raw;  // verbatim response text; empty for human datasets
};

// One color-naming judgment; `term` is a list entry or the sentinel "error".
struct NamingRecord {
    std::string chip_id;
    Language language = Language::en;
    std::string source;
    int repetition = 0;
    std::string term;
    std::string raw;
};

struct PaletteEntry {
    std::string chip_id;
    std::string hex;
};

// Ratings CSV: header modality,stim_a,stim_b,rater_id,repetition,rating,scale_max[,raw].
// Schema violations raise DataError with the offending row number; out-of-scale
// ratings are errors.
std::vector<RatingRecord> read_rating_csv(const std::string& path);
void write_rating_csv(const std::string& path, const std::vector<RatingRecord>& records);

// read_rating_csv plus stimulus-label validation against the given set and
// rejection of duplicate (stim_a,stim_b,rater_id,repetition) keys. Elicited
// files are exempt from the duplicate check because two stimuli can share a
// prompt label; human datasets are keyed by label and must be unambiguous.
std::vector<RatingRecord> load_human_ratings(const std::string& path, const StimulusSet& set);

// Square matrix CSV: first row and first column carry stimulus labels.
ConfusionMatrix read_confusion_csv(const std::string& path);
SimilarityMatrix read_matrix_csv(const std::string& path, double scale_max = 1.0);
void write_matrix_csv(const std::string& path, const std::vector<std::string>& labels,
                      const Eigen::MatrixXd& values);

// Palette CSV: header chip_id,hex.
std::vector<PaletteEntry> read_palette_csv(const std::string& path);

// Naming CSV: header chip_id,language,source,repetition,term,raw.
std::vector<NamingRecord> read_naming_csv(const std::string& path);
void write_naming_csv(const std::string& path, const std::vector<NamingRecord>& records);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace percept
