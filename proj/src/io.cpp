#include "percept/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "percept/csv.hpp"
#include "percept/errors.hpp"
#include "percept/util.hpp"

namespace percept {

namespace {

[[noreturn]] void row_error(const std::string& path, std::size_t row, const std::string& what) {
    throw DataError(path + ":" + std::to_string(row + 1) + ": " + what);
}

void expect_header(const std::string& path, const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& wanted, std::size_t min_cols) {
    if (rows.empty()) throw DataError(path + ": empty file");
    const auto& header = rows[0];
    if (header.size() < min_cols) row_error(path, 0, "missing columns in header");
    for (std::size_t i = 0; i < min_cols; ++i) {
        if (header[i] != wanted[i])
            row_error(path, 0, "expected column '" + wanted[i] + "', found '" + header[i] + "'");
    }
}

}  // namespace

std::vector<RatingRecord> read_rating_csv(const std::string& path) {
    auto rows = read_csv_file(path);
    expect_header(path, rows,
                  {"modality", "stim_a", "stim_b", "rater_id", "repetition", "rating",
                   "scale_max", "raw"},
                  7);
    std::vector<RatingRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r];
        if (f.size() < 7) row_error(path, r, "expected at least 7 fields");
        RatingRecord rec;
        try {
            rec.modality = modality_from_string(f[0]);
        } catch (const DataError& e) {
            row_error(path, r, e.what());
        }
        rec.stim_a = f[1];
        rec.stim_b = f[2];
        rec.rater_id = f[3];
        auto rep = parse_int(f[4]);
        if (!rep || *rep < 0) row_error(path, r, "bad repetition '" + f[4] + "'");
        rec.repetition = static_cast<int>(*rep);
        auto scale = parse_double(f[6]);
        if (!scale || *scale <= 0.0) row_error(path, r, "bad scale_max '" + f[6] + "'");
        rec.scale_max = *scale;
        if (f[5] == "NA") {
            rec.rating = std::nullopt;
        } else {
            auto rating = parse_double(f[5]);
            if (!rating) row_error(path, r, "bad rating '" + f[5] + "'");
            if (*rating < 0.0 || *rating > rec.scale_max)
                row_error(path, r,
                          "rating " + f[5] + " outside scale 0-" + format_double(rec.scale_max));
            rec.rating = *rating;
        }
        if (f.size() > 7) rec.raw = f[7];
        records.push_back(std::move(rec));
    }
    return records;
}

void write_rating_csv(const std::string& path, const std::vector<RatingRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    write_csv_row(out, {"modality", "stim_a", "stim_b", "rater_id", "repetition", "rating",
                        "scale_max", "raw"});
    for (const auto& rec : records) {
        write_csv_row(out, {std::string(to_string(rec.modality)), rec.stim_a, rec.stim_b,
                            rec.rater_id, std::to_string(rec.repetition),
                            rec.rating ? format_double(*rec.rating) : "NA",
                            format_double(rec.scale_max), rec.raw});
    }
}

std::vector<RatingRecord> load_human_ratings(const std::string& path, const StimulusSet& set) {
    auto records = read_rating_csv(path);
    // Duplicate keys are rejected only here: elicited files may repeat a key
    // legitimately when two stimuli share a prompt label (the two reddest
    // color stimuli both render "#ff0000").
    std::set<std::tuple<std::string, std::string, std::string, int>> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.modality != set.modality)
            throw DataError(path + ": record modality " + std::string(to_string(rec.modality)) +
                            " does not match set " + std::string(to_string(set.modality)));
        for (const auto* label : {&rec.stim_a, &rec.stim_b}) {
            if (set.index_of(*label) < 0)
                throw DataError(path + ": unknown stimulus label '" + *label + "'");
        }
        if (!seen.emplace(rec.stim_a, rec.stim_b, rec.rater_id, rec.repetition).second)
            throw DataError(path + ": duplicate (pair, rater, repetition) key for " +
                            rec.stim_a + "/" + rec.stim_b + " rater " + rec.rater_id +
                            " repetition " + std::to_string(rec.repetition));
    }
    return records;
}

namespace {

// Shared layout for confusion and similarity CSVs: labels across the first
// row and down the first column, numeric cells elsewhere.
std::pair<std::vector<std::string>, Eigen::MatrixXd> read_labeled_matrix(
    const std::string& path) {
    auto rows = read_csv_file(path);
    if (rows.size() < 2) throw DataError(path + ": matrix file needs a header and rows");
    const auto& header = rows[0];
    if (header.size() < 2) throw DataError(path + ": matrix header needs labels");
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const std::size_t n = labels.size();
    if (rows.size() - 1 != n)
        throw DataError(path + ": expected " + std::to_string(n) + " data rows, found " +
                        std::to_string(rows.size() - 1));
    Eigen::MatrixXd m(n, n);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r];
        if (f.size() != n + 1) row_error(path, r, "wrong field count");
        if (f[0] != labels[r - 1])
            row_error(path, r, "row label '" + f[0] + "' does not match column order");
        for (std::size_t c = 1; c < f.size(); ++c) {
            auto v = parse_double(f[c]);
            if (!v) row_error(path, r, "bad numeric cell '" + f[c] + "'");
            m(r - 1, c - 1) = *v;
        }
    }
    return {std::move(labels), std::move(m)};
}

}  // namespace

ConfusionMatrix read_confusion_csv(const std::string& path) {
    auto [labels, m] = read_labeled_matrix(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) < 0.0)
                throw DataError(path + ": negative confusion count at " + labels[i]);
    return {std::move(labels), std::move(m)};
}

SimilarityMatrix read_matrix_csv(const std::string& path, double scale_max) {
    auto [labels, m] = read_labeled_matrix(path);
    if (!m.isApprox(m.transpose(), 1e-12)) {
        // Tolerate tiny asymmetry from decimal round-tripping.
        Eigen::MatrixXd sym = (m + m.transpose()) / 2.0;
        if ((m - sym).cwiseAbs().maxCoeff() > 1e-9)
            throw DataError(path + ": similarity matrix is not symmetric");
        m = sym;
    }
    SimilarityMatrix s;
    s.labels = std::move(labels);
    s.values = std::move(m);
    s.scale_max = scale_max;
    return s;
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& labels,
                      const Eigen::MatrixXd& values) {
    if (values.rows() != values.cols() ||
        values.rows() != static_cast<Eigen::Index>(labels.size()))
        throw DataError("matrix/label size mismatch writing " + path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    std::vector<std::string> row;
    row.push_back("");
    for (const auto& l : labels) row.push_back(l);
    write_csv_row(out, row);
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        row.clear();
        row.push_back(labels[i]);
        for (Eigen::Index j = 0; j < values.cols(); ++j)
            row.push_back(format_double(values(i, j)));
        write_csv_row(out, row);
    }
}

std::vector<PaletteEntry> read_palette_csv(const std::string& path) {
    auto rows = read_csv_file(path);
    expect_header(path, rows, {"chip_id", "hex"}, 2);
    std::vector<PaletteEntry> palette;
    std::set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r];
        if (f.size() < 2) row_error(path, r, "expected chip_id,hex");
        if (f[1].empty() || f[1][0] != '#') row_error(path, r, "hex must start with '#'");
        if (!seen.insert(f[0]).second) row_error(path, r, "duplicate chip_id '" + f[0] + "'");
        palette.push_back({f[0], f[1]});
    }
    return palette;
}

std::vector<NamingRecord> read_naming_csv(const std::string& path) {
    auto rows = read_csv_file(path);
    expect_header(path, rows, {"chip_id", "language", "source", "repetition", "term", "raw"}, 5);
    std::vector<NamingRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r];
        if (f.size() < 5) row_error(path, r, "expected at least 5 fields");
        NamingRecord rec;
        rec.chip_id = f[0];
        try {
            rec.language = language_from_string(f[1]);
        } catch (const DataError& e) {
            row_error(path, r, e.what());
        }
        rec.source = f[2];
        auto rep = parse_int(f[3]);
        if (!rep || *rep < 0) row_error(path, r, "bad repetition '" + f[3] + "'");
        rec.repetition = static_cast<int>(*rep);
        rec.term = f[4];
        if (f.size() > 5) rec.raw = f[5];
        records.push_back(std::move(rec));
    }
    return records;
}

void write_naming_csv(const std::string& path, const std::vector<NamingRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    write_csv_row(out, {"chip_id", "language", "source", "repetition", "term", "raw"});
    for (const auto& rec : records) {
        write_csv_row(out, {rec.chip_id, std::string(to_string(rec.language)), rec.source,
                            std::to_string(rec.repetition), rec.term, rec.raw});
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << text;
}

}  // namespace percept
