// percept: prompt rendering, elicitation campaigns and the analysis stack
// behind the perceptual-similarity study, as one CLI.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "percept/colornaming.hpp"
#include "percept/config.hpp"
#include "percept/csv.hpp"
#include "percept/errors.hpp"
#include "percept/geometry.hpp"
#include "percept/io.hpp"
#include "percept/prompts.hpp"
#include "percept/provider.hpp"
#include "percept/simstats.hpp"
#include "percept/stimuli.hpp"
#include "percept/svg.hpp"
#include "percept/textstats.hpp"
#include "percept/util.hpp"

namespace {

using namespace percept;

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

// Provider selection shared by `elicit` and `colors name`. The cache file
// makes live campaigns replayable; `replay` refuses to touch the network.
struct ProviderSettings {
    std::string kind = "mock";
    std::string mock_spec = "constant:0.5";
    std::string cache_path;
    RunConfig cfg;
    std::uint64_t seed = 0;

    std::unique_ptr<ResponseCache> cache;
    std::unique_ptr<Provider> inner;
    std::unique_ptr<Provider> wrapped;

    Provider& build() {
        if (!cache_path.empty()) cache = std::make_unique<ResponseCache>(cache_path);
        if (kind == "mock") {
            inner = make_mock_provider(mock_spec, seed);
        } else if (kind == "http") {
            HttpOptions options;
            options.base_url = cfg.base_url;
            options.endpoint_path = cfg.endpoint_path;
            options.model = cfg.model;
            options.temperature = cfg.temperature;
            options.credential_env = cfg.credential_env;
            options.timeout_s = cfg.timeout_s;
            inner = std::make_unique<HttpProvider>(std::move(options));
        } else if (kind == "replay") {
            if (!cache) throw DataError("replay provider needs --cache");
            wrapped = std::make_unique<ReplayProvider>(*cache, cfg.model, cfg.temperature);
            return *wrapped;
        } else {
            throw DataError("unknown provider kind: " + kind);
        }
        if (cache) {
            wrapped =
                std::make_unique<CachingProvider>(*inner, *cache, cfg.model, cfg.temperature);
            return *wrapped;
        }
        return *inner;
    }
};

StimulusSet set_for(const std::string& modality, bool extended_colors) {
    return builtin_set(modality_from_string(modality), extended_colors);
}

nlohmann::json correlation_json(const CorrelationReport& report, bool with_ci) {
    nlohmann::json j{{"r", report.r}, {"n_pairs", report.n_pairs}};
    if (with_ci) {
        j["ci_low"] = report.ci_low;
        j["ci_high"] = report.ci_high;
        j["n_boot"] = report.n_boot;
        j["seed"] = report.seed;
    }
    return j;
}

void emit_embedding(const Embedding& emb, const std::vector<std::string>& labels,
                    const std::string& prefix) {
    {
        std::ofstream out(prefix + ".csv", std::ios::binary);
        if (!out) throw DataError("cannot write file: " + prefix + ".csv");
        std::vector<std::string> header{"id", "label"};
        static const char* kAxes[3] = {"x", "y", "z"};
        for (int c = 0; c < emb.coords.cols(); ++c)
            header.push_back(c < 3 ? kAxes[c] : "c" + std::to_string(c + 1));
        write_csv_row(out, header);
        for (Eigen::Index i = 0; i < emb.coords.rows(); ++i) {
            std::vector<std::string> row{std::to_string(i), labels[i]};
            for (Eigen::Index c = 0; c < emb.coords.cols(); ++c)
                row.push_back(format_double(emb.coords(i, c)));
            write_csv_row(out, row);
        }
    }
    std::vector<SvgPoint> points;
    for (Eigen::Index i = 0; i < emb.coords.rows(); ++i) {
        SvgPoint p;
        p.x = emb.coords(i, 0);
        p.y = emb.coords.cols() > 1 ? emb.coords(i, 1) : 0.0;
        p.label = labels[i];
        points.push_back(std::move(p));
    }
    write_text_file(prefix + ".svg", scatter_svg(points));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prompt elicitation and similarity analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file")->configurable(false);

    // The config file must be loaded before the flag targets pick up their
    // defaults, so flags always win over the file. Hence the manual pre-scan.
    RunConfig cfg;
    for (int i = 1; i < argc; ++i) {
        std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            config_path = std::string(arg.substr(9));
    }
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    }
    auto out_path = [&cfg](const std::string& p) {
        if (cfg.out_dir.empty() || cfg.out_dir == ".") return p;
        std::filesystem::path fp(p);
        if (fp.is_absolute()) return p;
        std::filesystem::create_directories(cfg.out_dir);
        return (std::filesystem::path(cfg.out_dir) / fp).string();
    };

    // ---- elicit ----------------------------------------------------------
    auto* elicit = app.add_subcommand("elicit", "run a similarity campaign");
    ProviderSettings elicit_provider;
    elicit_provider.cache_path = cfg.cache_path;
    std::string elicit_modality = cfg.modality;
    std::string elicit_out = "records.csv";
    std::string elicit_checkpoint;
    CampaignOptions elicit_opts;
    elicit_opts.repetitions = cfg.repetitions;
    elicit_opts.max_requeries = cfg.max_requeries;
    elicit_opts.parallelism = cfg.parallelism;
    elicit_opts.seed = cfg.seed;
    bool elicit_extended = cfg.extended_colors;
    elicit->add_option("--modality", elicit_modality, "stimulus set");
    elicit->add_option("--provider", elicit_provider.kind,
                       "provider kind: http, mock or replay");
    elicit->add_option("--mock", elicit_provider.mock_spec, "mock provider spec");
    elicit->add_option("--seed", elicit_opts.seed, "campaign seed");
    elicit->add_option("--reps", elicit_opts.repetitions, "repetitions per pair");
    elicit->add_option("--max-requeries", elicit_opts.max_requeries,
                       "re-queries per invalid response");
    elicit->add_option("--parallelism", elicit_opts.parallelism, "max in-flight requests")
        ->check(CLI::PositiveNumber);
    elicit->add_flag("--include-diagonal", elicit_opts.include_diagonal,
                     "also query identical pairs");
    elicit->add_flag("--extended-colors", elicit_extended, "23-stimulus color set");
    elicit->add_option("--cache", elicit_provider.cache_path, "response cache (JSONL)");
    elicit->add_option("--out", elicit_out, "record CSV path");
    elicit->add_option("--checkpoint", elicit_checkpoint,
                       "checkpoint path (default: <out>.checkpoint)");
    elicit->add_option("--model", cfg.model, "model identifier");
    elicit->add_option("--temperature", cfg.temperature, "sampling temperature");
    elicit->add_option("--base-url", cfg.base_url, "endpoint base URL");
    elicit->add_option("--credential-env", cfg.credential_env,
                       "environment variable holding the API key");

    // ---- aggregate -------------------------------------------------------
    auto* aggregate_cmd = app.add_subcommand("aggregate", "records to a mean matrix");
    std::string agg_records, agg_out = "aggregate.csv";
    bool agg_extended = false;
    aggregate_cmd->add_option("--records", agg_records, "rating record CSV")->required();
    aggregate_cmd->add_option("--out", agg_out, "matrix CSV path");
    aggregate_cmd->add_flag("--extended-colors", agg_extended, "23-stimulus color set");

    // ---- correlate -------------------------------------------------------
    auto* correlate = app.add_subcommand("correlate", "Pearson r against a reference matrix");
    std::string cor_records, cor_matrix, cor_human, cor_out = "correlation.json";
    int cor_boot = cfg.n_boot;
    std::uint64_t cor_seed = cfg.seed;
    correlate->add_option("--records", cor_records, "model rating records CSV");
    correlate->add_option("--matrix", cor_matrix, "model matrix CSV (no bootstrap)");
    correlate->add_option("--human", cor_human, "reference matrix CSV")->required();
    correlate->add_option("--n-boot", cor_boot, "bootstrap repetitions");
    correlate->add_option("--seed", cor_seed, "bootstrap seed");
    correlate->add_option("--out", cor_out, "report JSON path");

    // ---- irr -------------------------------------------------------------
    auto* irr = app.add_subcommand("irr", "split-half inter-rater reliability");
    std::string irr_records, irr_out = "irr.json";
    int irr_splits = 1000;
    std::uint64_t irr_seed = cfg.seed;
    irr->add_option("--records", irr_records, "rating records CSV")->required();
    irr->add_option("--n-splits", irr_splits, "random splits");
    irr->add_option("--seed", irr_seed, "split seed");
    irr->add_option("--out", irr_out, "report JSON path");

    // ---- delta-r ---------------------------------------------------------
    auto* delta = app.add_subcommand("delta-r", "paired bootstrap of r_A - r_B");
    std::string delta_a, delta_b, delta_human, delta_out = "delta_r.json";
    int delta_boot = cfg.n_boot;
    std::uint64_t delta_seed = cfg.seed;
    delta->add_option("--a", delta_a, "records CSV for model A")->required();
    delta->add_option("--b", delta_b, "records CSV for model B")->required();
    delta->add_option("--human", delta_human, "reference matrix CSV")->required();
    delta->add_option("--n-boot", delta_boot, "bootstrap repetitions");
    delta->add_option("--seed", delta_seed, "bootstrap seed");
    delta->add_option("--out", delta_out, "report JSON path");

    // ---- mds -------------------------------------------------------------
    auto* mds = app.add_subcommand("mds", "embed a matrix by multidimensional scaling");
    std::string mds_matrix, mds_out = "mds", mds_method = cfg.mds_method,
                mds_init = "classical";
    int mds_dim = cfg.mds_dim, mds_max_iter = 300;
    double mds_tol = 1e-9;
    bool mds_smooth = cfg.smooth, mds_dissim = false;
    std::uint64_t mds_seed = cfg.seed;
    mds->add_option("--matrix", mds_matrix, "similarity matrix CSV")->required();
    mds->add_option("--dim", mds_dim, "embedding dimension")->check(CLI::PositiveNumber);
    mds->add_option("--method", mds_method, "classical or smacof")
        ->check(CLI::IsMember({"classical", "smacof"}));
    mds->add_option("--init", mds_init, "smacof init: classical or random")
        ->check(CLI::IsMember({"classical", "random"}));
    mds->add_option("--max-iter", mds_max_iter, "smacof iteration cap");
    mds->add_option("--tol", mds_tol, "smacof relative stress tolerance");
    mds->add_flag("--smooth", mds_smooth, "sub-diagonal smoothing before embedding");
    mds->add_flag("--dissimilarity", mds_dissim, "input is already a dissimilarity matrix");
    mds->add_option("--seed", mds_seed, "seed for random init");
    mds->add_option("--out", mds_out, "output prefix (<prefix>.csv, <prefix>.svg)");

    // ---- intervals -------------------------------------------------------
    auto* intervals = app.add_subcommand("intervals", "sub-diagonal interval profile");
    std::string int_matrix, int_out = "intervals";
    double int_threshold = 0.0;
    intervals->add_option("--matrix", int_matrix, "similarity matrix CSV")->required();
    intervals->add_option("--threshold", int_threshold, "peak prominence threshold");
    intervals->add_option("--out", int_out, "output prefix (<prefix>.csv, <prefix>.svg)");

    // ---- colors ----------------------------------------------------------
    auto* colors = app.add_subcommand("colors", "color naming campaigns and analysis");
    colors->require_subcommand(1);

    auto* colors_name = colors->add_subcommand("name", "run a naming campaign");
    ProviderSettings name_provider;
    name_provider.cache_path = cfg.cache_path;
    std::string name_palette, name_language = "en", name_out = "naming.csv";
    std::string name_checkpoint;
    CampaignOptions name_opts;
    name_opts.repetitions = cfg.repetitions;
    name_opts.max_requeries = cfg.max_requeries;
    name_opts.parallelism = cfg.parallelism;
    name_opts.seed = cfg.seed;
    colors_name->add_option("--palette", name_palette, "chip palette CSV")->required();
    colors_name->add_option("--language", name_language, "en or ru")
        ->check(CLI::IsMember({"en", "ru"}));
    colors_name->add_option("--provider", name_provider.kind,
                            "provider kind: http, mock or replay");
    colors_name->add_option("--mock", name_provider.mock_spec, "mock provider spec");
    colors_name->add_option("--seed", name_opts.seed, "campaign seed");
    colors_name->add_option("--reps", name_opts.repetitions, "repetitions per chip");
    colors_name->add_option("--max-requeries", name_opts.max_requeries,
                            "re-queries per invalid response");
    colors_name->add_option("--parallelism", name_opts.parallelism, "max in-flight requests")
        ->check(CLI::PositiveNumber);
    colors_name->add_option("--cache", name_provider.cache_path, "response cache (JSONL)");
    colors_name->add_option("--out", name_out, "naming record CSV path");
    colors_name->add_option("--checkpoint", name_checkpoint,
                            "checkpoint path (default: <out>.checkpoint)");
    colors_name->add_option("--model", cfg.model, "model identifier");
    colors_name->add_option("--temperature", cfg.temperature, "sampling temperature");
    colors_name->add_option("--base-url", cfg.base_url, "endpoint base URL");
    colors_name->add_option("--credential-env", cfg.credential_env,
                            "environment variable holding the API key");

    auto* colors_dominant = colors->add_subcommand("dominant", "dominant-term map");
    std::string dom_records, dom_palette, dom_out = "dominant";
    colors_dominant->add_option("--records", dom_records, "naming records CSV")->required();
    colors_dominant->add_option("--palette", dom_palette,
                                "palette CSV for the cluster color legend");
    colors_dominant->add_option("--out", dom_out,
                                "output prefix (<prefix>.csv, <prefix>_legend.csv)");

    auto* colors_ari = colors->add_subcommand("ari", "adjusted Rand between two campaigns");
    std::string ari_a, ari_b, ari_out = "ari.json";
    int ari_boot = 1000;
    std::uint64_t ari_seed = 0;
    colors_ari->add_option("--a", ari_a, "naming records CSV A")->required();
    colors_ari->add_option("--b", ari_b, "naming records CSV B")->required();
    colors_ari->add_option("--n-boot", ari_boot, "bootstrap repetitions");
    colors_ari->add_option("--seed", ari_seed, "bootstrap seed");
    colors_ari->add_option("--out", ari_out, "report JSON path");

    // ---- terms -----------------------------------------------------------
    auto* terms = app.add_subcommand("terms", "word-frequency table for explanations");
    std::vector<std::string> terms_inputs;
    std::string terms_stopwords, terms_out = "terms.csv";
    int terms_top = 0;
    terms->add_option("--input", terms_inputs, "explanation text files")->required();
    terms->add_option("--stopwords", terms_stopwords,
                      "stop-word list (default: built-in English list)");
    terms->add_option("--top", terms_top, "keep only the N most frequent terms")
        ->check(CLI::NonNegativeNumber);
    terms->add_option("--out", terms_out, "frequency CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (elicit->parsed()) {
            elicit_provider.cfg = cfg;
            elicit_provider.seed = elicit_opts.seed;
            Provider& provider = elicit_provider.build();
            elicit_out = out_path(elicit_out);
            if (elicit_checkpoint.empty()) elicit_checkpoint = elicit_out + ".checkpoint";
            elicit_opts.checkpoint_path = elicit_checkpoint;
            StimulusSet set = set_for(elicit_modality, elicit_extended);
            auto records = elicit_similarity(set, provider, elicit_opts);
            write_rating_csv(elicit_out, records);
            int invalid = 0;
            for (const auto& rec : records)
                if (!rec.rating) ++invalid;
            std::cout << "wrote " << records.size() << " records (" << invalid
                      << " invalid) to " << elicit_out << "\n";
        } else if (aggregate_cmd->parsed()) {
            auto records = read_rating_csv(agg_records);
            if (records.empty()) throw DataError("no records in " + agg_records);
            StimulusSet set = builtin_set(records.front().modality, agg_extended);
            // Stimuli sharing a prompt label (the duplicated #ff0000 chip)
            // collapse onto one matrix row; their mutual pair becomes a
            // diagonal record and pools there.
            std::vector<std::string> labels;
            for (const auto& s : set.stimuli)
                if (std::find(labels.begin(), labels.end(), s.label) == labels.end())
                    labels.push_back(s.label);
            auto agg = aggregate(records, labels);
            write_matrix_csv(out_path(agg_out), agg.matrix.labels, agg.matrix.values);
            std::cout << "wrote " << agg.matrix.labels.size() << "x"
                      << agg.matrix.labels.size() << " matrix to " << out_path(agg_out) << "\n";
        } else if (correlate->parsed()) {
            auto human = read_matrix_csv(cor_human);
            CorrelationReport report;
            bool with_ci = false;
            if (!cor_records.empty()) {
                auto records = read_rating_csv(cor_records);
                report = bootstrap_ci(records, human, cor_boot, cor_seed);
                with_ci = true;
            } else if (!cor_matrix.empty()) {
                auto model = read_matrix_csv(cor_matrix);
                if (model.labels != human.labels)
                    throw DataError("model and reference matrices label different stimuli");
                report.r = pearson(upper_triangle(model.values), upper_triangle(human.values));
                report.n_pairs = static_cast<int>(upper_triangle(model.values).size());
            } else {
                throw DataError("correlate needs --records or --matrix");
            }
            write_json(out_path(cor_out), correlation_json(report, with_ci));
            std::cout << "r = " << format_double(report.r);
            if (with_ci)
                std::cout << " [" << format_double(report.ci_low) << ", "
                          << format_double(report.ci_high) << "]";
            std::cout << " over " << report.n_pairs << " pairs\n";
        } else if (irr->parsed()) {
            auto records = read_rating_csv(irr_records);
            auto report = split_half_irr(records, irr_splits, irr_seed);
            write_json(out_path(irr_out), nlohmann::json{{"mean_r", report.mean_r},
                                               {"ci_low", report.ci_low},
                                               {"ci_high", report.ci_high},
                                               {"n_splits", report.n_splits},
                                               {"seed", report.seed}});
            std::cout << "split-half r = " << format_double(report.mean_r) << " ["
                      << format_double(report.ci_low) << ", "
                      << format_double(report.ci_high) << "]\n";
        } else if (delta->parsed()) {
            auto human = read_matrix_csv(delta_human);
            auto report = delta_r(read_rating_csv(delta_a), read_rating_csv(delta_b), human,
                                  delta_boot, delta_seed);
            write_json(out_path(delta_out), nlohmann::json{{"delta_r", report.delta_r},
                                                 {"ci_low", report.ci_low},
                                                 {"ci_high", report.ci_high},
                                                 {"r_a", report.r_a},
                                                 {"r_b", report.r_b},
                                                 {"n_boot", report.n_boot},
                                                 {"seed", report.seed}});
            std::cout << "delta r = " << format_double(report.delta_r) << " ["
                      << format_double(report.ci_low) << ", "
                      << format_double(report.ci_high) << "]\n";
        } else if (mds->parsed()) {
            auto matrix = read_matrix_csv(mds_matrix);
            Eigen::MatrixXd values = matrix.values;
            if (mds_smooth) values = subdiagonal_smooth(values).first;
            Eigen::MatrixXd d = mds_dissim ? values : sim_to_dissim(values);
            if (mds_dissim) d.diagonal().setZero();
            Embedding emb;
            if (mds_method == "classical") {
                emb = classical_mds(d, mds_dim);
            } else {
                emb = smacof(d, mds_dim,
                             mds_init == "classical" ? MdsInit::classical : MdsInit::random,
                             mds_max_iter, mds_tol, mds_seed);
            }
            emit_embedding(emb, matrix.labels, out_path(mds_out));
            std::cout << emb.method << " embedding, dim " << emb.coords.cols()
                      << ", stress-1 = " << format_double(emb.stress);
            if (emb.method == "classical" && emb.n_negative_eigenvalues > 0)
                std::cout << " (" << emb.n_negative_eigenvalues
                          << " negative eigenvalues truncated)";
            if (emb.method == "majorization")
                std::cout << " after " << emb.iterations << " iterations";
            std::cout << "\n";
        } else if (intervals->parsed()) {
            int_out = out_path(int_out);
            auto matrix = read_matrix_csv(int_matrix);
            auto [smoothed, profile] = subdiagonal_smooth(matrix.values);
            auto peaks = detect_peaks(profile.mean, int_threshold);
            {
                std::ofstream out(int_out + ".csv", std::ios::binary);
                if (!out) throw DataError("cannot write file: " + int_out + ".csv");
                write_csv_row(out, {"k", "mean", "count"});
                for (std::size_t k = 0; k < profile.mean.size(); ++k)
                    write_csv_row(out, {std::to_string(k), format_double(profile.mean[k]),
                                        std::to_string(profile.count[k])});
            }
            write_text_file(int_out + ".svg", profile_svg(profile.mean, peaks));
            std::cout << "peaks:";
            for (int k : peaks) std::cout << ' ' << k;
            if (peaks.empty()) std::cout << " none";
            std::cout << "\n";
        } else if (colors_name->parsed()) {
            name_provider.cfg = cfg;
            name_provider.seed = name_opts.seed;
            Provider& provider = name_provider.build();
            name_out = out_path(name_out);
            if (name_checkpoint.empty()) name_checkpoint = name_out + ".checkpoint";
            name_opts.checkpoint_path = name_checkpoint;
            auto palette = read_palette_csv(name_palette);
            auto records = elicit_naming(palette, language_from_string(name_language),
                                         provider, name_opts);
            write_naming_csv(name_out, records);
            int errors = 0;
            for (const auto& rec : records)
                if (rec.term == "error") ++errors;
            std::cout << "wrote " << records.size() << " records (" << errors
                      << " errors) to " << name_out << "\n";
        } else if (colors_dominant->parsed()) {
            dom_out = out_path(dom_out);
            auto map = dominant_terms(read_naming_csv(dom_records));
            {
                std::ofstream out(dom_out + ".csv", std::ios::binary);
                if (!out) throw DataError("cannot write file: " + dom_out + ".csv");
                write_csv_row(out, {"chip_id", "dominant", "agreement", "marker", "count"});
                for (const auto& chip : map.chips)
                    write_csv_row(out, {chip.chip_id, chip.dominant,
                                        format_double(chip.agreement), chip.marker,
                                        std::to_string(chip.count)});
            }
            if (!dom_palette.empty()) {
                auto legend = cluster_average_color(map, read_palette_csv(dom_palette));
                std::ofstream out(dom_out + "_legend.csv", std::ios::binary);
                if (!out)
                    throw DataError("cannot write file: " + dom_out + "_legend.csv");
                write_csv_row(out, {"term", "chip_count", "avg_hex"});
                for (const auto& entry : legend)
                    write_csv_row(out,
                                  {entry.term, std::to_string(entry.chip_count), entry.avg_hex});
            }
            std::cout << map.chips.size() << " chips mapped";
            if (!map.excluded.empty()) {
                std::cout << "; excluded (all error):";
                for (const auto& chip : map.excluded) std::cout << ' ' << chip;
            }
            std::cout << "\n";
        } else if (colors_ari->parsed()) {
            auto report = ari_bootstrap(read_naming_csv(ari_a), read_naming_csv(ari_b),
                                        ari_boot, ari_seed);
            write_json(out_path(ari_out), nlohmann::json{{"rand", report.rand},
                                               {"ari", report.ari},
                                               {"ci_low", report.ci_low},
                                               {"ci_high", report.ci_high},
                                               {"n_boot", report.n_boot},
                                               {"seed", report.seed},
                                               {"n_chips", report.n_chips}});
            std::cout << "ARI = " << format_double(report.ari) << " ["
                      << format_double(report.ci_low) << ", "
                      << format_double(report.ci_high) << "] over " << report.n_chips
                      << " chips\n";
        } else if (terms->parsed()) {
            std::vector<std::string> texts;
            for (const auto& path : terms_inputs) texts.push_back(read_text_file(path));
            const auto& stopwords =
                terms_stopwords.empty() ? builtin_stopwords() : load_stopwords(terms_stopwords);
            auto table = count_terms(texts, stopwords);
            if (terms_top > 0 && static_cast<int>(table.size()) > terms_top)
                table.resize(static_cast<std::size_t>(terms_top));
            terms_out = out_path(terms_out);
            std::ofstream out(terms_out, std::ios::binary);
            if (!out) throw DataError("cannot write file: " + terms_out);
            write_csv_row(out, {"term", "count"});
            for (const auto& entry : table)
                write_csv_row(out, {entry.term, std::to_string(entry.count)});
            std::cout << table.size() << " terms written to " << terms_out << "\n";
        }
        return 0;
    } catch (const ProviderError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
