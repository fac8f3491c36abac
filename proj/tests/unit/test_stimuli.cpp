#include <doctest.h>

#include <cmath>
#include <vector>

#include "percept/errors.hpp"
#include "percept/rng.hpp"
#include "percept/stimuli.hpp"

using namespace percept;

TEST_CASE("modality names round-trip") {
    for (auto m : {Modality::pitch, Modality::loudness, Modality::color, Modality::consonant,
                   Modality::taste, Modality::timbre}) {
        CHECK(modality_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(modality_from_string("smell"), DataError);
}

TEST_CASE("semitone conversion: reference points and round trip") {
    CHECK(freq_to_semitones(440.0) == doctest::Approx(69.0).epsilon(1e-12));
    CHECK(freq_to_semitones(261.626) == doctest::Approx(60.0).epsilon(1e-3));
    CHECK(freq_to_semitones(1046.502) == doctest::Approx(84.0).epsilon(1e-3));
    for (int midi = 0; midi <= 127; ++midi) {
        double f = semitones_to_freq(midi);
        CHECK(std::abs(freq_to_semitones(f) - midi) < 1e-9 * std::max<double>(1.0, midi));
    }
    CHECK_THROWS_AS(freq_to_semitones(0.0), DataError);
    CHECK_THROWS_AS(freq_to_semitones(-1.0), DataError);
}

TEST_CASE("pitch set spans C4..C6 in semitone steps") {
    auto set = build_pitch_set();
    REQUIRE(set.size() == 25);
    CHECK(set[0].label == "261.6255653005986 Hz");
    CHECK(set[24].label == "1046.5022612023945 Hz");
    REQUIRE(set[0].value.has_value());
    CHECK(*set[0].value == doctest::Approx(261.626).epsilon(1e-5));
    CHECK(set[0].unit == "Hz");
    for (int i = 1; i < 25; ++i) {
        double ratio = *set[i].value / *set[i - 1].value;
        CHECK(ratio == doctest::Approx(std::pow(2.0, 1.0 / 12.0)).epsilon(1e-9));
    }
}

TEST_CASE("loudness set is a 0.5 dB grid from 71.1 dB") {
    auto set = build_loudness_set();
    REQUIRE(set.size() == 8);
    CHECK(set[0].label == "71.1 dB");
    CHECK(set[7].label == "74.6 dB");
    for (int i = 0; i < 8; ++i) CHECK(*set[i].value == doctest::Approx(71.1 + 0.5 * i));
}

TEST_CASE("wavelength conversion: endpoints and frozen golden value") {
    CHECK(wavelength_to_hex(550.0) == "#a3ff00");
    CHECK(wavelength_to_hex(439.5) == "#0600ff");
    // 434 nm is blue-dominant, 674 nm red-dominant.
    auto violet = wavelength_to_hex(434.0);
    CHECK(violet.substr(5, 2) == "ff");
    auto red = wavelength_to_hex(674.0);
    CHECK(red.substr(1, 2) == "ff");
    CHECK(red.substr(3, 4) == "0000");
    CHECK_THROWS_AS(wavelength_to_hex(100.0), DataError);
    CHECK_THROWS_AS(wavelength_to_hex(900.0), DataError);
}

TEST_CASE("base color set renders the frozen 14 hex codes") {
    auto set = build_color_set();
    REQUIRE(set.size() == 14);
    const std::vector<std::pair<double, std::string>> expected = {
        {434, "#2800ff"}, {445, "#0028ff"}, {465, "#0092ff"}, {472, "#00b2ff"},
        {490, "#00ffff"}, {504, "#00ff61"}, {537, "#77ff00"}, {555, "#b3ff00"},
        {584, "#fff200"}, {600, "#ffbe00"}, {610, "#ff9b00"}, {628, "#ff5700"},
        {651, "#ff0000"}, {674, "#ff0000"}};
    for (int i = 0; i < 14; ++i) {
        CHECK(*set[i].value == expected[i].first);
        CHECK(set[i].label == expected[i].second);
        CHECK(set[i].unit == "nm");
    }
}

TEST_CASE("extended color set inserts midpoints into the first nine gaps") {
    auto base = build_color_set();
    auto ext = extend_color_set(base);
    REQUIRE(ext.size() == 23);
    const std::vector<double> wavelengths = {434,   439.5, 445, 455, 465,   468.5, 472, 481,
                                             490,   497,   504, 520.5, 537, 546,   555, 569.5,
                                             584,   592,   600, 610, 628,  651,   674};
    for (int i = 0; i < 23; ++i) CHECK(*ext[i].value == wavelengths[i]);
    for (int i = 1; i < 23; ++i) CHECK(*ext[i].value > *ext[i - 1].value);
    // every base wavelength survives
    for (int i = 0; i < 14; ++i) {
        bool found = false;
        for (int j = 0; j < 23; ++j)
            if (*ext[j].value == *base[i].value) found = true;
        CHECK(found);
    }
    CHECK(ext[1].label == "#0600ff");
    CHECK_THROWS_AS(extend_color_set(ext), DataError);
}

TEST_CASE("consonant, taste and timbre sets carry the frozen labels") {
    auto cons = build_consonant_set();
    REQUIRE(cons.size() == 16);
    const std::vector<std::string> ipa = {"b", "p", "m", "n", "g", "k", "d", "t",
                                          "f", "v", "s", "z", "θ", "ð", "ʒ", "ʃ"};
    for (int i = 0; i < 16; ++i) CHECK(cons[i].label == ipa[i]);

    auto taste = build_taste_set();
    REQUIRE(taste.size() == 10);
    CHECK(taste[0].label == "salt");
    CHECK(taste[1].label == "salt-substitute");
    CHECK(taste[2].label == "MSG");
    CHECK(taste[6].label == "artificial sweetener");
    CHECK(taste[9].label == "quinine-sugar");

    auto timbre = build_timbre_set();
    REQUIRE(timbre.size() == 12);
    CHECK(timbre[0].label == "Clarinet");
    CHECK(timbre[4].label == "French Horn");
    CHECK(timbre[7].label == "English Horn");
    CHECK(timbre[11].label == "Piano");
    CHECK(timbre.index_of("Piano") == 11);
    CHECK(timbre.index_of("Kazoo") == -1);
}

TEST_CASE("builtin_set dispatches on modality") {
    CHECK(builtin_set(Modality::pitch).size() == 25);
    CHECK(builtin_set(Modality::color).size() == 14);
    CHECK(builtin_set(Modality::color, true).size() == 23);
    CHECK(builtin_set(Modality::loudness).size() == 8);
    CHECK(builtin_set(Modality::consonant).size() == 16);
    CHECK(builtin_set(Modality::taste).size() == 10);
    CHECK(builtin_set(Modality::timbre).size() == 12);
}

namespace {

ConfusionMatrix make_confusion(const std::vector<std::vector<double>>& rows) {
    ConfusionMatrix c;
    const int n = static_cast<int>(rows.size());
    c.counts.resize(n, n);
    for (int i = 0; i < n; ++i) {
        c.labels.push_back("s" + std::to_string(i));
        for (int j = 0; j < n; ++j) c.counts(i, j) = rows[i][j];
    }
    return c;
}

}  // namespace

TEST_CASE("confusion to similarity: hand-checked cell") {
    auto c = make_confusion({{0.5, 0.1, 0.4}, {0.2, 0.4, 0.4}, {0.3, 0.3, 0.4}});
    auto s = confusion_to_similarity(c);
    CHECK(s.values(0, 1) == doctest::Approx(0.316228).epsilon(1e-6));
    CHECK(s.values(0, 1) == doctest::Approx(std::sqrt(0.1)).epsilon(1e-12));
    CHECK(s.values(0, 0) == 1.0);
    CHECK(s.values(1, 1) == 1.0);
}

TEST_CASE("confusion to similarity: zero confusion and full confusion") {
    auto zero = confusion_to_similarity(
        make_confusion({{0.9, 0.0, 0.1}, {0.0, 0.8, 0.2}, {0.1, 0.1, 0.8}}));
    CHECK(zero.values(0, 1) == 0.0);

    // p_xy = p_xx and p_yx = p_yy force similarity 1.
    auto one = confusion_to_similarity(make_confusion({{0.5, 0.5}, {0.5, 0.5}}));
    CHECK(one.values(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("confusion normalization makes row scale irrelevant") {
    auto a = confusion_to_similarity(make_confusion({{5, 1, 4}, {2, 4, 4}, {3, 3, 4}}));
    auto b = confusion_to_similarity(
        make_confusion({{0.5, 0.1, 0.4}, {0.2, 0.4, 0.4}, {0.3, 0.3, 0.4}}));
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("confusion to similarity is exactly symmetric with unit diagonal") {
    Rng rng(314);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.below(7));
        std::vector<std::vector<double>> rows(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = (i == j) ? 1.0 + rng.uniform01() : rng.uniform01();
        auto s = confusion_to_similarity(make_confusion(rows));
        for (int i = 0; i < n; ++i) {
            CHECK(s.values(i, i) == 1.0);
            for (int j = 0; j < n; ++j) CHECK(s.values(i, j) == s.values(j, i));
        }
    }
}

TEST_CASE("confusion to similarity commutes with permutation") {
    auto c = make_confusion({{5, 1, 4}, {2, 4, 4}, {3, 3, 4}});
    auto s = confusion_to_similarity(c);
    // permutation (2, 0, 1)
    const int perm[3] = {2, 0, 1};
    ConfusionMatrix pc;
    pc.counts.resize(3, 3);
    for (int i = 0; i < 3; ++i) {
        pc.labels.push_back(c.labels[perm[i]]);
        for (int j = 0; j < 3; ++j) pc.counts(i, j) = c.counts(perm[i], perm[j]);
    }
    auto ps = confusion_to_similarity(pc);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ps.values(i, j) == s.values(perm[i], perm[j]));
}

TEST_CASE("confusion to similarity rejects bad input and flags values above scale") {
    CHECK_THROWS_WITH_AS(
        confusion_to_similarity(make_confusion({{0.0, 1.0}, {0.5, 0.5}})),
        doctest::Contains("s0"), DataError);
    CHECK_THROWS_AS(confusion_to_similarity(make_confusion({{0.5, -0.1}, {0.5, 0.5}})),
                    DataError);
    CHECK_THROWS_AS(confusion_to_similarity(make_confusion({{0.0, 0.0}, {0.0, 0.0}})),
                    DataError);

    // off-diagonal confusion above the diagonal product exceeds 1 and is kept
    auto s = confusion_to_similarity(make_confusion({{0.2, 0.8}, {0.8, 0.2}}));
    CHECK(s.values(0, 1) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(s.n_above_scale == 1);
}
