#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "percept/colornaming.hpp"
#include "percept/errors.hpp"
#include "percept/rng.hpp"

using namespace percept;

namespace {

NamingRecord nrec(const std::string& chip, const std::string& term, int rep = 0) {
    NamingRecord r;
    r.chip_id = chip;
    r.language = Language::en;
    r.source = "gpt-4";
    r.repetition = rep;
    r.term = term;
    return r;
}

std::vector<NamingRecord> chip_records(const std::string& chip,
                                       const std::vector<std::string>& terms) {
    std::vector<NamingRecord> records;
    for (std::size_t i = 0; i < terms.size(); ++i)
        records.push_back(nrec(chip, terms[i], static_cast<int>(i)));
    return records;
}

// Pairwise-agreement oracle for the Rand statistics, O(n^2) by definition.
std::pair<double, double> pair_oracle(const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    double both = 0, same_a = 0, same_b = 0, total = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool sa = a[i] == a[j], sb = b[i] == b[j];
            total += 1;
            if (sa) same_a += 1;
            if (sb) same_b += 1;
            if (sa && sb) both += 1;
        }
    }
    double agree = both + (total - same_a - same_b + both);
    double expected = same_a * same_b / total;
    double max_index = 0.5 * (same_a + same_b);
    double ari = (both - expected) / (max_index - expected);
    return {agree / total, ari};
}

}  // namespace

TEST_CASE("dominant_terms picks the mode, flags weak agreement, excludes all-error chips") {
    std::vector<NamingRecord> records;
    auto add = [&](const std::string& chip, const std::vector<std::string>& terms) {
        for (const auto& r : chip_records(chip, terms)) records.push_back(r);
    };
    add("c1", {"blue", "blue", "green"});
    add("c2", {"blue", "blue", "blue"});
    add("c3", {"green", "green", "blue", "pink"});
    add("c4", {"error", "error", "error"});
    add("c5", {"pink", "error", "pink", "pink", "red"});

    auto map = dominant_terms(records);
    REQUIRE(map.chips.size() == 4);
    CHECK(map.excluded == std::vector<std::string>{"c4"});

    CHECK(map.chips[0].chip_id == "c1");
    CHECK(map.chips[0].dominant == "blue");
    CHECK(map.chips[0].agreement == doctest::Approx(2.0 / 3.0));
    CHECK(map.chips[0].marker == "*");
    CHECK(map.chips[0].count == 3);

    CHECK(map.chips[1].dominant == "blue");
    CHECK(map.chips[1].agreement == 1.0);
    CHECK(map.chips[1].marker == "");

    // c3: 2/4 agreement sits exactly on the 0.5 boundary, so no "-" marker
    CHECK(map.chips[2].dominant == "green");
    CHECK(map.chips[2].marker == "*");

    // c5: error responses are discarded before counting: 3 of 4 pinks
    CHECK(map.chips[3].dominant == "pink");
    CHECK(map.chips[3].count == 4);
    CHECK(map.chips[3].agreement == doctest::Approx(0.75));
}

TEST_CASE("dominant_terms breaks ties toward the lexicographically smallest term") {
    auto map = dominant_terms(chip_records("c1", {"green", "blue", "blue", "green"}));
    CHECK(map.chips[0].dominant == "blue");
    CHECK(map.chips[0].agreement == 0.5);
}

TEST_CASE("agreement markers switch at one half and nine tenths") {
    auto low = dominant_terms(chip_records("c", {"blue", "green", "pink", "red", "red"}));
    CHECK(low.chips[0].marker == "-");  // 2/5 < 0.5
    std::vector<std::string> nine(10, "blue");
    nine[9] = "green";
    auto high = dominant_terms(chip_records("c", nine));
    CHECK(high.chips[0].marker == "");  // exactly 0.9 clears the "*" band
    CHECK(high.chips[0].agreement == doctest::Approx(0.9));
    std::vector<std::string> eight(10, "blue");
    eight[8] = eight[9] = "green";
    auto mid = dominant_terms(chip_records("c", eight));
    CHECK(mid.chips[0].marker == "*");  // 0.8 sits inside the 0.5..0.9 band
}

TEST_CASE("hex parsing and cluster average colors") {
    CHECK(parse_hex_color("#0080ff") == std::array<int, 3>{0, 128, 255});
    CHECK(format_hex_color({0, 128, 255}) == "#0080ff");
    CHECK_THROWS_AS(parse_hex_color("0080ff"), DataError);
    CHECK_THROWS_AS(parse_hex_color("#00g0ff"), DataError);
    CHECK_THROWS_AS(parse_hex_color("#0080f"), DataError);

    std::vector<NamingRecord> records;
    for (const auto& r : chip_records("c1", {"blue", "blue"})) records.push_back(r);
    for (const auto& r : chip_records("c2", {"blue"})) records.push_back(r);
    for (const auto& r : chip_records("c3", {"green"})) records.push_back(r);
    auto map = dominant_terms(records);
    std::vector<PaletteEntry> palette{{"c1", "#000000"}, {"c2", "#ffffff"}, {"c3", "#123456"}};
    auto legend = cluster_average_color(map, palette);
    REQUIRE(legend.size() == 2);
    CHECK(legend[0].term == "blue");
    CHECK(legend[0].chip_count == 2);
    CHECK(legend[0].avg_hex == "#808080");  // mean of black and white, rounded up
    CHECK(legend[1].term == "green");
    CHECK(legend[1].avg_hex == "#123456");

    CHECK_THROWS_WITH_AS(cluster_average_color(map, {{"c1", "#000000"}}),
                         doctest::Contains("c2"), DataError);
}

TEST_CASE("rand and adjusted rand match hand values") {
    // {{1,2},{3}} vs {{1},{2,3}}: one agreeing pair of three
    std::vector<int> a{0, 0, 1}, b{0, 1, 1};
    CHECK(rand_index(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(adjusted_rand(a, b) == -0.5);

    std::vector<int> same{0, 1, 1, 2};
    CHECK(rand_index(same, same) == 1.0);
    CHECK(adjusted_rand(same, same) == 1.0);

    // bijectively relabeled copies still score 1
    std::vector<int> relabeled{5, 9, 9, 2};
    CHECK(adjusted_rand(same, relabeled) == 1.0);
}

TEST_CASE("adjusted rand is symmetric and relabel-invariant") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5 + static_cast<int>(rng.below(8));
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.below(4));
            b[i] = static_cast<int>(rng.below(4));
        }
        auto [ri, ari] = pair_oracle(a, b);
        (void)ri;
        if (!std::isfinite(ari)) continue;
        CHECK(adjusted_rand(a, b) == doctest::Approx(adjusted_rand(b, a)).epsilon(1e-12));
        std::vector<int> a2(n);
        for (int i = 0; i < n; ++i) a2[i] = 7 - a[i];  // bijection on labels
        CHECK(adjusted_rand(a2, b) == doctest::Approx(adjusted_rand(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("rand statistics match the pairwise oracle on random instances") {
    Rng rng(23);
    int checked = 0;
    while (checked < 120) {
        int n = 4 + static_cast<int>(rng.below(9));
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.below(4));
            b[i] = static_cast<int>(rng.below(4));
        }
        auto [ri, ari] = pair_oracle(a, b);
        CHECK(rand_index(a, b) == doctest::Approx(ri).epsilon(1e-9));
        if (!std::isfinite(ari)) continue;  // degenerate chance correction
        CHECK(adjusted_rand(a, b) == doctest::Approx(ari).epsilon(1e-9));
        ++checked;
    }
}

TEST_CASE("adjusted rand of random labelings is close to zero on average") {
    Rng rng(31);
    double sum = 0.0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> a(50), b(50);
        for (int i = 0; i < 50; ++i) {
            a[i] = static_cast<int>(rng.below(5));
            b[i] = static_cast<int>(rng.below(5));
        }
        sum += adjusted_rand(a, b);
    }
    CHECK(std::abs(sum / trials) < 0.02);
}

TEST_CASE("degenerate chance correction: identical trivial partitions score 1") {
    std::vector<int> singletons{0, 1, 2, 3};
    CHECK(adjusted_rand(singletons, singletons) == 1.0);
    std::vector<int> lumped{0, 0, 0, 0};
    CHECK(adjusted_rand(lumped, lumped) == 1.0);
    // All-singleton vs one-cluster sits exactly at chance level.
    CHECK(adjusted_rand(singletons, lumped) == 0.0);
    CHECK(adjusted_rand(lumped, singletons) == 0.0);
    CHECK_THROWS_AS(adjusted_rand({0, 1}, {0, 1, 2}), DataError);
}

TEST_CASE("paired partitions intersect universes and drop all-error chips") {
    std::vector<NamingRecord> ra, rb;
    for (const auto& r : chip_records("c1", {"blue", "blue"})) ra.push_back(r);
    for (const auto& r : chip_records("c2", {"green"})) ra.push_back(r);
    for (const auto& r : chip_records("c3", {"error"})) ra.push_back(r);
    for (const auto& r : chip_records("c1", {"синий"})) rb.push_back(r);
    for (const auto& r : chip_records("c2", {"зелёный"})) rb.push_back(r);
    for (const auto& r : chip_records("c3", {"белый"})) rb.push_back(r);
    auto [pa, pb] = paired_partitions(dominant_terms(ra), dominant_terms(rb));
    CHECK(pa.universe == std::vector<std::string>{"c1", "c2"});
    CHECK(pb.universe == pa.universe);
    REQUIRE(pa.labels.size() == 2);
    CHECK(pa.labels[0] != pa.labels[1]);
    CHECK(pb.labels[0] != pb.labels[1]);
}

TEST_CASE("ari_bootstrap: deterministic, unanimity gives width zero, errors excluded") {
    std::vector<NamingRecord> ra, rb;
    for (int chip = 0; chip < 10; ++chip) {
        std::string id = "c" + std::to_string(chip);
        std::string term_a = chip < 5 ? "blue" : "green";
        std::string term_b = chip < 5 ? "синий" : "зелёный";
        for (int repetition = 0; repetition < 10; ++repetition) {
            ra.push_back(nrec(id, term_a, repetition));
            rb.push_back(nrec(id, term_b, repetition));
        }
    }
    auto report = ari_bootstrap(ra, rb, 200, 11);
    CHECK(report.ari == 1.0);
    CHECK(report.rand == 1.0);
    CHECK(report.ci_low == 1.0);
    CHECK(report.ci_high == 1.0);
    CHECK(report.n_chips == 10);

    auto again = ari_bootstrap(ra, rb, 200, 11);
    CHECK(report.ari == again.ari);
    CHECK(report.ci_low == again.ci_low);

    // make one chip all-error in A: it leaves the shared universe
    std::vector<NamingRecord> ra2 = ra;
    for (auto& r : ra2)
        if (r.chip_id == "c9") r.term = "error";
    auto excluded = ari_bootstrap(ra2, rb, 50, 11);
    CHECK(excluded.n_chips == 9);
    CHECK(excluded.ari == 1.0);
}

TEST_CASE("ari_bootstrap covers a noisy point estimate") {
    // 90% unanimous agreement between partitions, 10% flipped in B
    std::vector<NamingRecord> ra, rb;
    for (int chip = 0; chip < 20; ++chip) {
        std::string id = "c" + std::to_string(chip);
        std::string term_a = chip % 2 == 0 ? "blue" : "green";
        std::string term_b = term_a;
        if (chip == 0 || chip == 10) term_b = term_a == "blue" ? "green" : "blue";
        for (int repetition = 0; repetition < 5; ++repetition) {
            ra.push_back(nrec(id, term_a, repetition));
            rb.push_back(nrec(id, term_b, repetition));
        }
    }
    auto report = ari_bootstrap(ra, rb, 300, 4);
    CHECK(report.ari > 0.3);
    CHECK(report.ari < 1.0);
    CHECK(report.ci_low <= report.ari);
    CHECK(report.ci_high >= report.ari);
}
