#include <doctest.h>

#include <string>

#include "percept/errors.hpp"
#include "percept/svg.hpp"

using namespace percept;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("scatter renders a circle per point and labels the named ones") {
    const auto svg = scatter_svg(
        {{0.0, 0.0, "origin"}, {1.0, 2.0, ""}, {-1.0, 0.5, "left"}}, 640, 480);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\">",
                    0) == 0);
    CHECK(count_of(svg, "<circle") == 3);
    CHECK(count_of(svg, "<text") == 2);
    CHECK(svg.find(">origin</text>") != std::string::npos);
    CHECK(svg.find(">left</text>") != std::string::npos);
    CHECK(count_of(svg, "<line") == 2);
    CHECK(svg.find("</svg>\n") == svg.size() - 7);
}

TEST_CASE("scatter escapes markup in labels") {
    const auto svg = scatter_svg({{0.0, 0.0, "a<b>&c"}, {1.0, 1.0, ""}});
    CHECK(svg.find("a&lt;b&gt;&amp;c") != std::string::npos);
    CHECK(svg.find("a<b>") == std::string::npos);
}

TEST_CASE("scatter handles degenerate extents") {
    const auto svg = scatter_svg({{2.0, 3.0, "only"}});
    CHECK(count_of(svg, "<circle") == 1);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK_THROWS_AS(scatter_svg({}), DataError);
}

TEST_CASE("profile draws one polyline and rings the peaks") {
    const auto svg = profile_svg({1.0, 0.8, 0.6, 0.65, 0.5}, {3});
    CHECK(count_of(svg, "<polyline") == 1);
    CHECK(count_of(svg, ",") >= 5);
    CHECK(count_of(svg, "<circle") == 1);
    CHECK(svg.find(">k=3</text>") != std::string::npos);

    SUBCASE("out-of-range peak indices are ignored") {
        const auto loose = profile_svg({1.0, 0.5, 0.7}, {-1, 2, 9});
        CHECK(count_of(loose, "<circle") == 1);
        CHECK(loose.find(">k=2</text>") != std::string::npos);
    }
    SUBCASE("a flat profile still renders") {
        const auto flat = profile_svg({0.5, 0.5, 0.5}, {});
        CHECK(count_of(flat, "<polyline") == 1);
        CHECK(flat.find("nan") == std::string::npos);
    }
    SUBCASE("fewer than two values is an error") {
        CHECK_THROWS_AS(profile_svg({1.0}, {}), DataError);
    }
}
