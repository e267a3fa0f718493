#pragma once

// Minimal attribute extraction for the SVG frames this project writes.

#include <map>
#include <regex>
#include <string>
#include <vector>

namespace versinus::testing {

struct SvgGlyph {
    std::string vertex;
    std::size_t rank = 0;
    std::string cx;
    std::string cy;
    std::string rx;
    std::string ry;
};

inline std::vector<SvgGlyph> scan_glyphs(const std::string& svg)
{
    static const std::regex pattern(
        R"re(<ellipse class="glyph" data-vertex="([^"]*)" data-rank="(\d+)" cx="([^"]+)" cy="([^"]+)" rx="([^"]+)" ry="([^"]+)")re");
    std::vector<SvgGlyph> out;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), pattern); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        out.push_back({m[1].str(), std::stoul(m[2].str()), m[3].str(), m[4].str(), m[5].str(), m[6].str()});
    }
    return out;
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace versinus::testing
