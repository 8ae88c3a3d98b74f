#include "areatrap/sampler.hpp"

#include "areatrap/errors.hpp"
#include "areatrap/rng.hpp"
#include "areatrap/textio.hpp"

#include <algorithm>
#include <cmath>

namespace areatrap::sampler {

std::uint64_t SeedSpec::stream_seed() const {
    return derive_seed(master_seed, trial_index);
}

PointCloud sample_poisson_square(double n, const SeedSpec& seed) {
    if (!(n >= 0.0) || !std::isfinite(n))
        fail(ErrorCode::invalid_parameter, "box side must be a finite value >= 0");
    PointCloud cloud;
    cloud.n = n;
    cloud.seed = seed.stream_seed();
    if (n == 0.0) return cloud;

    SplitMix64 rng(cloud.seed);
    const std::uint64_t count = poisson_draw(rng, n * n);
    cloud.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double x = n * rng.next_open01();
        const double y = n * rng.next_open01();
        cloud.points.push_back({x, y});
    }
    std::sort(cloud.points.begin(), cloud.points.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return cloud;
}

std::string cloud_to_string(const PointCloud& cloud) {
    std::string out;
    out.reserve(32 * (cloud.points.size() + 3));
    out += "# areatrap-cloud v1\n";
    out += "# n=" + textio::format_double(cloud.n) +
           " seed=" + textio::format_u64(cloud.seed) +
           " count=" + textio::format_u64(cloud.points.size()) + "\n";
    out += "x,y\n";
    for (const Point& p : cloud.points)
        out += textio::format_double(p.x) + "," + textio::format_double(p.y) + "\n";
    return out;
}

void save_cloud(const PointCloud& cloud, const std::string& path) {
    textio::write_file(path, cloud_to_string(cloud));
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line_no, const std::string& what) {
    fail(ErrorCode::parse_error, origin + ":" + std::to_string(line_no) + ": " + what);
}

std::string_view expect_prefix(std::string_view line, std::string_view prefix,
                               const std::string& origin, std::size_t line_no) {
    if (line.substr(0, prefix.size()) != prefix)
        parse_fail(origin, line_no, "expected '" + std::string(prefix) + "'");
    return line.substr(prefix.size());
}

} // namespace

PointCloud cloud_from_string(const std::string& text, const std::string& origin) {
    std::vector<std::string_view> lines = textio::split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 3) parse_fail(origin, lines.size(), "truncated cloud file");

    std::size_t ln = 1;
    if (lines[0] != "# areatrap-cloud v1")
        parse_fail(origin, ln, "bad magic line, expected '# areatrap-cloud v1'");

    ln = 2;
    std::string_view meta = expect_prefix(lines[1], "# n=", origin, ln);
    auto fields = textio::split(meta, ' ');
    if (fields.size() != 3) parse_fail(origin, ln, "expected 'n=.. seed=.. count=..'");
    PointCloud cloud;
    cloud.n = textio::parse_double(fields[0], origin + ":2 n");
    cloud.seed = textio::parse_u64(expect_prefix(fields[1], "seed=", origin, ln), origin + ":2 seed");
    const std::uint64_t count =
        textio::parse_u64(expect_prefix(fields[2], "count=", origin, ln), origin + ":2 count");
    if (!(cloud.n >= 0.0)) parse_fail(origin, ln, "negative box side");

    ln = 3;
    if (lines[2] != "x,y") parse_fail(origin, ln, "expected 'x,y' header");

    if (lines.size() - 3 != count)
        fail(ErrorCode::validation_error,
             origin + ": count=" + std::to_string(count) + " but file has " +
                 std::to_string(lines.size() - 3) + " point rows");

    cloud.points.reserve(count);
    for (std::size_t i = 3; i < lines.size(); ++i) {
        ln = i + 1;
        auto cols = textio::split(lines[i], ',');
        if (cols.size() != 2) parse_fail(origin, ln, "expected 'x,y' row");
        Point p;
        p.x = textio::parse_double(cols[0], origin + ":" + std::to_string(ln) + " x");
        p.y = textio::parse_double(cols[1], origin + ":" + std::to_string(ln) + " y");
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            parse_fail(origin, ln, "non-finite coordinate");
        // Boundary points are legal in fixtures, anything outside the box is not.
        if (p.x < 0.0 || p.x > cloud.n || p.y < 0.0 || p.y > cloud.n)
            fail(ErrorCode::validation_error,
                 origin + ":" + std::to_string(ln) + ": point outside [0,n]^2");
        cloud.points.push_back(p);
    }
    for (std::size_t i = 1; i < cloud.points.size(); ++i) {
        const Point& a = cloud.points[i - 1];
        const Point& b = cloud.points[i];
        if (a.x > b.x || (a.x == b.x && a.y > b.y))
            fail(ErrorCode::validation_error, origin + ": points not sorted by (x, then y)");
    }
    return cloud;
}

PointCloud load_cloud(const std::string& path) {
    return cloud_from_string(textio::read_file(path), path);
}

} // namespace areatrap::sampler
