#include "cli/csv_io.hpp"

#include "markovpi/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

namespace markovpi::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

TimeSeriesSample read_series(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
    return read_series(in, path);
}

TimeSeriesSample read_series(std::istream& in, const std::string& name) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view field = trim(line);
        if (field.empty() || field.front() == '#') continue;
        if (!seen_data && (field == "y" || field == "Y")) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        double v = 0.0;
        const char* begin = field.data();
        const char* end = begin + field.size();
        if (*begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
            throw Error(ErrorCode::ParseError,
                        name + ": line " + std::to_string(line_no) + ": not a finite number: '" + std::string(field) + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) throw Error(ErrorCode::EmptyFile, name + ": no observations");
    return TimeSeriesSample(std::move(values));
}

std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

}  // namespace markovpi::cli
