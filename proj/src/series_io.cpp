#include "gjr/series_io.hpp"

#include "csv_util.hpp"
#include "gjr/errors.hpp"

#include <istream>
#include <ostream>

namespace gjr {

void write_series_csv(std::ostream& out, const ReturnSeries& series) {
    const auto y = series.y();
    const auto& s2 = series.sigma2_true();
    out << (s2 ? "y,sigma2_true\n" : "y\n");
    for (std::size_t t = 0; t < y.size(); ++t) {
        out << detail::format_double(y[t]);
        if (s2) out << ',' << detail::format_double((*s2)[t]);
        out << '\n';
    }
}

void write_series_csv(const std::filesystem::path& path, const ReturnSeries& series) {
    auto out = detail::open_for_write(path);
    write_series_csv(out, series);
    detail::check_written(out, path);
}

ReturnSeries read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("line 1: missing header", 1);
    }
    const auto header = detail::trim(line);
    bool with_sigma = false;
    if (header == "y,sigma2_true") {
        with_sigma = true;
    } else if (header != "y") {
        throw ParseError("line 1: expected header 'y' or 'y,sigma2_true'", 1);
    }

    std::vector<double> y;
    std::vector<double> s2;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line);
        if (fields.size() != (with_sigma ? 2u : 1u)) {
            throw ParseError("line " + std::to_string(line_no) + ": wrong number of columns",
                             line_no);
        }
        y.push_back(detail::parse_double(fields[0], line_no));
        if (with_sigma) {
            const double v = detail::parse_double(fields[1], line_no);
            if (!(v > 0.0)) {
                throw ParseError("line " + std::to_string(line_no) + ": sigma2_true must be > 0",
                                 line_no);
            }
            s2.push_back(v);
        }
    }
    if (y.empty()) {
        throw ParseError("no observations", line_no);
    }
    if (with_sigma) return ReturnSeries(std::move(y), std::move(s2));
    return ReturnSeries(std::move(y));
}

ReturnSeries read_series_csv(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    return read_series_csv(in);
}

}  // namespace gjr
