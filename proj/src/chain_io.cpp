#include "gjr/chain_io.hpp"

#include "csv_util.hpp"
#include "gjr/errors.hpp"

#include <istream>
#include <ostream>

namespace gjr {

namespace {

constexpr const char* kChainHeader = "step,alpha,beta,omega,lambda,accepted";

ParseError row_error(std::size_t line_no, const std::string& what) {
    return ParseError("line " + std::to_string(line_no) + ": " + what, line_no);
}

}  // namespace

void write_chain_csv(std::ostream& out, const Chain& chain) {
    out << kChainHeader << '\n';
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& d = chain.draws[i];
        out << (i + 1);
        for (std::size_t j = 0; j < ParamVector::size; ++j) {
            out << ',' << detail::format_double(d[j]);
        }
        out << ',' << (chain.accepted[i] ? 1 : 0) << '\n';
    }
}

void write_chain_csv(const std::filesystem::path& path, const Chain& chain) {
    auto out = detail::open_for_write(path);
    write_chain_csv(out, chain);
    detail::check_written(out, path);
}

Chain read_chain_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kChainHeader) {
        throw row_error(1, std::string("expected header '") + kChainHeader + "'");
    }
    Chain chain;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line);
        if (fields.size() != 6) {
            throw row_error(line_no, "expected 6 columns, found " +
                                         std::to_string(fields.size()));
        }
        const double step = detail::parse_double(fields[0], line_no);
        if (step != static_cast<double>(chain.size() + 1)) {
            throw row_error(line_no, "step column out of sequence");
        }
        ParamVector theta;
        for (std::size_t j = 0; j < ParamVector::size; ++j) {
            theta[j] = detail::parse_double(fields[j + 1], line_no);
        }
        bool accepted = false;
        if (fields[5] == "1") {
            accepted = true;
        } else if (fields[5] != "0") {
            throw row_error(line_no, "accepted flag must be 0 or 1");
        }
        chain.draws.push_back(theta);
        chain.accepted.push_back(accepted);
    }
    return chain;
}

Chain read_chain_csv(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    return read_chain_csv(in);
}

void write_history_csv(std::ostream& out, const std::vector<ProposalUpdate>& history) {
    out << "update,count";
    for (const char* name : kParamNames) out << ",m_" << name;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = r; c < 4; ++c) {
            out << ",v_" << kParamNames[r] << '_' << kParamNames[c];
        }
    }
    out << '\n';
    for (const auto& h : history) {
        out << h.index << ',' << h.count;
        for (int i = 0; i < 4; ++i) out << ',' << detail::format_double(h.mean[i]);
        for (int r = 0; r < 4; ++r) {
            for (int c = r; c < 4; ++c) out << ',' << detail::format_double(h.covariance(r, c));
        }
        out << '\n';
    }
}

void write_history_csv(const std::filesystem::path& path,
                       const std::vector<ProposalUpdate>& history) {
    auto out = detail::open_for_write(path);
    write_history_csv(out, history);
    detail::check_written(out, path);
}

}  // namespace gjr
