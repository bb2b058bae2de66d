#pragma once

#include "gjr/samplers.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace gjr {

/// Header `step,alpha,beta,omega,lambda,accepted`; steps are 1-based and the
/// flag is written as 0/1.
void write_chain_csv(std::ostream& out, const Chain& chain);
void write_chain_csv(const std::filesystem::path& path, const Chain& chain);

/// Throws ParseError naming the offending line on any schema violation.
[[nodiscard]] Chain read_chain_csv(std::istream& in);
[[nodiscard]] Chain read_chain_csv(const std::filesystem::path& path);

/// One row per proposal build: update,count, the mean (4 columns) and the
/// upper triangle of V (10 columns, row-major).
void write_history_csv(std::ostream& out, const std::vector<ProposalUpdate>& history);
void write_history_csv(const std::filesystem::path& path,
                       const std::vector<ProposalUpdate>& history);

}  // namespace gjr
