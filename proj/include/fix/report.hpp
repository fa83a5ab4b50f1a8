#pragma once
// Report serialization: a TSV with columns extractor, scorer, mean,
// boot_std, n, seed. Config snapshots and per-sample scores ride in '#'
// comment lines so a written report can be reloaded losslessly.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fix/harness.hpp"

namespace fix {

void write_reports(const std::vector<EvalReport>& reports, std::ostream& out);
void write_reports(const std::vector<EvalReport>& reports, const std::filesystem::path& path);

std::vector<EvalReport> read_reports(std::istream& in);
std::vector<EvalReport> read_reports(const std::filesystem::path& path);

// Column-aligned table for terminal output.
std::string format_table(const std::vector<EvalReport>& reports);

} // namespace fix
