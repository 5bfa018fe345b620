#pragma once

#include "envkit/signal.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace envkit {

struct CsvColumn {
    std::string name;
    std::reference_wrapper<const Signal> signal;
};

/// Writes `time_s,<name>...` followed by one row per sample. Times
/// (i / sample_rate) and values use 9 significant digits.
///
/// Throws ValidationError for an empty column list, differing lengths
/// ("signal length mismatch") or differing sample rates.
void write_csv(std::ostream& os, std::span<const CsvColumn> columns);
void write_csv(const std::filesystem::path& path, std::span<const CsvColumn> columns);

/// Column-major numeric table read back from CSV.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    /// Column by header name; throws ValidationError if absent.
    const std::vector<double>& column(const std::string& name) const;
};

/// Parses a header line followed by numeric rows. Lines starting with '#'
/// are skipped.
CsvTable read_csv(std::istream& is);
CsvTable read_csv(const std::filesystem::path& path);

} // namespace envkit
