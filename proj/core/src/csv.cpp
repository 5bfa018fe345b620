#include "envkit/csv.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace envkit {

namespace {

void put_number(std::ostream& os, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.9g", v);
    os.write(buf, len);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

void write_csv(std::ostream& os, std::span<const CsvColumn> columns) {
    if (columns.empty()) throw ValidationError("no signals to write");
    const Signal& first = columns.front().signal.get();
    for (const auto& c : columns) {
        if (c.signal.get().size() != first.size()) throw ValidationError("signal length mismatch");
        if (c.signal.get().sample_rate() != first.sample_rate()) throw ValidationError("sample rate mismatch");
    }

    os << "time_s";
    for (const auto& c : columns) os << ',' << c.name;
    os << '\n';
    for (std::size_t i = 0; i < first.size(); ++i) {
        put_number(os, static_cast<double>(i) / first.sample_rate());
        for (const auto& c : columns) {
            os << ',';
            put_number(os, c.signal.get()[i]);
        }
        os << '\n';
    }
}

void write_csv(const std::filesystem::path& path, std::span<const CsvColumn> columns) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    write_csv(out, columns);
    if (!out) throw IoError(path.string() + ": write failed");
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("no column named " + name);
    return columns[static_cast<std::size_t>(it - header.begin())];
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(line);
        if (!have_header) {
            table.header = std::move(fields);
            table.columns.resize(table.header.size());
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ValidationError("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " fields");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const char* begin = fields[c].c_str();
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0' || errno == ERANGE) {
                throw ValidationError("csv line " + std::to_string(line_no) + ": not a number: " + fields[c]);
            }
            table.columns[c].push_back(v);
        }
    }
    if (!have_header) throw ValidationError("csv has no header");
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open file");
    return read_csv(in);
}

} // namespace envkit
