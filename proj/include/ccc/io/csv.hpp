#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccc::io {

/// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
/// Quoted fields may span lines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input.
    std::optional<std::vector<std::string>> next();
    /// 1-based physical line where the last returned record started.
    long line() const { return record_line_; }

private:
    std::istream& in_;
    long line_ = 0;
    long record_line_ = 0;
};

/// Header-indexed access. Throws DataError naming any missing column.
class CsvHeader {
public:
    CsvHeader(std::vector<std::string> names, const std::vector<std::string>& required);
    std::size_t index(std::string_view name) const;
    bool has(std::string_view name) const;
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
};

std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace ccc::io
