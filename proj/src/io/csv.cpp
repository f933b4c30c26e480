#include "ccc/io/csv.hpp"

#include <algorithm>

#include "ccc/error.hpp"

namespace ccc::io {

std::optional<std::vector<std::string>> CsvReader::next() {
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    ++line_;
    record_line_ = line_;

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (;;) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"' && field.empty()) {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field += c;
            }
        }
        if (!quoted) break;
        // open quote: the record continues on the next physical line
        if (!std::getline(in_, line)) throw DataError("CSV line " + std::to_string(record_line_) + ": unterminated quote");
        ++line_;
        field += '\n';
    }
    fields.push_back(std::move(field));
    return fields;
}

CsvHeader::CsvHeader(std::vector<std::string> names, const std::vector<std::string>& required)
    : names_(std::move(names)) {
    if (!names_.empty() && names_.front().rfind("\xEF\xBB\xBF", 0) == 0) names_.front().erase(0, 3);
    std::string missing;
    for (const auto& r : required)
        if (!has(r)) missing += (missing.empty() ? "" : ", ") + r;
    if (!missing.empty()) throw DataError("CSV header is missing column(s): " + missing);
}

bool CsvHeader::has(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t CsvHeader::index(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw DataError("CSV header has no column " + std::string(name));
    return static_cast<std::size_t>(it - names_.begin());
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    return out;
}

}  // namespace ccc::io
