#pragma once

#include <string>
#include <vector>

namespace taskvec::report {

// Plain comma-separated output (RFC-style quoting). Distinct from the
// pipe-delimited generator dialect: these files are for spreadsheets.
class CsvWriter {
public:
    void row(const std::vector<std::string>& fields);
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

// Stable numeric formatting for CSV cells ("10", "3.333333").
std::string csv_num(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace taskvec::report
