#include "taskvec/report/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "taskvec/common/errors.hpp"

namespace taskvec::report {

namespace {

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out_.push_back(',');
        out_ += escape(fields[i]);
    }
    out_.push_back('\n');
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

}  // namespace taskvec::report
