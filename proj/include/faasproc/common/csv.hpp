#pragma once

#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "faasproc/common/error.hpp"

namespace faasproc {

// CSV emission for benchmark records. Fields are written verbatim except for
// quoting when a value contains a comma or quote.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    template <class... Ts>
    void row(const Ts&... vals) {
        std::vector<std::string> cells;
        (cells.push_back(cell(vals)), ...);
        row_strings(cells);
    }

    void row_strings(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << quote(cells[i]);
        }
        out_ << '\n';
    }

private:
    template <class T>
    static std::string cell(const T& v) {
        std::ostringstream ss;
        ss << v;
        return ss.str();
    }

    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q.push_back(c);
        }
        q += "\"";
        return q;
    }

    std::ostream& out_;
};

// Parses a whole CSV document produced by CsvWriter; used by the schema
// validation pass in the test suite.
inline std::vector<std::vector<std::string>> csv_parse(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cur;
        bool quoted = false;
        for (size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur.push_back(c);
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        cells.push_back(cur);
        rows.push_back(std::move(cells));
    }
    return rows;
}

inline std::vector<std::vector<std::string>> csv_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FaasprocError("cannot open csv: " + path);
    return csv_parse(in);
}

}  // namespace faasproc
