#include "sse/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sse/errors.hpp"

namespace sse {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        std::size_t b = f.find_first_not_of(" \t\r");
        std::size_t e = f.find_last_not_of(" \t\r");
        f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

DataMatrix load_csv(const std::string& path, bool labeled) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);

    DataMatrix m;
    std::string line;
    int lineno = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        if (first_data_line) {
            // Header detection: any non-numeric field makes this a header row.
            bool numeric = true;
            double tmp;
            for (const auto& f : fields)
                if (!parse_double(f, tmp)) { numeric = false; break; }
            if (!numeric) continue;
            first_data_line = false;
            m.cols = static_cast<int>(fields.size()) - (labeled ? 1 : 0);
            if (m.cols < 1)
                throw InputError(path + ":" + std::to_string(lineno) + ": no feature columns");
        }
        int expected = m.cols + (labeled ? 1 : 0);
        if (static_cast<int>(fields.size()) != expected)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(expected) + " fields, got " +
                             std::to_string(fields.size()));
        for (int j = 0; j < m.cols; ++j) {
            double v;
            if (!parse_double(fields[j], v))
                throw InputError(path + ":" + std::to_string(lineno) + ": bad number '" +
                                 fields[j] + "'");
            if (!std::isfinite(v))
                throw InputError(path + ":" + std::to_string(lineno) + ": non-finite feature");
            m.values.push_back(v);
        }
        if (labeled) {
            int lab;
            if (!parse_int(fields[m.cols], lab))
                throw InputError(path + ":" + std::to_string(lineno) + ": bad label '" +
                                 fields[m.cols] + "'");
            m.labels.push_back(lab);
        }
        ++m.rows;
    }
    if (m.rows < 2) throw InputError(path + ": need at least 2 data points, got " +
                                     std::to_string(m.rows));
    return m;
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open label file: " + path);
    std::vector<int> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        int v;
        if (!parse_int(line.substr(b, e - b + 1), v))
            throw InputError(path + ":" + std::to_string(lineno) + ": bad label line");
        labels.push_back(v);
    }
    if (labels.empty()) throw InputError(path + ": no labels found");
    return labels;
}

}  // namespace sse
