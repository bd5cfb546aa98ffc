#pragma once

#include <string>
#include <vector>

namespace sse {

// Row-major feature matrix; row i is the feature vector of vertex v_i.
struct DataMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;
    std::vector<int> labels;  // optional trailing label column, empty if absent

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
    bool has_labels() const { return !labels.empty(); }
};

// CSV reader: one row per data point, optional header line (auto-detected),
// optional trailing integer label column when `labeled` is set.
DataMatrix load_csv(const std::string& path, bool labeled);

// Plain label file: one integer per line, '#' comments ignored.
std::vector<int> load_labels(const std::string& path);

}  // namespace sse
