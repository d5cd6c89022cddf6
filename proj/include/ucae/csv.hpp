#pragma once

#include <string>

#include "ucae/matrix.hpp"
#include "ucae/training.hpp"

namespace ucae {

// Rows of one domain with an optional one-hot label block, as read from or
// written to CSV. Header is col_0,...,col_{dim-1}[,label]; the label column
// holds integer class ids and is expanded to one-hot on read.
struct Dataset {
    std::string name;
    Matrix rows;
    Matrix labels;  // rows x label_dim one-hot, or 0 x 0

    int dim() const { return rows.cols(); }
    bool has_labels() const { return labels.rows() > 0; }
    LabeledData labeled_data() const { return {rows, labels}; }
};

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

Dataset read_csv(const std::string& path);
void write_csv(const Dataset& dataset, const std::string& path);

void write_training_log_csv(const TrainingLog& log, const std::string& path);

// Writes `content` to a temp file in the target directory, then renames.
void atomic_write_text(const std::string& path, const std::string& content);

}  // namespace ucae
