#include "ucae/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "ucae/errors.hpp"

namespace ucae {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field, const std::string& path, int line_no) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw UsageError(path + ":" + std::to_string(line_no) + ": non-numeric field '" + field +
                         "'");
    return v;
}

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Dataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw UsageError("read_csv: " + path + ": missing header");

    const auto header = split_line(line, ',');
    bool labeled = !header.empty() && header.back() == "label";
    const int dim = static_cast<int>(header.size()) - (labeled ? 1 : 0);
    if (dim < 1) throw UsageError("read_csv: " + path + ": no data columns in header");
    for (int c = 0; c < dim; ++c)
        if (header[c] != "col_" + std::to_string(c))
            throw UsageError("read_csv: " + path + ": unexpected header column '" + header[c] +
                             "'");

    std::vector<double> values;
    std::vector<int> class_ids;
    int rows = 0, line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_line(line, ',');
        if (static_cast<int>(fields.size()) != dim + (labeled ? 1 : 0))
            throw UsageError("read_csv: " + path + ":" + std::to_string(line_no) +
                             ": ragged row (" + std::to_string(fields.size()) + " fields)");
        for (int c = 0; c < dim; ++c) values.push_back(parse_double(fields[c], path, line_no));
        if (labeled) {
            const double raw = parse_double(fields[dim], path, line_no);
            const int cls = static_cast<int>(raw);
            if (cls < 0 || cls != raw)
                throw UsageError("read_csv: " + path + ":" + std::to_string(line_no) +
                                 ": label must be a non-negative integer");
            class_ids.push_back(cls);
        }
        ++rows;
    }

    Dataset ds;
    ds.name = std::filesystem::path(path).stem().string();
    ds.rows = Matrix(rows, dim, std::move(values));
    if (!ds.rows.all_finite()) throw NumericError("read_csv: " + path + ": non-finite value");
    if (labeled) {
        int label_dim = 0;
        for (int cls : class_ids) label_dim = std::max(label_dim, cls + 1);
        ds.labels = Matrix(rows, label_dim);
        for (int r = 0; r < rows; ++r) ds.labels(r, class_ids[r]) = 1.0;
    }
    return ds;
}

void write_csv(const Dataset& dataset, const std::string& path) {
    if (!dataset.rows.all_finite()) throw NumericError("write_csv: non-finite value in dataset");
    std::ostringstream out;
    for (int c = 0; c < dataset.dim(); ++c) {
        if (c) out << ',';
        out << "col_" << c;
    }
    if (dataset.has_labels()) out << ",label";
    out << '\n';
    for (int r = 0; r < dataset.rows.rows(); ++r) {
        const double* row = dataset.rows.row_ptr(r);
        for (int c = 0; c < dataset.dim(); ++c) {
            if (c) out << ',';
            out << format_double(row[c]);
        }
        if (dataset.has_labels()) {
            int cls = 0;
            for (int c = 0; c < dataset.labels.cols(); ++c)
                if (dataset.labels(r, c) > dataset.labels(r, cls)) cls = c;
            out << ',' << cls;
        }
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

void write_training_log_csv(const TrainingLog& log, const std::string& path) {
    std::ostringstream out;
    out << "step,recon_loss,gen_adv_loss,disc_loss\n";
    for (const auto& s : log.steps)
        out << s.step << ',' << format_double(s.recon_loss) << ',' << format_double(s.gen_adv_loss)
            << ',' << format_double(s.disc_loss) << '\n';
    atomic_write_text(path, out.str());
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("atomic_write_text: cannot open " + tmp.string());
        out << content;
        if (!out) throw UsageError("atomic_write_text: write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw UsageError("atomic_write_text: rename failed for " + path + ": " + ec.message());
}

}  // namespace ucae
