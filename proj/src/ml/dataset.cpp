#include "hamlet/ml/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace hamlet::ml {

const char* to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::Classification: return "classification";
        case TaskKind::Regression: return "regression";
        case TaskKind::ClusteringCapable: return "clustering-capable";
    }
    return "?";
}

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "classification") return TaskKind::Classification;
    if (s == "regression") return TaskKind::Regression;
    if (s == "clustering-capable") return TaskKind::ClusteringCapable;
    throw IngestionError("unknown task kind: " + s);
}

int Dataset::num_classes() const {
    std::set<double> distinct(targets.begin(), targets.end());
    return static_cast<int>(distinct.size());
}

void Dataset::check() const {
    if (!targets.empty() && targets.size() != features.size())
        throw IngestionError("dataset " + name + ": feature/target row counts differ");
    if (!(split > 0.0 && split <= 1.0))
        throw IngestionError("dataset " + name + ": train fraction must lie in (0, 1]");
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw IngestionError("row " + std::to_string(row) + ": non-numeric cell \"" + cell + "\"");
    return value;
}

} // namespace

Dataset load_csv(const std::string& path, const DatasetDescriptor& descriptor) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IngestionError(path + ": missing header row");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    std::vector<std::string> header = split_line(line);

    int target_idx = -1;
    if (!descriptor.target_column.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == descriptor.target_column) target_idx = static_cast<int>(i);
        if (target_idx < 0)
            throw IngestionError(path + ": target column \"" + descriptor.target_column +
                                 "\" not in header");
    }

    Dataset ds;
    ds.name = descriptor.name;
    ds.task_kind = descriptor.task_kind;
    ds.split = descriptor.split;
    ds.provenance = "csv:" + path;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw IngestionError("row " + std::to_string(row) + ": expected " +
                                 std::to_string(header.size()) + " cells, found " +
                                 std::to_string(cells.size()));
        std::vector<double> feats;
        feats.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const double v = parse_cell(cells[i], row);
            if (static_cast<int>(i) == target_idx)
                ds.targets.push_back(v);
            else
                feats.push_back(v);
        }
        ds.features.push_back(std::move(feats));
        ++row;
    }
    if (descriptor.normalize) normalize_features(ds);
    ds.check();
    return ds;
}

void write_csv(const Dataset& dataset, const std::string& path,
               const std::string& target_column) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IngestionError("cannot write " + path);
    for (std::size_t j = 0; j < dataset.dims(); ++j) out << "f" << j << ",";
    out << (target_column.empty() ? "target" : target_column) << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < dataset.rows(); ++i) {
        for (double v : dataset.features[i]) out << v << ",";
        out << (dataset.has_targets() ? dataset.targets[i] : 0.0) << "\n";
    }
}

void normalize_features(Dataset& dataset) {
    const std::size_t d = dataset.dims();
    for (std::size_t j = 0; j < d; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& row : dataset.features) {
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        const double span = hi - lo;
        for (auto& row : dataset.features) row[j] = span > 0 ? (row[j] - lo) / span : 0.0;
    }
}

SplitIndices split_indices(std::size_t rows, double train_fraction, std::uint64_t seed) {
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto cut = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(rows)));
    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + std::min(cut, rows));
    out.eval.assign(order.begin() + std::min(cut, rows), order.end());
    if (out.eval.empty()) out.eval = out.train; // full-data split evaluates in-sample
    return out;
}

Dataset generate_synthetic(const std::string& kind, std::size_t n, std::size_t dims,
                           int classes, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Dataset ds;
    ds.provenance = "synthetic:" + kind;

    if (kind == "blobs") {
        if (classes < 1 || dims == 0) throw IngestionError("blobs need classes >= 1, dims >= 1");
        ds.task_kind = TaskKind::ClusteringCapable;
        for (std::size_t i = 0; i < n; ++i) {
            const int c = static_cast<int>(i % static_cast<std::size_t>(classes));
            std::vector<double> row(dims, 0.0);
            // centers spaced far apart relative to unit noise
            row[static_cast<std::size_t>(c) % dims] += 8.0 * (1.0 + c / static_cast<int>(dims));
            for (auto& v : row) v += noise * gauss(rng);
            ds.features.push_back(std::move(row));
            ds.targets.push_back(c);
        }
        return ds;
    }
    if (kind == "moons") {
        ds.task_kind = TaskKind::ClusteringCapable;
        std::uniform_real_distribution<double> angle(0.0, 3.14159265358979323846);
        for (std::size_t i = 0; i < n; ++i) {
            const int c = static_cast<int>(i % 2);
            const double t = angle(rng);
            std::vector<double> row(2, 0.0);
            if (c == 0) {
                row[0] = std::cos(t);
                row[1] = std::sin(t);
            } else {
                row[0] = 1.0 - std::cos(t);
                row[1] = 0.5 - std::sin(t);
            }
            row[0] += noise * gauss(rng);
            row[1] += noise * gauss(rng);
            ds.features.push_back(std::move(row));
            ds.targets.push_back(c);
        }
        return ds;
    }
    if (kind == "linear") {
        ds.task_kind = TaskKind::Regression;
        std::uniform_real_distribution<double> unit(-4.0, 4.0);
        std::vector<double> w(dims);
        for (auto& v : w) v = unit(rng);
        const double intercept = unit(rng);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row(dims);
            for (auto& v : row) v = unit(rng);
            double y = intercept;
            for (std::size_t j = 0; j < dims; ++j) y += w[j] * row[j];
            y += noise * gauss(rng);
            ds.features.push_back(std::move(row));
            ds.targets.push_back(y);
        }
        return ds;
    }
    throw IngestionError("unknown synthetic kind: " + kind);
}

void DatasetStore::put(const std::string& key, Dataset dataset) {
    dataset.check();
    data_[key] = std::move(dataset);
}

const Dataset* DatasetStore::find(const std::string& key) const {
    auto it = data_.find(key);
    return it == data_.end() ? nullptr : &it->second;
}

void DatasetStore::set_access(const std::string& key, bool granted) { access_[key] = granted; }

bool DatasetStore::access_granted(const std::string& key) const {
    auto it = access_.find(key);
    return it == access_.end() ? true : it->second;
}

std::vector<std::string> DatasetStore::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : data_) out.push_back(k);
    return out;
}

} // namespace hamlet::ml
