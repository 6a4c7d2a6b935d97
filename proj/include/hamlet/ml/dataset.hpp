#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamlet::ml {

struct IngestionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TaskKind { Classification, Regression, ClusteringCapable };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

/// In-memory dataset: a feature matrix with optional targets (class labels
/// or regression values) and a train fraction for the fit-time split.
struct Dataset {
    std::string name;
    TaskKind task_kind = TaskKind::Classification;
    std::vector<std::vector<double>> features; // rows = samples
    std::vector<double> targets;               // empty when unlabeled
    double split = 0.6;                        // train fraction in (0, 1]
    std::string provenance;

    std::size_t rows() const { return features.size(); }
    std::size_t dims() const { return features.empty() ? 0 : features.front().size(); }
    bool has_targets() const { return !targets.empty(); }
    int num_classes() const;

    void check() const; // row-count agreement, split range
};

struct DatasetDescriptor {
    std::string name;
    TaskKind task_kind = TaskKind::Classification;
    std::string target_column;
    bool normalize = false;
    double split = 0.6;
    std::vector<std::string> type_chain;
};

/// Loads header+numeric-rows CSV; the target column is picked by name and
/// the remaining columns form the features. Ragged rows and non-numeric
/// cells report the offending row index.
Dataset load_csv(const std::string& path, const DatasetDescriptor& descriptor);

void write_csv(const Dataset& dataset, const std::string& path,
               const std::string& target_column);

/// Deterministic generators for the synthetic stand-in corpus:
/// "blobs" (well-separated Gaussian classes), "moons" (two interleaved
/// half-circles), "linear" (linear map plus optional noise).
Dataset generate_synthetic(const std::string& kind, std::size_t n, std::size_t dims,
                           int classes, double noise, std::uint64_t seed);

/// Min-max normalization of every feature column into [0, 1].
void normalize_features(Dataset& dataset);

/// Seeded train/eval index split; identical output for identical inputs.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> eval;
};
SplitIndices split_indices(std::size_t rows, double train_fraction, std::uint64_t seed);

/// Keyed dataset storage with per-entry access policy; the knowledge base
/// behind data holons. Keys combine the dataset name with the holon's
/// parameter set so same-named train/test variants coexist.
class DatasetStore {
public:
    void put(const std::string& key, Dataset dataset);
    const Dataset* find(const std::string& key) const;
    void set_access(const std::string& key, bool granted);
    bool access_granted(const std::string& key) const;
    std::vector<std::string> keys() const;

private:
    std::map<std::string, Dataset> data_;
    std::map<std::string, bool> access_;
};

std::uint64_t fnv1a(const std::string& text);

} // namespace hamlet::ml
