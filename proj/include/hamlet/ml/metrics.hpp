#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hamlet::ml {

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Measure identifiers as they appear in query files.
namespace measure {
inline constexpr const char* kAccuracy = "accuracy";
inline constexpr const char* kMse = "mse";
inline constexpr const char* kFowlkesMallows = "fowlkes_mallows";
inline constexpr const char* kHomogeneity = "homogeneity";
} // namespace measure

bool known_measure(const std::string& id);

double metric_accuracy(const std::vector<double>& truth, const std::vector<double>& predicted);
double metric_mse(const std::vector<double>& truth, const std::vector<double>& predicted);

/// Pair-counting score TP / sqrt((TP+FP)(TP+FN)); both margins empty means
/// the partitions coincide trivially and scores 1.
double metric_fowlkes_mallows(const std::vector<double>& truth,
                              const std::vector<double>& predicted);

/// 1 - H(C|K)/H(C) with the 0/0 convention mapping a single-class truth to 1.
double metric_homogeneity(const std::vector<double>& truth,
                          const std::vector<double>& predicted);

double compute_metric(const std::string& id, const std::vector<double>& truth,
                      const std::vector<double>& predicted);

} // namespace hamlet::ml
