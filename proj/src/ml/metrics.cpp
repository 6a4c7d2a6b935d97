#include "hamlet/ml/metrics.hpp"

#include <cmath>
#include <map>

namespace hamlet::ml {

namespace {
void check_inputs(const std::vector<double>& truth, const std::vector<double>& predicted) {
    if (truth.empty() || predicted.empty()) throw MetricError("metric inputs must be non-empty");
    if (truth.size() != predicted.size())
        throw MetricError("metric inputs must have equal length");
}
} // namespace

bool known_measure(const std::string& id) {
    return id == measure::kAccuracy || id == measure::kMse || id == measure::kFowlkesMallows ||
           id == measure::kHomogeneity;
}

double metric_accuracy(const std::vector<double>& truth, const std::vector<double>& predicted) {
    check_inputs(truth, predicted);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == predicted[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double metric_mse(const std::vector<double>& truth, const std::vector<double>& predicted) {
    check_inputs(truth, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = truth[i] - predicted[i];
        sum += d * d;
    }
    return sum / static_cast<double>(truth.size());
}

double metric_fowlkes_mallows(const std::vector<double>& truth,
                              const std::vector<double>& predicted) {
    check_inputs(truth, predicted);
    std::uint64_t tp = 0, fp = 0, fn = 0;
    const std::size_t n = truth.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_class = truth[i] == truth[j];
            const bool same_cluster = predicted[i] == predicted[j];
            if (same_class && same_cluster) ++tp;
            else if (!same_class && same_cluster) ++fp;
            else if (same_class && !same_cluster) ++fn;
        }
    }
    if (tp + fp == 0 || tp + fn == 0) return (fp == 0 && fn == 0) ? 1.0 : 0.0;
    return static_cast<double>(tp) /
           std::sqrt(static_cast<double>(tp + fp) * static_cast<double>(tp + fn));
}

double metric_homogeneity(const std::vector<double>& truth,
                          const std::vector<double>& predicted) {
    check_inputs(truth, predicted);
    const double n = static_cast<double>(truth.size());
    std::map<double, double> class_counts;
    std::map<double, double> cluster_counts;
    std::map<std::pair<double, double>, double> joint;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        class_counts[truth[i]] += 1.0;
        cluster_counts[predicted[i]] += 1.0;
        joint[{predicted[i], truth[i]}] += 1.0;
    }
    double h_c = 0.0;
    for (const auto& [c, cnt] : class_counts) {
        const double p = cnt / n;
        h_c -= p * std::log(p);
    }
    if (h_c == 0.0) return 1.0;
    double h_c_given_k = 0.0;
    for (const auto& [key, cnt] : joint) {
        const double cluster_total = cluster_counts[key.first];
        h_c_given_k -= (cnt / n) * std::log(cnt / cluster_total);
    }
    double value = 1.0 - h_c_given_k / h_c;
    if (value < 0.0 && value > -1e-12) value = 0.0; // clamp float noise at the boundary
    return value;
}

double compute_metric(const std::string& id, const std::vector<double>& truth,
                      const std::vector<double>& predicted) {
    if (id == measure::kAccuracy) return metric_accuracy(truth, predicted);
    if (id == measure::kMse) return metric_mse(truth, predicted);
    if (id == measure::kFowlkesMallows) return metric_fowlkes_mallows(truth, predicted);
    if (id == measure::kHomogeneity) return metric_homogeneity(truth, predicted);
    throw MetricError("unknown measure " + id);
}

} // namespace hamlet::ml
