#pragma once

#include "hamlet/algebra.hpp"
#include "hamlet/ml/dataset.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace hamlet::ml {

struct LearnerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CentroidState {
    std::vector<std::vector<double>> centers;
    std::vector<double> labels;
    bool manhattan = false;
};
struct KnnState {
    std::vector<std::vector<double>> points;
    std::vector<double> labels;
    int k = 5;
    bool manhattan = false;
};
struct LinearState {
    std::vector<double> weights; // trailing entry is the intercept when fitted
    bool intercept = true;
};
struct KmeansState {
    std::vector<std::vector<double>> centers;
    std::vector<double> objective_curve; // one entry per Lloyd iteration
};

/// A trained model: learner name, resolved parameters, the opaque fitted
/// state and enough bookkeeping to reproduce it bit-for-bit.
struct FittedModel {
    std::string learner;
    ParamSet params;
    std::string dataset_name;
    std::uint64_t seed = 0;
    TaskKind task = TaskKind::Classification;
    std::variant<CentroidState, KnnState, LinearState, KmeansState> state;

    std::vector<double> predict(const std::vector<std::vector<double>>& features) const;
    std::size_t expected_dims() const;
};

struct Score {
    std::string measure;
    double value;
};

struct LearnerSpec {
    std::string name;
    std::map<std::string, std::string> schema; // parameter -> default token
    TaskKind task = TaskKind::Classification;
    std::vector<std::string> measures; // applicable measure ids
    bool strict_schema = true;         // stand-ins tolerate foreign parameters
    std::string backend;               // empty for the built-in implementations
};

using LearnerFactory =
    std::function<FittedModel(const LearnerSpec&, const ParamSet&, const Dataset&,
                              const std::vector<std::size_t>& train_rows, std::uint64_t seed)>;

struct FitOutcome {
    FittedModel model;
    std::vector<Score> train_scores;
};

/// Name-addressable learner plugins. The built-ins are small deterministic
/// implementations: nearest-centroid, k-NN, linear, ridge, k-means.
class LearnerRegistry {
public:
    void register_learner(LearnerSpec spec, LearnerFactory factory);

    /// Registers `name` as a structural stand-in executed by the named
    /// built-in backend; parameters outside the backend's schema are
    /// accepted and only influence the derived seed.
    void register_stand_in(const std::string& name, const std::string& backend, TaskKind task,
                           std::vector<std::string> measures);

    bool known(const std::string& name) const;
    const LearnerSpec& spec(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Fits on the train split (clustering fits the full data) and scores
    /// the requested applicable measures on the evaluation split.
    FitOutcome fit(const std::string& name, const ParamSet& params, const Dataset& data,
                   std::uint64_t seed, const std::vector<std::string>& measures) const;

    /// One score per requested measure applicable to the model's task kind.
    std::vector<Score> evaluate(const FittedModel& model, const Dataset& data,
                                const std::vector<std::string>& measures) const;

private:
    std::map<std::string, std::pair<LearnerSpec, LearnerFactory>> learners_;
};

/// Registers the five built-in learners.
void register_builtins(LearnerRegistry& registry);

/// Solves (A + ridge*I) x = b for symmetric positive definite A by Cholesky
/// decomposition; the final row/column is exempt from the ridge penalty when
/// `skip_last_penalty` (the intercept). Throws LearnerError on breakdown.
std::vector<double> cholesky_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                                   double ridge, bool skip_last_penalty);

} // namespace hamlet::ml
