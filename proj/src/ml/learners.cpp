#include "hamlet/ml/learners.hpp"

#include "hamlet/ml/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace hamlet::ml {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b, bool manhattan) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += manhattan ? std::fabs(d) : d * d;
    }
    return acc;
}

double param_double(const ParamSet& params, const std::string& name, double fallback) {
    const ParamValue* v = params.find(name);
    if (!v || v->is_general()) return fallback;
    try {
        return std::stod(v->token());
    } catch (...) {
        throw LearnerError("parameter " + name + " is not numeric: " + v->token());
    }
}

bool param_manhattan(const ParamSet& params) {
    const ParamValue* v = params.find("metric");
    return v && !v->is_general() && v->token() == "manhattan";
}

std::vector<std::vector<double>> gather(const std::vector<std::vector<double>>& rows,
                                        const std::vector<std::size_t>& idx) {
    std::vector<std::vector<double>> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(rows[i]);
    return out;
}

std::vector<double> gather(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
    std::vector<double> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
}

void require_labels(const Dataset& data, const char* who) {
    if (!data.has_targets())
        throw LearnerError(std::string(who) + " requires a labeled dataset, " + data.name +
                           " has no targets");
}

FittedModel fit_nearest_centroid(const LearnerSpec&, const ParamSet& params, const Dataset& data,
                                 const std::vector<std::size_t>& rows, std::uint64_t) {
    require_labels(data, "nearest-centroid");
    const bool manhattan = param_manhattan(params);
    std::map<double, std::pair<std::vector<double>, std::size_t>> acc;
    for (std::size_t i : rows) {
        auto& [sum, count] = acc[data.targets[i]];
        if (sum.empty()) sum.assign(data.dims(), 0.0);
        for (std::size_t j = 0; j < data.dims(); ++j) sum[j] += data.features[i][j];
        ++count;
    }
    CentroidState state;
    state.manhattan = manhattan;
    for (auto& [label, entry] : acc) {
        auto& [sum, count] = entry;
        for (double& v : sum) v /= static_cast<double>(count);
        state.centers.push_back(std::move(sum));
        state.labels.push_back(label);
    }
    FittedModel model;
    model.state = std::move(state);
    return model;
}

FittedModel fit_knn(const LearnerSpec&, const ParamSet& params, const Dataset& data,
                    const std::vector<std::size_t>& rows, std::uint64_t seed) {
    require_labels(data, "k-NN");
    KnnState state;
    state.manhattan = param_manhattan(params);
    int k = static_cast<int>(param_double(params, "n_neighbors", 0));
    if (k <= 0) k = 3 + static_cast<int>(seed % 5) * 2; // stand-in variety, still seeded
    state.k = std::min<int>(k, static_cast<int>(rows.size()));
    if (state.k <= 0) throw LearnerError("k-NN needs at least one training row");
    state.points = gather(data.features, rows);
    state.labels = gather(data.targets, rows);
    FittedModel model;
    model.state = std::move(state);
    return model;
}

FittedModel fit_linear_like(const ParamSet& params, const Dataset& data,
                            const std::vector<std::size_t>& rows, double ridge_alpha) {
    require_labels(data, "linear regression");
    const ParamValue* fi = params.find("fit_intercept");
    const bool intercept = !fi || fi->is_general() || fi->token() != "false";
    const std::size_t d = data.dims() + (intercept ? 1 : 0);
    if (rows.size() < d)
        throw LearnerError("degenerate regression: " + std::to_string(rows.size()) +
                           " rows for " + std::to_string(d) + " coefficients");

    // normal equations X^T X w = X^T y with an optional all-ones column
    std::vector<std::vector<double>> xtx(d, std::vector<double>(d, 0.0));
    std::vector<double> xty(d, 0.0);
    for (std::size_t i : rows) {
        std::vector<double> x(data.features[i]);
        if (intercept) x.push_back(1.0);
        for (std::size_t a = 0; a < d; ++a) {
            xty[a] += x[a] * data.targets[i];
            for (std::size_t b = 0; b <= a; ++b) xtx[a][b] += x[a] * x[b];
        }
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) xtx[a][b] = xtx[b][a];

    LinearState state;
    state.intercept = intercept;
    state.weights = cholesky_solve(std::move(xtx), std::move(xty), ridge_alpha, intercept);
    FittedModel model;
    model.state = std::move(state);
    return model;
}

FittedModel fit_linear(const LearnerSpec&, const ParamSet& params, const Dataset& data,
                       const std::vector<std::size_t>& rows, std::uint64_t) {
    return fit_linear_like(params, data, rows, 0.0);
}

FittedModel fit_ridge(const LearnerSpec&, const ParamSet& params, const Dataset& data,
                      const std::vector<std::size_t>& rows, std::uint64_t) {
    return fit_linear_like(params, data, rows, param_double(params, "alpha", 1.0));
}

FittedModel fit_kmeans(const LearnerSpec&, const ParamSet& params, const Dataset& data,
                       const std::vector<std::size_t>& rows, std::uint64_t seed) {
    int k;
    const ParamValue* nc = params.find("n_clusters");
    if (!nc || nc->is_general() || nc->token() == "auto") {
        require_labels(data, "k-means with n_clusters=auto");
        k = data.num_classes();
    } else {
        k = static_cast<int>(param_double(params, "n_clusters", 8));
    }
    const int max_iter = static_cast<int>(param_double(params, "max_iter", 300));
    if (k < 1) throw LearnerError("k-means needs n_clusters >= 1");
    if (static_cast<std::size_t>(k) > rows.size())
        throw LearnerError("k-means: n_clusters " + std::to_string(k) + " exceeds " +
                           std::to_string(rows.size()) + " samples");

    std::vector<std::vector<double>> points = gather(data.features, rows);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pick(points.size());
    std::iota(pick.begin(), pick.end(), 0);
    std::shuffle(pick.begin(), pick.end(), rng);

    KmeansState state;
    for (int c = 0; c < k; ++c) state.centers.push_back(points[pick[c]]);

    std::vector<int> assign(points.size(), -1);
    double prev_objective = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iter; ++iter) {
        double objective = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = distance(points[i], state.centers[c], false);
                if (d < best) {
                    best = d;
                    assign[i] = c;
                }
            }
            objective += best;
        }
        if (objective > prev_objective + 1e-9)
            throw LearnerError("k-means objective increased, which cannot happen");
        state.objective_curve.push_back(objective);
        std::vector<std::vector<double>> sums(k, std::vector<double>(data.dims(), 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t j = 0; j < data.dims(); ++j) sums[assign[i]][j] += points[i][j];
            counts[assign[i]]++;
        }
        bool moved = false;
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) continue; // empty cluster keeps its previous center
            for (std::size_t j = 0; j < data.dims(); ++j) {
                const double v = sums[c][j] / static_cast<double>(counts[c]);
                if (v != state.centers[c][j]) moved = true;
                state.centers[c][j] = v;
            }
        }
        if (!moved) break;
        prev_objective = objective;
    }
    FittedModel model;
    model.state = std::move(state);
    return model;
}

} // namespace

std::vector<double> cholesky_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                                   double ridge, bool skip_last_penalty) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!(skip_last_penalty && i == n - 1)) a[i][i] += ridge;

    // in-place lower-triangular factorization
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i][k] * a[j][k];
            if (i == j) {
                if (sum <= 1e-12)
                    throw LearnerError("normal equations are not positive definite (rank-deficient data)");
                a[i][i] = std::sqrt(sum);
            } else {
                a[i][j] = sum / a[j][j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) { // forward
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= a[i][k] * b[k];
        b[i] = sum / a[i][i];
    }
    for (std::size_t i = n; i-- > 0;) { // backward
        double sum = b[i];
        for (std::size_t k = i + 1; k < n; ++k) sum -= a[k][i] * b[k];
        b[i] = sum / a[i][i];
    }
    return b;
}

std::size_t FittedModel::expected_dims() const {
    if (const auto* c = std::get_if<CentroidState>(&state)) return c->centers.front().size();
    if (const auto* k = std::get_if<KnnState>(&state)) return k->points.front().size();
    if (const auto* l = std::get_if<LinearState>(&state))
        return l->weights.size() - (l->intercept ? 1 : 0);
    return std::get<KmeansState>(state).centers.front().size();
}

std::vector<double> FittedModel::predict(const std::vector<std::vector<double>>& features) const {
    std::vector<double> out;
    out.reserve(features.size());
    if (const auto* c = std::get_if<CentroidState>(&state)) {
        for (const auto& row : features) {
            double best = std::numeric_limits<double>::infinity();
            double label = 0.0;
            for (std::size_t i = 0; i < c->centers.size(); ++i) {
                const double d = distance(row, c->centers[i], c->manhattan);
                if (d < best) {
                    best = d;
                    label = c->labels[i];
                }
            }
            out.push_back(label);
        }
        return out;
    }
    if (const auto* knn = std::get_if<KnnState>(&state)) {
        std::vector<std::pair<double, std::size_t>> dist(knn->points.size());
        for (const auto& row : features) {
            for (std::size_t i = 0; i < knn->points.size(); ++i)
                dist[i] = {distance(row, knn->points[i], knn->manhattan), i};
            std::partial_sort(dist.begin(), dist.begin() + knn->k, dist.end());
            std::map<double, int> votes;
            for (int i = 0; i < knn->k; ++i) votes[knn->labels[dist[i].second]]++;
            double label = votes.begin()->first;
            int best = votes.begin()->second;
            for (const auto& [l, v] : votes)
                if (v > best) { // ties resolve to the smallest label
                    best = v;
                    label = l;
                }
            out.push_back(label);
        }
        return out;
    }
    if (const auto* lin = std::get_if<LinearState>(&state)) {
        const std::size_t d = lin->weights.size() - (lin->intercept ? 1 : 0);
        for (const auto& row : features) {
            double y = lin->intercept ? lin->weights.back() : 0.0;
            for (std::size_t j = 0; j < d; ++j) y += lin->weights[j] * row[j];
            out.push_back(y);
        }
        return out;
    }
    const auto& km = std::get<KmeansState>(state);
    for (const auto& row : features) {
        double best = std::numeric_limits<double>::infinity();
        double label = 0.0;
        for (std::size_t c = 0; c < km.centers.size(); ++c) {
            const double d = distance(row, km.centers[c], false);
            if (d < best) {
                best = d;
                label = static_cast<double>(c);
            }
        }
        out.push_back(label);
    }
    return out;
}

void LearnerRegistry::register_learner(LearnerSpec spec, LearnerFactory factory) {
    if (learners_.count(spec.name))
        throw LearnerError("learner \"" + spec.name + "\" is already registered");
    const std::string name = spec.name;
    learners_.emplace(name, std::make_pair(std::move(spec), std::move(factory)));
}

void LearnerRegistry::register_stand_in(const std::string& name, const std::string& backend,
                                        TaskKind task, std::vector<std::string> measures) {
    auto it = learners_.find(backend);
    if (it == learners_.end()) throw LearnerError("unknown backend learner: " + backend);
    LearnerSpec spec = it->second.first;
    spec.name = name;
    spec.task = task;
    spec.measures = std::move(measures);
    spec.strict_schema = false;
    spec.backend = backend;
    register_learner(std::move(spec), it->second.second);
}

bool LearnerRegistry::known(const std::string& name) const { return learners_.count(name) != 0; }

const LearnerSpec& LearnerRegistry::spec(const std::string& name) const {
    auto it = learners_.find(name);
    if (it == learners_.end()) throw LearnerError("unknown learner: " + name);
    return it->second.first;
}

std::vector<std::string> LearnerRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : learners_) out.push_back(k);
    return out;
}

namespace {
bool task_compatible(TaskKind learner, TaskKind data) {
    switch (learner) {
        case TaskKind::Regression: return data == TaskKind::Regression;
        case TaskKind::Classification:
        case TaskKind::ClusteringCapable:
            return data == TaskKind::Classification || data == TaskKind::ClusteringCapable;
    }
    return false;
}

std::vector<std::string> applicable(const LearnerSpec& spec,
                                    const std::vector<std::string>& requested) {
    std::vector<std::string> out;
    for (const auto& m : requested)
        if (std::find(spec.measures.begin(), spec.measures.end(), m) != spec.measures.end())
            out.push_back(m);
    return out;
}
} // namespace

FitOutcome LearnerRegistry::fit(const std::string& name, const ParamSet& params,
                                const Dataset& data, std::uint64_t seed,
                                const std::vector<std::string>& measures) const {
    auto it = learners_.find(name);
    if (it == learners_.end()) throw LearnerError("unknown learner: " + name);
    const auto& [spec, factory] = it->second;
    if (!task_compatible(spec.task, data.task_kind))
        throw LearnerError("learner " + name + " (" + to_string(spec.task) +
                           ") cannot fit dataset " + data.name + " (" +
                           to_string(data.task_kind) + ")");
    if (spec.strict_schema) {
        for (const auto& [p, v] : params.pairs())
            if (!spec.schema.count(p))
                throw LearnerError("learner " + name + " does not read parameter " + p);
    }
    if (params.is_general())
        throw LearnerError("cannot fit with general parameter values: " + params.text());

    // clustering consumes the full data; otherwise a seeded train/eval split
    const bool clustering = spec.task == TaskKind::ClusteringCapable;
    std::uint64_t derived_seed = seed ^ fnv1a(name + params.text() + data.name);
    SplitIndices idx = clustering ? SplitIndices{}
                                  : split_indices(data.rows(), data.split, derived_seed);
    if (clustering) {
        idx.train.resize(data.rows());
        std::iota(idx.train.begin(), idx.train.end(), 0);
        idx.eval = idx.train;
    }

    FitOutcome out;
    out.model = factory(spec, params, data, idx.train, derived_seed);
    out.model.learner = name;
    out.model.params = params;
    out.model.dataset_name = data.name;
    out.model.seed = derived_seed;
    out.model.task = spec.task;

    const auto eval_features = gather(data.features, idx.eval);
    const auto eval_targets = gather(data.targets, idx.eval);
    if (!eval_targets.empty()) {
        const std::vector<double> predicted = out.model.predict(eval_features);
        for (const auto& m : applicable(spec, measures))
            out.train_scores.push_back({m, compute_metric(m, eval_targets, predicted)});
    }
    return out;
}

std::vector<Score> LearnerRegistry::evaluate(const FittedModel& model, const Dataset& data,
                                             const std::vector<std::string>& measures) const {
    if (data.dims() != model.expected_dims())
        throw EvaluationError("dataset " + data.name + " has " + std::to_string(data.dims()) +
                              " features, model expects " +
                              std::to_string(model.expected_dims()));
    const LearnerSpec& sp = spec(model.learner);
    std::vector<Score> out;
    const auto wanted = applicable(sp, measures);
    if (wanted.empty() || !data.has_targets()) return out;
    const std::vector<double> predicted = model.predict(data.features);
    for (const auto& m : wanted) out.push_back({m, compute_metric(m, data.targets, predicted)});
    return out;
}

void register_builtins(LearnerRegistry& registry) {
    registry.register_learner({"nearest-centroid",
                               {{"metric", "euclidean"}},
                               TaskKind::Classification,
                               {measure::kAccuracy}},
                              fit_nearest_centroid);
    registry.register_learner({"k-NN",
                               {{"n_neighbors", "5"}, {"metric", "euclidean"}},
                               TaskKind::Classification,
                               {measure::kAccuracy}},
                              fit_knn);
    registry.register_learner({"linear",
                               {{"fit_intercept", "true"}},
                               TaskKind::Regression,
                               {measure::kMse}},
                              fit_linear);
    registry.register_learner({"ridge",
                               {{"alpha", "1.0"}, {"fit_intercept", "true"}},
                               TaskKind::Regression,
                               {measure::kMse}},
                              fit_ridge);
    registry.register_learner({"k-means",
                               {{"n_clusters", "auto"}, {"max_iter", "300"}},
                               TaskKind::ClusteringCapable,
                               {measure::kFowlkesMallows, measure::kHomogeneity}},
                              fit_kmeans);
}

} // namespace hamlet::ml
