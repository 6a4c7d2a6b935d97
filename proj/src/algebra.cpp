#include "hamlet/algebra.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace hamlet {

std::string canonicalize_token(const std::string& token) {
    if (token.empty()) return token;
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) return token;
    char buf[64];
    auto [end, ec2] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec2 != std::errc()) return token;
    return std::string(buf, end);
}

ParamValue ParamValue::literal(std::string token) {
    ParamValue v;
    v.token_ = canonicalize_token(token);
    return v;
}

ParamValue ParamValue::from_token(const std::string& token) {
    if (token == "*") return general();
    return literal(token);
}

ParamSet::ParamSet(std::initializer_list<std::pair<std::string, std::string>> pairs) {
    for (const auto& [p, v] : pairs) set(p, ParamValue::from_token(v));
}

void ParamSet::set(const std::string& param, ParamValue value) {
    if (param.empty()) throw AlgebraError("parameter identifier must be non-empty");
    pairs_[param] = std::move(value);
}

const ParamValue* ParamSet::find(const std::string& param) const {
    auto it = pairs_.find(param);
    return it == pairs_.end() ? nullptr : &it->second;
}

bool ParamSet::is_general() const {
    for (const auto& [p, v] : pairs_)
        if (v.is_general()) return true;
    return false;
}

std::string ParamSet::text() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [p, v] : pairs_) {
        if (!first) os << ", ";
        first = false;
        os << p << '=' << v.text();
    }
    os << '}';
    return os.str();
}

bool ParamSet::operator<(const ParamSet& o) const {
    return text() < o.text();
}

void SimilarityConfig::validate() const {
    if (!(0.0 < beta && beta < alpha && alpha < 1.0))
        throw AlgebraError("similarity config requires 0 < beta < alpha < 1");
}

bool congruent(const ParamSet& p, const ParamSet& q) {
    if (p.size() != q.size()) return false;
    for (const auto& [name, v] : p.pairs())
        if (!q.contains(name)) return false;
    return true;
}

bool leq(const ParamPair& a, const ParamPair& b) {
    if (a.param != b.param) return false;
    return a.value == b.value || a.value.is_general() || b.value.is_general();
}

bool leq(const ParamSet& p, const ParamSet& q) {
    for (const auto& [name, v] : p.pairs()) {
        const ParamValue* w = q.find(name);
        if (!w) return false;
        if (!(v == *w || v.is_general() || w->is_general())) return false;
    }
    return true;
}

ParamSet psum(const ParamSet& p, const ParamSet& q) {
    if (p.empty()) return q;
    if (q.empty()) return p;
    if (!congruent(p, q))
        throw AlgebraError("parametric sum requires congruent sets, got " + p.text() +
                           " and " + q.text());
    ParamSet out;
    for (const auto& [name, v] : p.pairs()) {
        const ParamValue& w = *q.find(name);
        out.set(name, v == w ? v : ParamValue::general());
    }
    return out;
}

double pair_similarity(const ParamValue& a, const ParamValue& b, const SimilarityConfig& cfg) {
    if (a == b) return 1.0;
    if (a.is_general() != b.is_general()) return cfg.alpha;
    return cfg.beta;
}

double similarity(const ParamSet& p, const ParamSet& q, const SimilarityConfig& cfg) {
    if (p.empty() || q.empty())
        throw AlgebraError("similarity is undefined for empty sets");
    if (!congruent(p, q))
        throw AlgebraError("similarity requires congruent sets, got " + p.text() +
                           " and " + q.text());
    double matches = 0.0;
    double mismatch_product = 1.0;
    bool any_mismatch = false;
    for (const auto& [name, v] : p.pairs()) {
        const ParamValue& w = *q.find(name);
        if (v == w) {
            matches += 1.0;
        } else {
            any_mismatch = true;
            mismatch_product *= pair_similarity(v, w, cfg);
        }
    }
    const double product_term = any_mismatch ? mismatch_product : 0.0;
    return (matches + product_term) / static_cast<double>(p.size());
}

double name_similarity(const ParamPair& a, const ParamPair& b, const SimilarityConfig& cfg) {
    if (a.param != "name" || b.param != "name")
        throw AlgebraError("name similarity expects two \"name\" pairs");
    ParamSet p, q;
    p.set("name", a.value);
    q.set("name", b.value);
    return similarity(p, q, cfg);
}

} // namespace hamlet
