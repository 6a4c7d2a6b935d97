#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamlet {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter value: either an opaque literal token or the general symbol
/// (rendered as "*"), which stands for all available values of a parameter.
/// Literals compare by exact token equality; the general symbol equals only
/// itself. Numeric tokens are canonicalized to a fixed decimal rendering so
/// that "1", "1.0" and "1e0" denote the same value regardless of source.
class ParamValue {
public:
    ParamValue() = default;

    static ParamValue general() {
        ParamValue v;
        v.general_ = true;
        return v;
    }
    static ParamValue literal(std::string token);

    /// Parses the external form: "*" is the general symbol, anything else a literal.
    static ParamValue from_token(const std::string& token);

    bool is_general() const { return general_; }
    const std::string& token() const { return token_; }

    /// External form; the general symbol renders as "*".
    std::string text() const { return general_ ? "*" : token_; }

    bool operator==(const ParamValue& o) const {
        return general_ == o.general_ && token_ == o.token_;
    }
    bool operator!=(const ParamValue& o) const { return !(*this == o); }

private:
    bool general_ = false;
    std::string token_;
};

/// Canonical token rendering used for value equality: if the token parses
/// completely as a finite number it is re-rendered in shortest round-trip
/// decimal form, otherwise it is kept verbatim.
std::string canonicalize_token(const std::string& token);

struct ParamPair {
    std::string param;
    ParamValue value;
};

/// A set of parameter/value pairs with at most one pair per parameter
/// identifier. The universal currency for capabilities, skills and query
/// criteria.
class ParamSet {
public:
    ParamSet() = default;
    explicit ParamSet(std::initializer_list<std::pair<std::string, std::string>> pairs);

    void set(const std::string& param, ParamValue value);
    bool contains(const std::string& param) const { return pairs_.count(param) != 0; }
    const ParamValue* find(const std::string& param) const;

    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    /// True if some pair carries the general symbol.
    bool is_general() const;

    const std::map<std::string, ParamValue>& pairs() const { return pairs_; }

    /// Canonical text form `{p1=v1, p2=*, ...}`, sorted by identifier.
    std::string text() const;

    bool operator==(const ParamSet& o) const { return pairs_ == o.pairs_; }
    bool operator!=(const ParamSet& o) const { return !(*this == o); }
    bool operator<(const ParamSet& o) const;

private:
    std::map<std::string, ParamValue> pairs_;
};

/// Similarity constants; the defaults follow the reference configuration
/// alpha=0.5, beta=0.1 with 0 < beta < alpha < 1 enforced.
struct SimilarityConfig {
    double alpha = 0.5;
    double beta = 0.1;

    void validate() const;
};

/// True iff |P|=|Q| and both sets range over the same parameter identifiers.
bool congruent(const ParamSet& p, const ParamSet& q);

/// Single-pair inequality: true iff v = v' or either side is general.
bool leq(const ParamPair& a, const ParamPair& b);

/// Set inequality: every pair of P is covered by a same-named pair of Q.
/// The sets need not be congruent; the empty set is below everything.
bool leq(const ParamSet& p, const ParamSet& q);

/// Parametric sum: per-parameter merge keeping agreeing values and
/// generalizing disagreements to the general symbol. Requires congruent
/// inputs unless one side is empty (additive identity).
ParamSet psum(const ParamSet& p, const ParamSet& q);

/// Single-pair similarity: 1 for equal values, alpha when exactly one side
/// is general, beta when both are distinct literals.
double pair_similarity(const ParamValue& a, const ParamValue& b, const SimilarityConfig& cfg);

/// Set similarity ratio over congruent non-empty sets:
///   (sum over matching pairs of 1  +  product over mismatching pairs of
///    their pair similarity) / |P|
/// with the product term contributing 0 when no pair mismatches, so that
/// identical sets score exactly 1. The result lies in [beta^|P|/|P|, 1].
double similarity(const ParamSet& p, const ParamSet& q, const SimilarityConfig& cfg);

/// Similarity of two singleton "name" pairs; used by root-level name routing.
double name_similarity(const ParamPair& a, const ParamPair& b, const SimilarityConfig& cfg);

} // namespace hamlet
