#pragma once

#include "hamlet/holon.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hamlet {

struct DeliveryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Performative { Cfp, Propose, Ask, Inform, Result };

const char* to_string(Performative p);

// Verbs used across the holon protocols.
namespace verb {
inline constexpr const char* kAdd = "ADD";
inline constexpr const char* kJoin = "JOIN";
inline constexpr const char* kSpawn = "SPAWN";
inline constexpr const char* kCreateHolon = "CREATE-HOLON";
inline constexpr const char* kCreated = "CREATED";
inline constexpr const char* kCapability = "CAPABILITY";
inline constexpr const char* kTrainFirstPass = "TRAIN FIRST PASS";
inline constexpr const char* kTrainSecondPass = "TRAIN SECOND PASS";
inline constexpr const char* kInformAddress = "INFORM-ADDRESS";
inline constexpr const char* kTest = "TEST";
inline constexpr const char* kResolveData = "RESOLVE-DATA";
inline constexpr const char* kResults = "RESULTS";
inline constexpr const char* kNameSimilarity = "NAME-SIMILARITY";
inline constexpr const char* kCapabilitySimilarity = "CAPABILITY-SIMILARITY";
inline constexpr const char* kRequestAccess = "REQUEST-ACCESS";
inline constexpr const char* kGrantAccess = "GRANT-ACCESS";
inline constexpr const char* kDenyAccess = "DENY-ACCESS";
inline constexpr const char* kTrainResult = "TRAIN-RESULT";
inline constexpr const char* kSubmit = "SUBMIT";
} // namespace verb

/// A routed message. The conversation id ties together every hop spent on
/// one query or sub-protocol; the payload is an opaque JSON value.
struct Envelope {
    HolonId from;
    HolonId to;
    Performative performative = Performative::Ask;
    std::string conversation_id;
    std::string verb;
    nlohmann::json payload;
};

/// Append-only per-conversation record of message hops with per-performative
/// and per-verb counters; feeds the complexity reports.
class HopTrace {
public:
    struct Record {
        std::uint64_t seq;
        HolonId from, to;
        Performative performative;
        std::string verb;
    };

    void append(const Envelope& env, std::uint64_t seq);

    int count(const std::string& conversation, Performative p) const;
    int count_verb(const std::string& conversation, const std::string& verb) const;
    int total(const std::string& conversation) const;
    std::vector<Record> records(const std::string& conversation) const;
    std::vector<std::string> conversations() const;
    void clear();

private:
    struct PerConversation {
        std::vector<Record> records;
        std::map<Performative, int> by_performative;
        std::map<std::string, int> by_verb;
    };
    std::map<std::string, PerConversation> conversations_;
};

} // namespace hamlet
