#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randop {

// Every rejection the library can produce, so tests and the CLI can match on
// the kind instead of parsing messages.
enum class Errc {
    EmptySpace,
    DuplicateAtom,
    NonpositiveMass,
    MassSumNotOne,
    ForeignEvent,
    OutOfRange,
    NullConditioningEvent,
    SpaceMismatch,
    IndexOutOfRange,
    NegativeThreshold,
    NegativeBound,
    ZeroVector,
    EmptyGrid,
    InconsistentBundle,
    MissingWitness,
    UnsupportedEdge,
    SequenceNotNull,
    UncertifiedSequence,
    HypothesisFails,
    ParseError,
    UnknownAnalysis,
    InvariantViolation,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::EmptySpace: return "EmptySpace";
        case Errc::DuplicateAtom: return "DuplicateAtom";
        case Errc::NonpositiveMass: return "NonpositiveMass";
        case Errc::MassSumNotOne: return "MassSumNotOne";
        case Errc::ForeignEvent: return "ForeignEvent";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NullConditioningEvent: return "NullConditioningEvent";
        case Errc::SpaceMismatch: return "SpaceMismatch";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::NegativeThreshold: return "NegativeThreshold";
        case Errc::NegativeBound: return "NegativeBound";
        case Errc::ZeroVector: return "ZeroVector";
        case Errc::EmptyGrid: return "EmptyGrid";
        case Errc::InconsistentBundle: return "InconsistentBundle";
        case Errc::MissingWitness: return "MissingWitness";
        case Errc::UnsupportedEdge: return "UnsupportedEdge";
        case Errc::SequenceNotNull: return "SequenceNotNull";
        case Errc::UncertifiedSequence: return "UncertifiedSequence";
        case Errc::HypothesisFails: return "HypothesisFails";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownAnalysis: return "UnknownAnalysis";
        case Errc::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message, std::string field = {})
        : std::runtime_error(std::string(errc_name(code)) + ": " + message +
                             (field.empty() ? "" : " (at " + field + ")")),
          code_(code),
          message_(std::move(message)),
          field_(std::move(field)) {}

    Errc code() const { return code_; }
    const std::string& message() const { return message_; }
    // JSON-pointer-ish location for scenario diagnostics; empty elsewhere.
    const std::string& field() const { return field_; }

private:
    Errc code_;
    std::string message_;
    std::string field_;
};

[[noreturn]] inline void fail(Errc code, std::string message, std::string field = {}) {
    throw Error(code, std::move(message), std::move(field));
}

inline void require(bool ok, Errc code, const char* message) {
    if (!ok) fail(code, message);
}

} // namespace randop
