#pragma once

#include <stdexcept>
#include <string>

namespace ftsl2 {

// Process exit codes used by the CLI.
enum class ExitCode : int {
    Ok = 0,
    Internal = 1,
    Regularity = 2,
    MissingBackendData = 3,
    SearchExhausted = 4,
    Schema = 5,
};

class Error : public std::runtime_error {
public:
    Error(std::string kind, ExitCode code, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), code_(code) {}
    const std::string& kind() const { return kind_; }
    ExitCode code() const { return code_; }

private:
    std::string kind_;
    ExitCode code_;
};

#define FTSL2_ERROR(Name, Code)                                                          \
    class Name : public Error {                                                          \
    public:                                                                              \
        explicit Name(const std::string& msg) : Error(#Name, ExitCode::Code, msg) {}     \
    }

FTSL2_ERROR(ReduciblePolynomial, Schema);
FTSL2_ERROR(BasisNotClosed, Schema);
FTSL2_ERROR(SchemaViolation, Schema);
FTSL2_ERROR(ConsistencyFailure, Schema);
FTSL2_ERROR(EmbeddingInvalid, Schema);
FTSL2_ERROR(RegularityViolated, Regularity);
FTSL2_ERROR(NeedsBackendData, MissingBackendData);
FTSL2_ERROR(PrecisionExhausted, SearchExhausted);
FTSL2_ERROR(Undecided, SearchExhausted);
FTSL2_ERROR(SearchExhausted, SearchExhausted);
FTSL2_ERROR(RelationSearchIncomplete, SearchExhausted);
FTSL2_ERROR(IndexDivisor, Internal);
FTSL2_ERROR(DataError, Internal);

#undef FTSL2_ERROR

}  // namespace ftsl2
