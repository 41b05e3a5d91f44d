#pragma once

#include <stdexcept>
#include <string>

namespace unirank3 {

/// Every domain failure carries one of these kinds.
enum class ErrorKind {
    ZeroDenominator,
    NotIntegralLength,
    RangeExceeded,
    NotStandardBasis,
    NotLadder,
    RankMismatch,
    UndecidableTemperedComponent,
    NoFormulaAvailable,
    NotInDualityTable,
    NotACataloguedCase,
    RankExceeded,
    UnknownSuite,
    Undecidable,
    ParseError,
};

inline const char* error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::NotIntegralLength: return "NotIntegralLength";
        case ErrorKind::RangeExceeded: return "RangeExceeded";
        case ErrorKind::NotStandardBasis: return "NotStandardBasis";
        case ErrorKind::NotLadder: return "NotLadder";
        case ErrorKind::RankMismatch: return "RankMismatch";
        case ErrorKind::UndecidableTemperedComponent: return "UndecidableTemperedComponent";
        case ErrorKind::NoFormulaAvailable: return "NoFormulaAvailable";
        case ErrorKind::NotInDualityTable: return "NotInDualityTable";
        case ErrorKind::NotACataloguedCase: return "NotACataloguedCase";
        case ErrorKind::RankExceeded: return "RankExceeded";
        case ErrorKind::UnknownSuite: return "UnknownSuite";
        case ErrorKind::Undecidable: return "Undecidable";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// The single exception type of the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace unirank3
