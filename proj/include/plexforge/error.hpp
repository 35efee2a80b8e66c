#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plexforge {

enum class ErrorCode {
    BadDimension,
    SymbolOutOfRange,
    RowNotPermutation,
    ColumnRepeat,
    EntryOutOfRange,
    DuplicateEntry,
    OrderMismatch,
    InvalidTrade,
    TradeNotContained,
    ResultNotLatin,
    BadDivisor,
    BadFactorization,
    BlockNotLatin,
    BadParams,
    BadOrder,
    MateMismatch,
    PlexAssertionFailed,
    UnsupportedOrder,
    OrderTooLarge,
    NotFound,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this one exception type; the
// code identifies the failure class and the message names the offending
// index or parameter.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace plexforge
