#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vanet {

enum class ErrorKind {
    InvalidParams,
    FieldTooLong,
    ValueTooLong,
    DecodeError,
    AuthFailure,
    EmptyIdentity,
    EmptyPassword,
    InvalidIdentity,
    DuplicateRegistration,
    PasswordMismatch,
    StaleTimestamp,
    NoEntry,
    UnknownCid,
    RevokedCid,
    WidthOverflow,
    PoolExhausted,
    ConfigError,
};

// Which verification failed, for AuthFailure. Other kinds carry Party::None.
enum class Party { None, User, Rsu, Server };

std::string_view to_string(ErrorKind kind) noexcept;
std::string_view to_string(Party party) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string_view what, Party party = Party::None);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] Party party() const noexcept { return party_; }

private:
    ErrorKind kind_;
    Party party_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string_view what, Party party = Party::None) {
    throw Error(kind, what, party);
}

}  // namespace vanet
