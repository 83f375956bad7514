#include "vanet/error.hpp"

namespace vanet {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::FieldTooLong: return "FieldTooLong";
        case ErrorKind::ValueTooLong: return "ValueTooLong";
        case ErrorKind::DecodeError: return "DecodeError";
        case ErrorKind::AuthFailure: return "AuthFailure";
        case ErrorKind::EmptyIdentity: return "EmptyIdentity";
        case ErrorKind::EmptyPassword: return "EmptyPassword";
        case ErrorKind::InvalidIdentity: return "InvalidIdentity";
        case ErrorKind::DuplicateRegistration: return "DuplicateRegistration";
        case ErrorKind::PasswordMismatch: return "PasswordMismatch";
        case ErrorKind::StaleTimestamp: return "StaleTimestamp";
        case ErrorKind::NoEntry: return "NoEntry";
        case ErrorKind::UnknownCid: return "UnknownCid";
        case ErrorKind::RevokedCid: return "RevokedCid";
        case ErrorKind::WidthOverflow: return "WidthOverflow";
        case ErrorKind::PoolExhausted: return "PoolExhausted";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

std::string_view to_string(Party party) noexcept {
    switch (party) {
        case Party::None: return "none";
        case Party::User: return "user";
        case Party::Rsu: return "rsu";
        case Party::Server: return "server";
    }
    return "none";
}

namespace {

std::string describe(ErrorKind kind, std::string_view what, Party party) {
    std::string out(to_string(kind));
    if (party != Party::None) {
        out += '{';
        out += to_string(party);
        out += '}';
    }
    if (!what.empty()) {
        out += ": ";
        out += what;
    }
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string_view what, Party party)
    : std::runtime_error(describe(kind, what, party)), kind_(kind), party_(party) {}

}  // namespace vanet
