#include "vanet/protocol/messages.hpp"

#include <algorithm>

#include "vanet/crypto/encoding.hpp"
#include "vanet/error.hpp"

namespace vanet::protocol {

using crypto::decode_fields;
using crypto::encode_fields;
using crypto::field;
using crypto::FieldVec;

std::string_view to_string(MessageType type) noexcept {
    switch (type) {
        case MessageType::RegReq: return "RegReq";
        case MessageType::RegResp: return "RegResp";
        case MessageType::M1: return "M1";
        case MessageType::M2: return "M2";
        case MessageType::M3: return "M3";
        case MessageType::M4: return "M4";
        case MessageType::M5: return "M5";
        case MessageType::C1: return "C1";
        case MessageType::C2: return "C2";
        case MessageType::C3: return "C3";
        case MessageType::AddrReq: return "AddrReq";
        case MessageType::AddrResp: return "AddrResp";
    }
    return "?";
}

MessageType type_of(const WireMessage& message) noexcept {
    static constexpr MessageType kByIndex[] = {
        MessageType::RegReq, MessageType::RegResp, MessageType::M1, MessageType::M2,
        MessageType::M3,     MessageType::M4,      MessageType::M5, MessageType::C1,
        MessageType::C2,     MessageType::C3,      MessageType::AddrReq, MessageType::AddrResp,
    };
    static_assert(std::size(kByIndex) == std::variant_size_v<WireMessage>);
    return kByIndex[message.index()];
}

namespace {

struct BodyWriter {
    const ChebyParams& params;

    Bytes el(const BigInt& v) const { return element(v, params); }

    FieldVec operator()(const RegReq& m) const { return {field(m.id), field(m.d0), m.st}; }
    FieldVec operator()(const RegResp& m) const {
        const auto width = crypto::byte_length(m.modulus);
        return {field(m.c), m.escrow, field(m.modulus, width), field(m.seed, width), field(m.server_public, width)};
    }
    FieldVec operator()(const M1& m) const { return {el(m.q_i1), field(m.x1), field(m.x2), field(m.ts)}; }
    FieldVec operator()(const M2& m) const {
        return {el(m.q_i1), field(m.x1), field(m.x2), field(m.ts), el(m.q_j1), field(m.y1), field(m.y2)};
    }
    FieldVec operator()(const M3& m) const { return {field(m.z_i), field(m.z_j)}; }
    FieldVec operator()(const M4& m) const {
        return {el(m.q_j1), field(m.r_j), field(m.cid), field(m.t), field(m.r)};
    }
    FieldVec operator()(const M5& m) const { return {field(m.r_i)}; }
    FieldVec operator()(const C1& m) const { return {field(m.cid), field(m.t), field(m.x1), field(m.x2), field(m.ts)}; }
    FieldVec operator()(const C2& m) const { return {field(m.y1), field(m.y2)}; }
    FieldVec operator()(const C3& m) const { return {field(m.r_i)}; }
    FieldVec operator()(const AddrReq& m) const { return {m.sealed}; }
    FieldVec operator()(const AddrResp& m) const { return {m.sealed}; }
};

class FieldReader {
public:
    FieldReader(FieldVec fields, std::size_t expected, const BigInt& modulus)
        : fields_(std::move(fields)), modulus_(modulus), width_(crypto::byte_length(modulus)) {
        if (fields_.size() != expected) fail(ErrorKind::DecodeError, "wrong field count");
    }

    Bytes bytes() { return std::move(next()); }

    std::string text() { return crypto::to_string(next()); }

    Digest digest() { return crypto::digest_from(next()); }

    Timestamp timestamp() { return Timestamp{crypto::u64_from(next())}; }

    Cid cid() {
        const auto& raw = next();
        if (raw.size() != kCidBytes) fail(ErrorKind::DecodeError, "CID must be 16 bytes");
        Cid out{};
        std::copy(raw.begin(), raw.end(), out.begin());
        return out;
    }

    BigInt element() {
        const auto& raw = next();
        if (raw.size() != width_) fail(ErrorKind::DecodeError, "group element has wrong width");
        auto value = crypto::from_bytes(raw);
        if (value >= modulus_) fail(ErrorKind::DecodeError, "group element not reduced mod p");
        return value;
    }

private:
    Bytes& next() { return fields_.at(pos_++); }

    FieldVec fields_;
    BigInt modulus_;
    std::size_t width_;
    std::size_t pos_ = 0;
};

WireMessage decode_body(MessageType type, FieldVec fields, const ChebyParams& params) {
    const auto& p = params.modulus();
    switch (type) {
        case MessageType::RegReq: {
            FieldReader r(std::move(fields), 3, p);
            RegReq m;
            m.id = r.text();
            m.d0 = r.digest();
            m.st = r.bytes();
            return m;
        }
        case MessageType::RegResp: {
            if (fields.size() != 5) fail(ErrorKind::DecodeError, "wrong field count");
            const auto modulus = crypto::from_bytes(fields[2]);
            if (modulus < 5) fail(ErrorKind::DecodeError, "bad modulus");
            FieldReader r(std::move(fields), 5, modulus);
            RegResp m;
            m.c = r.digest();
            m.escrow = r.bytes();
            m.modulus = crypto::from_bytes(r.bytes());
            m.seed = r.element();
            m.server_public = r.element();
            return m;
        }
        case MessageType::M1: {
            FieldReader r(std::move(fields), 4, p);
            M1 m;
            m.q_i1 = r.element();
            m.x1 = r.digest();
            m.x2 = r.digest();
            m.ts = r.timestamp();
            return m;
        }
        case MessageType::M2: {
            FieldReader r(std::move(fields), 7, p);
            M2 m;
            m.q_i1 = r.element();
            m.x1 = r.digest();
            m.x2 = r.digest();
            m.ts = r.timestamp();
            m.q_j1 = r.element();
            m.y1 = r.digest();
            m.y2 = r.digest();
            return m;
        }
        case MessageType::M3: {
            FieldReader r(std::move(fields), 2, p);
            M3 m;
            m.z_i = r.digest();
            m.z_j = r.digest();
            return m;
        }
        case MessageType::M4: {
            FieldReader r(std::move(fields), 5, p);
            M4 m;
            m.q_j1 = r.element();
            m.r_j = r.digest();
            m.cid = r.cid();
            m.t = r.timestamp();
            m.r = r.digest();
            return m;
        }
        case MessageType::M5: {
            FieldReader r(std::move(fields), 1, p);
            return M5{r.digest()};
        }
        case MessageType::C1: {
            FieldReader r(std::move(fields), 5, p);
            C1 m;
            m.cid = r.cid();
            m.t = r.timestamp();
            m.x1 = r.digest();
            m.x2 = r.digest();
            m.ts = r.timestamp();
            return m;
        }
        case MessageType::C2: {
            FieldReader r(std::move(fields), 2, p);
            C2 m;
            m.y1 = r.digest();
            m.y2 = r.digest();
            return m;
        }
        case MessageType::C3: {
            FieldReader r(std::move(fields), 1, p);
            return C3{r.digest()};
        }
        case MessageType::AddrReq: {
            FieldReader r(std::move(fields), 1, p);
            return AddrReq{r.bytes()};
        }
        case MessageType::AddrResp: {
            FieldReader r(std::move(fields), 1, p);
            return AddrResp{r.bytes()};
        }
    }
    fail(ErrorKind::DecodeError, "unknown message type");
}

bool known_type(std::uint8_t tag) {
    switch (static_cast<MessageType>(tag)) {
        case MessageType::RegReq:
        case MessageType::RegResp:
        case MessageType::M1:
        case MessageType::M2:
        case MessageType::M3:
        case MessageType::M4:
        case MessageType::M5:
        case MessageType::C1:
        case MessageType::C2:
        case MessageType::C3:
        case MessageType::AddrReq:
        case MessageType::AddrResp:
            return true;
    }
    return false;
}

}  // namespace

Bytes encode(const WireMessage& message, const ChebyParams& params) {
    const auto body = encode_fields(std::visit(BodyWriter{params}, message));
    Bytes out;
    out.reserve(2 + body.size());
    out.push_back(kWireVersion);
    out.push_back(static_cast<std::uint8_t>(type_of(message)));
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

WireMessage decode(ByteView wire, const ChebyParams& params) {
    if (wire.size() < 2) fail(ErrorKind::DecodeError, "frame shorter than header");
    if (wire[0] != kWireVersion) fail(ErrorKind::DecodeError, "unsupported wire version");
    if (!known_type(wire[1])) fail(ErrorKind::DecodeError, "unknown message type");
    return decode_body(static_cast<MessageType>(wire[1]), decode_fields(wire.subspan(2)), params);
}

}  // namespace vanet::protocol
