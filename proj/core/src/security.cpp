#include "ltdps/security.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ltdps {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t key_seed(const Bytes& key) {
    std::uint64_t seed = 0x243f6a8885a308d3ULL;
    for (std::uint8_t b : key) seed = splitmix(seed ^ b);
    return seed;
}

constexpr std::array<std::uint8_t, 8> kAckMarker = {'A', 'C', 'K', 0, 0, 0, 0, 0};

}  // namespace

SharedKey SharedKey::from_hex(const std::string& hex) {
    if (hex.empty() || hex.size() % 2 != 0) {
        throw std::invalid_argument("key hex must have even, nonzero length");
    }
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("invalid hex digit in key");
    };
    SharedKey key;
    key.bytes.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        key.bytes.push_back(
            static_cast<std::uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
    }
    return key;
}

Bytes BlockCipher::encrypt(std::span<const std::uint8_t> block) const {
    Bytes out(block_size());
    encrypt_block(block, out);
    return out;
}

Bytes BlockCipher::decrypt(std::span<const std::uint8_t> block) const {
    Bytes out(block_size());
    decrypt_block(block, out);
    return out;
}

XorCipher::XorCipher(const SharedKey& key) {
    if (key.bytes.empty()) throw std::invalid_argument("empty key");
    for (std::size_t i = 0; i < key_.size(); ++i) {
        key_[i] = key.bytes[i % key.bytes.size()];
    }
}

void XorCipher::encrypt_block(std::span<const std::uint8_t> in,
                              std::span<std::uint8_t> out) const {
    for (std::size_t i = 0; i < key_.size(); ++i) out[i] = in[i] ^ key_[i];
}

void XorCipher::decrypt_block(std::span<const std::uint8_t> in,
                              std::span<std::uint8_t> out) const {
    encrypt_block(in, out);
}

SubRotCipher::SubRotCipher(const SharedKey& key) {
    if (key.bytes.empty()) throw std::invalid_argument("empty key");
    std::uint64_t state = key_seed(key.bytes);
    std::iota(sbox_.begin(), sbox_.end(), 0);
    for (std::size_t i = sbox_.size() - 1; i > 0; --i) {
        state = splitmix(state);
        std::swap(sbox_[i], sbox_[state % (i + 1)]);
    }
    for (std::size_t i = 0; i < sbox_.size(); ++i) inv_sbox_[sbox_[i]] = static_cast<std::uint8_t>(i);
    for (auto& rk : round_keys_) {
        for (auto& b : rk) {
            state = splitmix(state);
            b = static_cast<std::uint8_t>(state & 0xff);
        }
    }
}

void SubRotCipher::encrypt_block(std::span<const std::uint8_t> in,
                                 std::span<std::uint8_t> out) const {
    std::array<std::uint8_t, 8> state{};
    std::copy(in.begin(), in.begin() + 8, state.begin());
    for (const auto& rk : round_keys_) {
        for (std::size_t i = 0; i < 8; ++i) state[i] = sbox_[state[i] ^ rk[i]];
        std::rotate(state.begin(), state.begin() + 1, state.end());
    }
    std::copy(state.begin(), state.end(), out.begin());
}

void SubRotCipher::decrypt_block(std::span<const std::uint8_t> in,
                                 std::span<std::uint8_t> out) const {
    std::array<std::uint8_t, 8> state{};
    std::copy(in.begin(), in.begin() + 8, state.begin());
    for (auto it = round_keys_.rbegin(); it != round_keys_.rend(); ++it) {
        std::rotate(state.begin(), state.end() - 1, state.end());
        for (std::size_t i = 0; i < 8; ++i) state[i] = inv_sbox_[state[i]] ^ (*it)[i];
    }
    std::copy(state.begin(), state.end(), out.begin());
}

std::unique_ptr<BlockCipher> make_default_cipher(const SharedKey& key) {
    return std::make_unique<SubRotCipher>(key);
}

Bytes compute_mic(std::span<const std::uint8_t> message, const BlockCipher& cipher) {
    const std::size_t bs = cipher.block_size();
    const std::size_t blocks = std::max<std::size_t>(1, (message.size() + bs - 1) / bs);
    Bytes chain(bs, 0);  // zero IV
    Bytes input(bs, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::fill(input.begin(), input.end(), 0);
        const std::size_t offset = b * bs;
        for (std::size_t i = 0; i < bs && offset + i < message.size(); ++i) {
            input[i] = message[offset + i];
        }
        for (std::size_t i = 0; i < bs; ++i) input[i] ^= chain[i];
        chain = cipher.encrypt(input);
    }
    return chain;
}

namespace {

void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

Bytes encode_prefix(const SecurePacket& packet) {
    Bytes out;
    out.reserve(6 + packet.payload.size() +
                (packet.nonce_block ? packet.nonce_block->size() : 0));
    out.push_back(packet.msg_type);
    put_u16(out, packet.mn_id);
    put_u16(out, static_cast<std::uint16_t>(packet.payload.size()));
    out.insert(out.end(), packet.payload.begin(), packet.payload.end());
    out.push_back(packet.nonce_block ? 1 : 0);
    if (packet.nonce_block) {
        out.insert(out.end(), packet.nonce_block->begin(), packet.nonce_block->end());
    }
    return out;
}

}  // namespace

Bytes encode_packet(const SecurePacket& packet) {
    Bytes out = encode_prefix(packet);
    out.insert(out.end(), packet.mic.begin(), packet.mic.end());
    return out;
}

std::optional<SecurePacket> decode_packet(std::span<const std::uint8_t> bytes,
                                          std::size_t block_size) {
    if (bytes.size() < 6 + block_size) return std::nullopt;
    SecurePacket packet;
    packet.msg_type = bytes[0];
    packet.mn_id = static_cast<std::uint16_t>(bytes[1] << 8 | bytes[2]);
    const std::size_t payload_len = static_cast<std::size_t>(bytes[3]) << 8 | bytes[4];
    std::size_t pos = 5;
    if (bytes.size() < pos + payload_len + 1 + block_size) return std::nullopt;
    packet.payload.assign(bytes.begin() + pos, bytes.begin() + pos + payload_len);
    pos += payload_len;
    const std::uint8_t flag = bytes[pos++];
    if (flag > 1) return std::nullopt;
    if (flag == 1) {
        if (bytes.size() < pos + 2 * block_size) return std::nullopt;
        packet.nonce_block = Bytes(bytes.begin() + pos, bytes.begin() + pos + block_size);
        pos += block_size;
    }
    if (bytes.size() != pos + block_size) return std::nullopt;
    packet.mic.assign(bytes.begin() + pos, bytes.end());
    return packet;
}

SecurePacket seal(MsgType type, std::uint16_t mn_id, Bytes payload,
                  const std::optional<Bytes>& nonce_plain,
                  const BlockCipher& cipher) {
    if (payload.size() > 0xffff) throw std::invalid_argument("payload too large");
    SecurePacket packet;
    packet.msg_type = static_cast<std::uint8_t>(type);
    packet.mn_id = mn_id;
    packet.payload = std::move(payload);
    if (nonce_plain) {
        if (nonce_plain->size() != cipher.block_size()) {
            throw std::invalid_argument("nonce must be one cipher block");
        }
        packet.nonce_block = cipher.encrypt(*nonce_plain);
    }
    packet.mic = compute_mic(encode_prefix(packet), cipher);
    return packet;
}

const char* to_string(VerifyOutcome outcome) {
    switch (outcome) {
        case VerifyOutcome::Accepted: return "Accepted";
        case VerifyOutcome::Tampered: return "Tampered";
        case VerifyOutcome::Replayed: return "Replayed";
    }
    return "?";
}

void NonceState::issue(const Bytes& nonce) { outstanding_ = nonce; }

bool NonceState::outstanding_is(const Bytes& nonce) const {
    return outstanding_ && *outstanding_ == nonce;
}

bool NonceState::consumed(const Bytes& nonce) const {
    return used_.count(nonce) > 0;
}

void NonceState::consume(const Bytes& nonce) {
    used_.insert(nonce);
    if (outstanding_ && *outstanding_ == nonce) outstanding_.reset();
    // Bounded window: drop oldest-by-value entries once large. Values are
    // random blocks, so pruning by order of the set is as good as any.
    while (used_.size() > 1024) used_.erase(used_.begin());
}

bool mic_valid(const SecurePacket& packet, const BlockCipher& cipher) {
    return packet.mic == compute_mic(encode_prefix(packet), cipher);
}

VerifyOutcome verify(const SecurePacket& packet, const BlockCipher& cipher,
                     NonceState& nonces) {
    if (!mic_valid(packet, cipher)) {
        return VerifyOutcome::Tampered;
    }
    if (packet.nonce_block) {
        const Bytes nonce = cipher.decrypt(*packet.nonce_block);
        if (nonces.consumed(nonce) || !nonces.outstanding_is(nonce)) {
            return VerifyOutcome::Replayed;
        }
        nonces.consume(nonce);
    }
    return VerifyOutcome::Accepted;
}

VerifyOutcome verify_bytes(std::span<const std::uint8_t> bytes,
                           const BlockCipher& cipher, NonceState& nonces) {
    const auto packet = decode_packet(bytes, cipher.block_size());
    if (!packet) return VerifyOutcome::Tampered;
    return verify(*packet, cipher, nonces);
}

SecurePacket make_ack(std::uint16_t mn_id, NonceState& nonces, Rng& rng,
                      const BlockCipher& cipher) {
    const std::size_t bs = cipher.block_size();
    Bytes nonce(bs);
    do {
        for (auto& b : nonce) b = rng.byte();
    } while (nonces.outstanding_is(nonce) || nonces.consumed(nonce));
    nonces.issue(nonce);

    // (ACK marker || nonce) under CBC with zero IV; two ciphertext blocks.
    Bytes plain(kAckMarker.begin(), kAckMarker.end());
    plain.resize(bs, 0);
    Bytes c1 = cipher.encrypt(plain);
    Bytes second(bs);
    for (std::size_t i = 0; i < bs; ++i) second[i] = nonce[i] ^ c1[i];
    Bytes c2 = cipher.encrypt(second);

    Bytes payload;
    payload.insert(payload.end(), c1.begin(), c1.end());
    payload.insert(payload.end(), c2.begin(), c2.end());
    return seal(MsgType::Ack, mn_id, std::move(payload), std::nullopt, cipher);
}

std::optional<Bytes> open_ack(const SecurePacket& packet, const BlockCipher& cipher) {
    const std::size_t bs = cipher.block_size();
    if (packet.msg_type != static_cast<std::uint8_t>(MsgType::Ack) ||
        packet.payload.size() != 2 * bs) {
        return std::nullopt;
    }
    const Bytes c1(packet.payload.begin(), packet.payload.begin() + bs);
    const Bytes c2(packet.payload.begin() + bs, packet.payload.end());
    const Bytes marker = cipher.decrypt(c1);
    if (!std::equal(kAckMarker.begin(), kAckMarker.end(), marker.begin())) {
        return std::nullopt;
    }
    Bytes nonce = cipher.decrypt(c2);
    for (std::size_t i = 0; i < bs; ++i) nonce[i] ^= c1[i];
    return nonce;
}

std::vector<TranscriptEntry> run_handshake(std::uint16_t mn_id,
                                           const SharedKey& key,
                                           const std::vector<Bytes>& messages,
                                           Rng& rng,
                                           const HandshakeAttack& attack) {
    const auto cipher = make_default_cipher(key);
    // A NonceState belongs to the party that issued the nonce and awaits its
    // echo; here only the server issues them.
    NonceState server_nonces;
    std::vector<TranscriptEntry> transcript;
    int wire_index = 0;

    enum class NonceRole { Echo, Issue };

    // Encodes, optionally attacks, and verifies a packet on the receiving
    // side. A nonce in Echo role must match the outstanding one; a nonce in
    // Issue role is new material, so only the MIC is checked.
    auto deliver = [&](const std::string& direction, const std::string& label,
                       const SecurePacket& packet, NonceRole role,
                       SecurePacket& received) {
        ++wire_index;
        Bytes wire = encode_packet(packet);
        if (attack.tamper && attack.tamper->first == wire_index) {
            const int bit = attack.tamper->second;
            wire[static_cast<std::size_t>(bit) / 8] ^=
                static_cast<std::uint8_t>(1u << (bit % 8));
        }
        VerifyOutcome outcome;
        const auto decoded = decode_packet(wire, cipher->block_size());
        if (!decoded) {
            outcome = VerifyOutcome::Tampered;
        } else if (role == NonceRole::Issue) {
            outcome = mic_valid(*decoded, *cipher) ? VerifyOutcome::Accepted
                                                   : VerifyOutcome::Tampered;
        } else {
            outcome = verify(*decoded, *cipher, server_nonces);
        }
        if (decoded) received = *decoded;
        transcript.push_back({direction, label, std::move(wire), outcome});
        return outcome == VerifyOutcome::Accepted;
    };

    const Bytes msg1 = messages.size() > 0 ? messages[0] : Bytes{'r', '1'};
    const Bytes msg2 = messages.size() > 1 ? messages[1] : Bytes{'r', '2'};
    const Bytes server_msg = messages.size() > 2 ? messages[2] : Bytes{'s', '1'};

    // Node-initiated exchange: report, ack+nonce, nonce-bound report, ack.
    SecurePacket received;
    if (!deliver("MN->MPPS", "message 1 (report + mic)",
                 seal(MsgType::Report, mn_id, msg1, std::nullopt, *cipher),
                 NonceRole::Echo, received)) {
        return transcript;
    }

    SecurePacket ack1 = make_ack(mn_id, server_nonces, rng, *cipher);
    if (!deliver("MPPS->MN", "message 2 (ack + nonce)", ack1, NonceRole::Issue,
                 received)) {
        return transcript;
    }
    const auto rnd1 = open_ack(received, *cipher);
    if (!rnd1) return transcript;

    const SecurePacket report2 = seal(MsgType::Report, mn_id, msg2, rnd1, *cipher);
    if (!deliver("MN->MPPS", "message 3 (report + nonce + mic)", report2,
                 NonceRole::Echo, received)) {
        return transcript;
    }

    SecurePacket ack2 = make_ack(mn_id, server_nonces, rng, *cipher);
    if (!deliver("MPPS->MN", "message 4 (ack + nonce)", ack2, NonceRole::Issue,
                 received)) {
        return transcript;
    }

    // Server-initiated pair: the message carries a fresh nonce the node must
    // echo in its acknowledgement.
    const std::size_t bs = cipher->block_size();
    Bytes server_nonce(bs);
    for (auto& b : server_nonce) b = rng.byte();
    server_nonces.issue(server_nonce);
    if (!deliver("MPPS->MN", "server message (msg + nonce + mic)",
                 seal(MsgType::ServerMsg, mn_id, server_msg, server_nonce, *cipher),
                 NonceRole::Issue, received)) {
        return transcript;
    }
    const Bytes echoed = cipher->decrypt(*received.nonce_block);
    if (!deliver("MN->MPPS", "node ack (echoed nonce)",
                 seal(MsgType::Ack, mn_id, Bytes{'a', 'k'}, echoed, *cipher),
                 NonceRole::Echo, received)) {
        return transcript;
    }

    if (attack.replay_report) {
        SecurePacket dummy;
        deliver("MN->MPPS", "replayed message 3", report2, NonceRole::Echo, dummy);
    }
    return transcript;
}

}  // namespace ltdps
