#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ltdps/random.hpp"

namespace ltdps {

using Bytes = std::vector<std::uint8_t>;

/// Pre-shared secret, one per mobile node.
struct SharedKey {
    Bytes bytes;

    static SharedKey from_hex(const std::string& hex);
};

/// Key-bound block cipher. decrypt(encrypt(b)) == b for every block. The
/// construction below only needs the permutation property, so the cipher is
/// pluggable; a real 3DES can slot in behind this interface.
class BlockCipher {
public:
    virtual ~BlockCipher() = default;
    virtual std::size_t block_size() const = 0;
    virtual void encrypt_block(std::span<const std::uint8_t> in,
                               std::span<std::uint8_t> out) const = 0;
    virtual void decrypt_block(std::span<const std::uint8_t> in,
                               std::span<std::uint8_t> out) const = 0;

    Bytes encrypt(std::span<const std::uint8_t> block) const;
    Bytes decrypt(std::span<const std::uint8_t> block) const;
};

/// One-time-pad-per-block test cipher (block XOR key). Linear, so chained
/// residues can be derived by hand in tests.
class XorCipher : public BlockCipher {
public:
    explicit XorCipher(const SharedKey& key);
    std::size_t block_size() const override { return 8; }
    void encrypt_block(std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override;
    void decrypt_block(std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override;

private:
    std::array<std::uint8_t, 8> key_;
};

/// Default non-linear test cipher: four rounds of key-derived byte
/// substitution, byte rotation and round-key mixing over an 8-byte block.
/// Deterministic per key and bijective, so any input difference changes the
/// output block.
class SubRotCipher : public BlockCipher {
public:
    explicit SubRotCipher(const SharedKey& key);
    std::size_t block_size() const override { return 8; }
    void encrypt_block(std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override;
    void decrypt_block(std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override;

private:
    std::array<std::uint8_t, 256> sbox_;
    std::array<std::uint8_t, 256> inv_sbox_;
    std::array<std::array<std::uint8_t, 8>, 4> round_keys_;
};

std::unique_ptr<BlockCipher> make_default_cipher(const SharedKey& key);

/// CBC residue over the zero-padded message with a zero IV: the last
/// ciphertext block. An empty message authenticates as one zero block.
Bytes compute_mic(std::span<const std::uint8_t> message, const BlockCipher& cipher);

enum class MsgType : std::uint8_t {
    Report = 0x01,
    Ack = 0x02,
    ServerMsg = 0x03,
};

/// Wire layout, byte exact:
///   [msg_type:1][mn_id:2 BE][payload_len:2 BE][payload]
///   [nonce_flag:1][nonce_block if flag==1][mic:block_size]
/// The payload travels in clear; the MIC covers everything before it.
struct SecurePacket {
    std::uint8_t msg_type = 0;
    std::uint16_t mn_id = 0;
    Bytes payload;
    std::optional<Bytes> nonce_block;  // encrypted nonce
    Bytes mic;

    bool operator==(const SecurePacket&) const = default;
};

Bytes encode_packet(const SecurePacket& packet);
std::optional<SecurePacket> decode_packet(std::span<const std::uint8_t> bytes,
                                          std::size_t block_size);

/// Builds a packet: encrypts the nonce (when given as plaintext), then
/// computes the MIC over the encoded prefix.
SecurePacket seal(MsgType type, std::uint16_t mn_id, Bytes payload,
                  const std::optional<Bytes>& nonce_plain,
                  const BlockCipher& cipher);

enum class VerifyOutcome { Accepted, Tampered, Replayed };

const char* to_string(VerifyOutcome outcome);

/// Verifier-side nonce bookkeeping for one peer: the nonce most recently
/// issued to it and a bounded window of consumed values. A nonce verifies
/// at most once.
class NonceState {
public:
    void issue(const Bytes& nonce);
    bool outstanding_is(const Bytes& nonce) const;
    bool consumed(const Bytes& nonce) const;
    void consume(const Bytes& nonce);
    const std::optional<Bytes>& outstanding() const { return outstanding_; }

private:
    std::optional<Bytes> outstanding_;
    std::set<Bytes> used_;
};

/// Integrity check alone: the MIC recomputed over the received fields
/// matches the carried one.
bool mic_valid(const SecurePacket& packet, const BlockCipher& cipher);

/// MIC check first (mismatch is Tampered), then nonce freshness (anything
/// but the outstanding, unconsumed nonce is Replayed). Accepting consumes
/// the nonce.
VerifyOutcome verify(const SecurePacket& packet, const BlockCipher& cipher,
                     NonceState& nonces);

/// Decode-then-verify for raw bytes; undecodable input counts as Tampered.
VerifyOutcome verify_bytes(std::span<const std::uint8_t> bytes,
                           const BlockCipher& cipher, NonceState& nonces);

/// Encrypted acknowledgement carrying a fresh nonce for the peer's next
/// message. The payload is the CBC encryption of [ACK marker block][nonce];
/// the issued nonce is recorded as outstanding.
SecurePacket make_ack(std::uint16_t mn_id, NonceState& nonces, Rng& rng,
                      const BlockCipher& cipher);

/// Receiver-side ACK check: decrypt, verify the marker, return the nonce.
std::optional<Bytes> open_ack(const SecurePacket& packet, const BlockCipher& cipher);

struct TranscriptEntry {
    std::string direction;  // "MN->MPPS" or "MPPS->MN"
    std::string label;
    Bytes wire;
    VerifyOutcome outcome;
};

/// Adversary hooks for the handshake driver: flip one bit of the n-th wire
/// message, or replay the second report after the exchange completes.
struct HandshakeAttack {
    std::optional<std::pair<int, int>> tamper;  // (message index 1-based, bit)
    bool replay_report = false;
};

/// Runs the node-initiated four-message exchange (report, ack, nonce-bound
/// report, ack) followed by the server-initiated pair, over an in-memory
/// byte channel. Each entry records the wire bytes and the receiver's
/// verdict. A Tampered or Replayed verdict aborts the rest of the exchange.
std::vector<TranscriptEntry> run_handshake(std::uint16_t mn_id,
                                           const SharedKey& key,
                                           const std::vector<Bytes>& messages,
                                           Rng& rng,
                                           const HandshakeAttack& attack = {});

}  // namespace ltdps
