#pragma once

// Adaptive second phase. Checkpoint 1 runs FIS1 on the entropy of the
// pre-encrypted image and applies the AES-Chaos module when S-Dive < T1.
// Checkpoint 2 runs FIS2 on NPCR/UACI between the main stream and a
// companion stream (the same plaintext with one flipped bit) and repeats
// XOR-by-hash while D-Dive < T2, at most 15 times.
//
// All functions here work on flattened, block-aligned byte buffers; the
// pipeline pads images before calling in.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chaofuzz/chaos.hpp"
#include "chaofuzz/fis.hpp"
#include "chaofuzz/image.hpp"
#include "chaofuzz/keyschedule.hpp"
#include "chaofuzz/primitives.hpp"

namespace chaofuzz::phase2 {

inline constexpr std::size_t kAesBlockBytes = 16;
inline constexpr std::size_t kHashBlockBytes = 64;
inline constexpr std::uint8_t kMaxXorRounds = 15;
inline constexpr double kDefaultT1 = 0.65;
inline constexpr double kDefaultT2 = 0.45;
inline constexpr double kDefaultSec = 80.0;

/// Blocks are processed in the order of the sort-index permutation seeded by
/// x_aes. The first processed block is whitened with 16 keystream bytes and
/// encrypted under `key`; each later block is whitened after perturbing the
/// map state with x <- frac(x + S/4096), S = byte sum of the previous
/// ciphertext block, and encrypted under that previous ciphertext block.
Bytes aes_chaos_encrypt(std::span<const std::uint8_t> data, const AesKey128& key, double x_aes,
                        const chaos::MapParams& params = {});
Bytes aes_chaos_decrypt(std::span<const std::uint8_t> data, const AesKey128& key, double x_aes,
                        const chaos::MapParams& params = {});

/// c1 = b1 ^ hash, ck = bk ^ c(k-1) over 64-byte blocks.
Bytes xor_by_hash(std::span<const std::uint8_t> data, const Digest512& hash);
Bytes xor_by_hash_inverse(std::span<const std::uint8_t> data, const Digest512& hash);

struct Phase2Config {
    double t1 = kDefaultT1;
    double t2 = kDefaultT2;
    double sec = kDefaultSec;
    std::uint8_t max_xor_rounds = kMaxXorRounds;
    fis::FisConfig fis1 = fis::fis1_default();
    fis::FisConfig fis2 = fis::fis2_default();

    void validate() const;
};

struct Phase2Outcome {
    Bytes cipher;
    Bytes companion_cipher;
    bool aes_flag = false;
    std::uint8_t xor_count = 0;
    double pre_entropy = 0.0;
    double s_dive = 0.0;
    // One entry per checkpoint-2 evaluation: xor_count + 1 entries.
    std::vector<double> d_dive_history;
    std::vector<double> npcr_history;
    std::vector<double> uaci_history;
};

/// `pre` and `companion` are the padded Phase-1 outputs of the plain image
/// and of its one-bit twin; `hash` and `companion_hash` are the SHA-512 of
/// the two plain images.
Phase2Outcome run_phase2(std::span<const std::uint8_t> pre, std::span<const std::uint8_t> companion,
                         const DerivedSeeds& seeds, const Digest512& hash,
                         const Digest512& companion_hash, const Phase2Config& config,
                         const chaos::MapParams& params = {});

}  // namespace chaofuzz::phase2
