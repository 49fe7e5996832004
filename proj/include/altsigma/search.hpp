#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altsigma/factorint.hpp"
#include "altsigma/numeric.hpp"

namespace altsigma {

// Raised for unreadable or mismatched checkpoint files. A bad checkpoint is
// refused, never silently replaced by a fresh scan.
struct checkpoint_error : std::runtime_error {
    explicit checkpoint_error(const std::string& what) : std::runtime_error(what) {}
};

struct ImperfectQuery {
    int m = 1;       // iteration depth >= 1
    uint64_t k = 2;  // multiplier >= 2; hit predicate is k * beta^(m)(n) = n
    uint64_t lo = 1;
    uint64_t hi = 0;
};

struct ScanOptions {
    int threads = 1;
    uint64_t block = uint64_t{1} << 20;
    std::string checkpoint_path;      // empty disables checkpointing
    uint64_t checkpoint_interval = 8; // frontier blocks between saves
};

struct SearchReport {
    std::string kind;  // imperfect | consecutive | lehmer
    int m = 0;
    uint64_t k = 0;
    uint64_t lo = 1;
    uint64_t hi = 0;
    uint64_t high_water = 0;         // scanned through; >= every hit
    std::vector<uint64_t> hits;      // ascending
    double elapsed_sec = 0.0;
    std::string checkpoint_path;
    std::string note;
};

// beta applied m times, by factorization. The chain is descending, so each
// step stays within the sieve's range when one is supplied.
i128 iterate_beta(i128 n, int m, const PrimeSieve* sieve = nullptr);

// All n in [lo, hi] with k * beta^(m)(n) = n. m = 1 streams a segmented
// beta table; m >= 2 walks factorize-chains over the multiples of k.
// Every hit is re-verified from scratch before the report is returned.
SearchReport find_mk_imperfect(const ImperfectQuery& q, const ScanOptions& opt = {});

// All n <= hi with beta(n) = beta(n + 1).
SearchReport find_beta_equal_consecutive(uint64_t hi);

// Composite n <= hi with beta(n) dividing n - 1. Primes always qualify
// trivially and are excluded; n = 4 (beta = 3 divides 3) is excluded by
// convention and documented in the report note.
SearchReport lehmer_analog_scan(uint64_t hi);

struct FermatChain {
    int k = 0;
    i128 n_k = 0;                       // 2^(2^k - 1)
    std::vector<i128> fermat_factors;   // F_m = 2^(2^m) + 1 for m = 1..k-1
    i128 beta_n_k = 0;
    i128 beta_beta_n_k = 0;
    bool product_matches = false;       // beta(n_k) equals the F product
    bool super_imperfect = false;       // 2 beta(beta(n_k)) = n_k
    bool ok = false;
};

// Structural check for n_k = 2^(2^k - 1), 1 <= k <= 6. Passes when the
// factor product matches and n_k is super-imperfect for k <= 5; at k = 6
// passes when super-imperfection fails with 2 beta(beta(n_6)) < n_6.
FermatChain fermat_chain_check(int k);

struct MkCheck {
    int k = 0;
    i128 m_k = 0;       // 2^(2^k - 1) * F_1 ... F_{k-1}
    i128 beta_m_k = 0;
    bool imperfect = false;  // 2 beta(m_k) = m_k
};

// Imperfection check for m_k, 2 <= k <= 5.
MkCheck mk_imperfect_check(int k);

struct Checkpoint {
    int version = 1;
    std::string kind;
    int m = 0;
    uint64_t k = 0;
    uint64_t lo = 1;
    uint64_t high_water = 0;
    std::vector<uint64_t> hits;
};

// Missing file yields nullopt; unreadable or malformed content throws
// checkpoint_error.
std::optional<Checkpoint> load_checkpoint(const std::string& path);

// Write-to-temporary plus rename; readers never observe a partial file.
void save_checkpoint(const std::string& path, const Checkpoint& cp);

}  // namespace altsigma
