#pragma once

#include <cstdint>
#include <random>

namespace lfscan {

/// Derive an independent stream seed from (seed, stream) via splitmix64.
/// Capture k of a run seeds its noise from derive_seed(run_seed, k), so a
/// parallel capture order cannot change results.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// Seeded generator with a hand-rolled Box-Muller normal so that sequences
/// are identical across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform(); // [0, 1)
    double normal();  // standard normal

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace lfscan
