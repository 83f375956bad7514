#pragma once

#include <cstdint>

namespace vanet::crypto {

// Primitive-operation tally. hash_fields, cheby_eval, sym_encrypt/sym_decrypt
// and Rng draws report into whichever OpCounters is active on this thread.
struct OpCounters {
    std::uint64_t hash_ops = 0;
    std::uint64_t cheby_evals = 0;
    std::uint64_t sym_ops = 0;
    std::uint64_t rng_draws = 0;

    OpCounters& operator+=(const OpCounters& other) noexcept {
        hash_ops += other.hash_ops;
        cheby_evals += other.cheby_evals;
        sym_ops += other.sym_ops;
        rng_draws += other.rng_draws;
        return *this;
    }

    friend OpCounters operator+(OpCounters lhs, const OpCounters& rhs) noexcept { return lhs += rhs; }
    friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

// RAII: routes counts to `sink` for the lifetime of the scope, restoring the
// previous sink afterwards. Scopes nest.
class CountingScope {
public:
    explicit CountingScope(OpCounters& sink) noexcept;
    ~CountingScope();

    CountingScope(const CountingScope&) = delete;
    CountingScope& operator=(const CountingScope&) = delete;

private:
    OpCounters* previous_;
};

namespace detail {

OpCounters* active_counters() noexcept;

inline void count_hash() noexcept {
    if (auto* c = active_counters()) ++c->hash_ops;
}
inline void count_cheby() noexcept {
    if (auto* c = active_counters()) ++c->cheby_evals;
}
inline void count_sym() noexcept {
    if (auto* c = active_counters()) ++c->sym_ops;
}
inline void count_rng() noexcept {
    if (auto* c = active_counters()) ++c->rng_draws;
}

}  // namespace detail
}  // namespace vanet::crypto
