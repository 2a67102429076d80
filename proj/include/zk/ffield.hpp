#ifndef ZK_FFIELD_HPP
#define ZK_FFIELD_HPP

#include <atomic>
#include <cstdint>
#include <mutex>
#include <vector>

#include "zk/error.hpp"

namespace zk {

// Element of F_{p^f}. The index encodes the coefficient vector
// (c_0, ..., c_{f-1}) of the residue class mod the field modulus as
// sum c_i p^i, so index order equals lexicographic coefficient order.
struct FqElem {
    std::uint64_t idx = 0;
    friend bool operator==(FqElem a, FqElem b) { return a.idx == b.idx; }
    friend bool operator!=(FqElem a, FqElem b) { return a.idx != b.idx; }
};

// F_{p^f} as F_p[t]/(modulus). The modulus is the first monic irreducible
// polynomial of degree f in lexicographic order of coefficient vectors, so
// construction is deterministic in (p, f). Logically immutable; the optional
// multiplication table is a lazily built cache guarded for concurrent use.
class FqField {
  public:
    // Hard cap on field size; enumeration budgets are enforced separately
    // by the counting routines.
    static constexpr std::uint64_t kSizeCap = 1ull << 63;
    // Fields up to this size may precompute discrete log/exp tables.
    static constexpr std::uint64_t kTableCap = 1u << 16;

    FqField(std::uint64_t p, unsigned f);
    FqField(const FqField&) = delete;
    FqField& operator=(const FqField&) = delete;

    std::uint64_t p() const { return p_; }
    unsigned f() const { return f_; }
    std::uint64_t size() const { return q_; }
    // Monic of degree f: modulus()[i] is the coefficient of t^i, size f+1.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }
    bool is_zero(FqElem a) const { return a.idx == 0; }

    // k-th element in enumeration order, 0 <= k < size().
    FqElem elem_at(std::uint64_t k) const { return {k}; }
    // Integer c embedded via reduction mod p.
    FqElem from_int(long long c) const;
    FqElem from_coeffs(const std::vector<std::uint64_t>& coeffs) const;
    std::vector<std::uint64_t> coeffs(FqElem a) const;

    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const;
    FqElem neg(FqElem a) const;
    FqElem mul(FqElem a, FqElem b) const;
    FqElem inv(FqElem a) const;  // DivisionByZero on 0
    FqElem pow(FqElem a, std::uint64_t e) const;
    FqElem frobenius(FqElem a) const { return pow(a, p_); }

    // Builds log/exp/Zech tables over a multiplicative generator when
    // q <= kTableCap, so add/sub/mul become O(1) lookups; idempotent and
    // safe to call from several threads.
    void ensure_mul_table() const;
    bool has_mul_table() const { return table_ready_.load(std::memory_order_acquire); }

  private:
    std::uint64_t p_;
    unsigned f_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;

    static constexpr std::uint32_t kZechZero = 0xffffffffu;
    mutable std::vector<std::uint32_t> exp_table_, log_table_, zech_table_;
    mutable std::uint64_t neg_shift_ = 0;  // log(-1), 0 in characteristic 2
    mutable std::atomic<bool> table_ready_{false};
    mutable std::mutex table_mutex_;

    void decode(std::uint64_t idx, std::uint64_t* c) const;
    std::uint64_t encode(const std::uint64_t* c) const;
    std::uint64_t mul_raw(std::uint64_t a, std::uint64_t b) const;
};

// The unique deterministic field object for (p, f), owned by a process-wide
// registry so lookup tables amortize across counting calls.
// Errors: NotPrime if p is composite, BudgetExceeded when p^f > 2^63.
const FqField& make_field(std::uint64_t p, unsigned f);

// p^f if it stays within cap, otherwise 0.
std::uint64_t pow_checked(std::uint64_t p, unsigned f, std::uint64_t cap);

}  // namespace zk

#endif
