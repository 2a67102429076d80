#include "zk/ffield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "zk/rational.hpp"

namespace zk {

std::uint64_t pow_checked(std::uint64_t p, unsigned f, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < f; ++i) {
        if (r > cap / p) return 0;
        r *= p;
    }
    return r;
}

namespace {

// Arithmetic on coefficient vectors over F_p, dense, degree-indexed.
using Coeffs = std::vector<std::uint64_t>;

// Remainder of a (degree < 2f-1) modulo the monic modulus m (degree f).
void reduce_mod(Coeffs& a, const Coeffs& m, std::uint64_t p) {
    const std::size_t f = m.size() - 1;
    for (std::size_t i = a.size(); i-- > f;) {
        std::uint64_t c = a[i];
        if (c == 0) continue;
        a[i] = 0;
        for (std::size_t j = 0; j < f; ++j) {
            std::uint64_t sub = (c * m[j]) % p;
            std::size_t k = i - f + j;
            a[k] = (a[k] + p - sub) % p;
        }
    }
    a.resize(f);
}

// Polynomial remainder of a mod b over F_p (b nonzero, any leading coeff).
Coeffs poly_rem(Coeffs a, const Coeffs& b, std::uint64_t p) {
    auto deg = [](const Coeffs& v) {
        for (std::size_t i = v.size(); i-- > 0;)
            if (v[i] != 0) return static_cast<long>(i);
        return -1L;
    };
    long db = deg(b);
    // inverse of leading coefficient of b mod p
    std::uint64_t lb = b[static_cast<std::size_t>(db)];
    std::uint64_t lbinv = 1, base = lb, e = p - 2;
    while (e) {
        if (e & 1) lbinv = (lbinv * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    long da = deg(a);
    while (da >= db) {
        std::uint64_t c = (a[static_cast<std::size_t>(da)] * lbinv) % p;
        for (long j = 0; j <= db; ++j) {
            std::uint64_t sub = (c * b[static_cast<std::size_t>(j)]) % p;
            auto k = static_cast<std::size_t>(da - db + j);
            a[k] = (a[k] + p - sub) % p;
        }
        da = deg(a);
    }
    return a;
}

bool is_zero_poly(const Coeffs& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint64_t c) { return c == 0; });
}

// Trial factor search: no monic divisor of degree 1..f/2.
bool is_irreducible(const Coeffs& cand, std::uint64_t p, unsigned f) {
    for (unsigned d = 1; 2 * d <= f; ++d) {
        std::uint64_t nd = pow_checked(p, d, ~0ull);
        for (std::uint64_t k = 0; k < nd; ++k) {
            Coeffs div(d + 1, 0);
            std::uint64_t t = k;
            for (unsigned i = 0; i < d; ++i) {
                div[i] = t % p;
                t /= p;
            }
            div[d] = 1;
            if (is_zero_poly(poly_rem(cand, div, p))) return false;
        }
    }
    return true;
}

}  // namespace

FqField::FqField(std::uint64_t p, unsigned f) : p_(p), f_(f) {
    if (f == 0) throw Error(ErrKind::BudgetExceeded, "extension degree must be positive");
    if (!is_prime_u64(p)) throw Error(ErrKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
    q_ = pow_checked(p, f, kSizeCap);
    if (q_ == 0)
        throw Error(ErrKind::BudgetExceeded,
                    "field size " + std::to_string(p) + "^" + std::to_string(f) + " exceeds cap 2^63");

    modulus_.assign(f + 1, 0);
    modulus_[f] = 1;
    if (f > 1) {
        bool found = false;
        std::uint64_t nc = pow_checked(p, f, ~0ull);
        for (std::uint64_t k = 0; k < nc && !found; ++k) {
            std::uint64_t t = k;
            for (unsigned i = 0; i < f; ++i) {
                modulus_[i] = t % p;
                t /= p;
            }
            found = is_irreducible(modulus_, p, f);
        }
        if (!found) throw Error(ErrKind::NotPrime, "no irreducible modulus found");  // unreachable for prime p
    }

}

void FqField::decode(std::uint64_t idx, std::uint64_t* c) const {
    for (unsigned i = 0; i < f_; ++i) {
        c[i] = idx % p_;
        idx /= p_;
    }
}

std::uint64_t FqField::encode(const std::uint64_t* c) const {
    std::uint64_t idx = 0;
    for (unsigned i = f_; i-- > 0;) idx = idx * p_ + c[i];
    return idx;
}

FqElem FqField::from_int(long long c) const {
    long long r = c % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return {static_cast<std::uint64_t>(r)};
}

FqElem FqField::from_coeffs(const std::vector<std::uint64_t>& coeffs) const {
    std::uint64_t idx = 0;
    for (unsigned i = f_; i-- > 0;) idx = idx * p_ + (i < coeffs.size() ? coeffs[i] % p_ : 0);
    return {idx};
}

std::vector<std::uint64_t> FqField::coeffs(FqElem a) const {
    std::vector<std::uint64_t> c(f_);
    decode(a.idx, c.data());
    return c;
}

FqElem FqField::add(FqElem a, FqElem b) const {
    if (f_ == 1) return {(a.idx + b.idx) % p_};
    if (table_ready_.load(std::memory_order_acquire)) {
        if (a.idx == 0) return b;
        if (b.idx == 0) return a;
        std::uint64_t i = log_table_[a.idx], j = log_table_[b.idx];
        std::uint64_t d = j >= i ? j - i : j + (q_ - 1) - i;
        std::uint32_t z = zech_table_[d];
        if (z == kZechZero) return {0};
        std::uint64_t t = i + z;
        if (t >= q_ - 1) t -= q_ - 1;
        return {exp_table_[t]};
    }
    std::uint64_t ca[64], cb[64];
    decode(a.idx, ca);
    decode(b.idx, cb);
    for (unsigned i = 0; i < f_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
    return {encode(ca)};
}

FqElem FqField::sub(FqElem a, FqElem b) const {
    if (f_ == 1) return {(a.idx + p_ - b.idx) % p_};
    if (table_ready_.load(std::memory_order_acquire)) return add(a, neg(b));
    std::uint64_t ca[64], cb[64];
    decode(a.idx, ca);
    decode(b.idx, cb);
    for (unsigned i = 0; i < f_; ++i) ca[i] = (ca[i] + p_ - cb[i]) % p_;
    return {encode(ca)};
}

FqElem FqField::neg(FqElem a) const {
    if (table_ready_.load(std::memory_order_acquire)) {
        if (a.idx == 0 || p_ == 2) return a;
        std::uint64_t t = log_table_[a.idx] + neg_shift_;
        if (t >= q_ - 1) t -= q_ - 1;
        return {exp_table_[t]};
    }
    if (f_ == 1) return {a.idx == 0 ? 0 : p_ - a.idx};
    std::uint64_t ca[64];
    decode(a.idx, ca);
    for (unsigned i = 0; i < f_; ++i) ca[i] = ca[i] == 0 ? 0 : p_ - ca[i];
    return {encode(ca)};
}

std::uint64_t FqField::mul_raw(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t ca[64], cb[64];
    decode(a, ca);
    decode(b, cb);
    Coeffs prod(2 * f_ - 1, 0);
    for (unsigned i = 0; i < f_; ++i) {
        if (ca[i] == 0) continue;
        for (unsigned j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    }
    reduce_mod(prod, modulus_, p_);
    return encode(prod.data());
}

FqElem FqField::mul(FqElem a, FqElem b) const {
    if (a.idx == 0 || b.idx == 0) return {0};
    if (a.idx == 1) return b;
    if (b.idx == 1) return a;
    if (f_ == 1)
        return {static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.idx) * b.idx) % p_)};
    if (table_ready_.load(std::memory_order_acquire)) {
        std::uint64_t t = log_table_[a.idx] + log_table_[b.idx];
        if (t >= q_ - 1) t -= q_ - 1;
        return {exp_table_[t]};
    }
    return {mul_raw(a.idx, b.idx)};
}

FqElem FqField::pow(FqElem a, std::uint64_t e) const {
    FqElem r = one(), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FqElem FqField::inv(FqElem a) const {
    if (a.idx == 0) throw Error(ErrKind::DivisionByZero, "inverse of zero");
    if (f_ == 1) {
        // Fermat in the prime field
        unsigned __int128 r = 1, base = a.idx;
        std::uint64_t e = p_ - 2;
        while (e) {
            if (e & 1) r = (r * base) % p_;
            base = (base * base) % p_;
            e >>= 1;
        }
        return {static_cast<std::uint64_t>(r)};
    }
    return pow(a, q_ - 2);
}

void FqField::ensure_mul_table() const {
    if (f_ <= 1 || q_ > kTableCap) return;
    if (table_ready_.load(std::memory_order_acquire)) return;
    std::lock_guard<std::mutex> lock(table_mutex_);
    if (table_ready_.load(std::memory_order_relaxed)) return;

    // prime factors of q - 1 for the generator order test
    std::vector<std::uint64_t> primes;
    std::uint64_t n = q_ - 1;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            if (primes.empty() || primes.back() != d) primes.push_back(d);
            n /= d;
        }
    if (n > 1) primes.push_back(n);

    std::uint64_t gen = 0;
    for (std::uint64_t cand = 2; cand < q_; ++cand) {
        bool primitive = true;
        for (std::uint64_t ell : primes) {
            if (pow(FqElem{cand}, (q_ - 1) / ell).idx == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = cand;
            break;
        }
    }

    exp_table_.assign(q_ - 1, 0);
    log_table_.assign(q_, 0);
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
        exp_table_[i] = static_cast<std::uint32_t>(acc);
        log_table_[acc] = static_cast<std::uint32_t>(i);
        acc = mul_raw(acc, gen);
    }
    neg_shift_ = p_ == 2 ? 0 : (q_ - 1) / 2;
    // Zech logarithms: zech[i] = log(1 + g^i), sentinel when 1 + g^i = 0
    zech_table_.assign(q_ - 1, kZechZero);
    std::uint64_t one_c[64], sum_c[64];
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
        decode(exp_table_[i], sum_c);
        decode(1, one_c);
        for (unsigned k = 0; k < f_; ++k) sum_c[k] = (sum_c[k] + one_c[k]) % p_;
        std::uint64_t s = encode(sum_c);
        zech_table_[i] = s == 0 ? kZechZero : log_table_[s];
    }
    table_ready_.store(true, std::memory_order_release);
}

const FqField& make_field(std::uint64_t p, unsigned f) {
    static std::mutex registry_mutex;
    static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<FqField>> registry;
    {
        std::lock_guard<std::mutex> lock(registry_mutex);
        auto it = registry.find({p, f});
        if (it != registry.end()) return *it->second;
    }
    auto field = std::make_unique<FqField>(p, f);  // may throw; built outside the lock
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto [it, fresh] = registry.try_emplace({p, f}, std::move(field));
    return *it->second;
}

}  // namespace zk
