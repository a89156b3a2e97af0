#pragma once
// Shared error types, budgets, hashing and small utilities.

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace apoly {

struct ApolyError : std::runtime_error {
    explicit ApolyError(const std::string& what) : std::runtime_error(what) {}
};

// Input / parsing errors (CLI exit code 2).
struct MalformedCode : ApolyError { using ApolyError::ApolyError; };
struct Unrealizable : ApolyError { using ApolyError::ApolyError; };
struct LinkNotKnot : ApolyError { using ApolyError::ApolyError; };
struct InconsistentArcs : ApolyError { using ApolyError::ApolyError; };
struct NonCoprime : ApolyError { using ApolyError::ApolyError; };
struct MeridianNotGenerator : ApolyError { using ApolyError::ApolyError; };

// Algebra errors.
struct NotDivisible : ApolyError { using ApolyError::ApolyError; };
struct ZeroPolynomial : ApolyError { using ApolyError::ApolyError; };
struct BothConstant : ApolyError { using ApolyError::ApolyError; };
struct ZeroOperator : ApolyError { using ApolyError::ApolyError; };

// Pipeline errors.
struct EliminationTimeout : ApolyError { using ApolyError::ApolyError; };  // CLI exit 3
struct EmptyEliminant : ApolyError { using ApolyError::ApolyError; };      // CLI exit 4
struct NonCommutingBoundary : ApolyError { using ApolyError::ApolyError; };
struct LineThroughOrigin : ApolyError { using ApolyError::ApolyError; };

// Wall-clock budget carried through long computations; check() throws when exceeded.
class Budget {
    using clock = std::chrono::steady_clock;
    clock::time_point deadline_;
    bool unlimited_ = false;

public:
    Budget() : unlimited_(true) {}
    explicit Budget(double seconds)
        : deadline_(clock::now() +
                    std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(seconds))),
          unlimited_(seconds <= 0) {}

    bool expired() const { return !unlimited_ && clock::now() > deadline_; }
    void check(const char* where) const {
        if (expired()) throw EliminationTimeout(std::string("budget exceeded in ") + where);
    }
    double remaining_seconds() const {
        if (unlimited_) return 1e18;
        return std::chrono::duration<double>(deadline_ - clock::now()).count();
    }
};

// Long-running exact kernels (resultants, gcds, determinants) honor whatever
// budget is installed on the current thread, so a caller-imposed limit cuts
// into a single oversized computation instead of only between them.
namespace budget_detail {
inline thread_local const Budget* active = nullptr;
}

class BudgetScope {
    const Budget* prev_;

public:
    explicit BudgetScope(const Budget& b) : prev_(budget_detail::active) {
        budget_detail::active = &b;
    }
    ~BudgetScope() { budget_detail::active = prev_; }
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;
};

inline void budget_checkpoint(const char* where) {
    if (budget_detail::active) budget_detail::active->check(where);
}

// FNV-1a 64-bit hash, used for cache keys.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string fnv1a_hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace apoly
