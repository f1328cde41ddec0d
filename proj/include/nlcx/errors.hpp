#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nlcx {

/// Raised when a requested computation exceeds one of the configurable cost
/// guards. Carries the name of the guard, the requested size and the limit so
/// that callers (the CLI in particular) can report a structured error.
class GuardExceeded : public std::runtime_error {
public:
    GuardExceeded(std::string guard, long double requested, long double limit)
        : std::runtime_error(format(guard, requested, limit)),
          guard_(std::move(guard)), requested_(requested), limit_(limit) {}

    const std::string& guard() const noexcept { return guard_; }
    long double requested() const noexcept { return requested_; }
    long double limit() const noexcept { return limit_; }

private:
    static std::string format(const std::string& guard, long double requested, long double limit) {
        auto num = [](long double v) {
            if (v < 1e18L) return std::to_string(static_cast<unsigned long long>(v));
            return std::to_string(static_cast<double>(v));
        };
        return "cost guard '" + guard + "' exceeded: requested " + num(requested) + ", limit " + num(limit);
    }

    std::string guard_;
    long double requested_;
    long double limit_;
};

}  // namespace nlcx
