#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>

namespace churnnet {

/// Non-negative power total held in 32.96 fixed point.
///
/// Additions and subtractions are exact, so a ledger maintained
/// incrementally always equals the sum recomputed from scratch, whatever
/// order the links were added or removed in. Values from kMax up saturate
/// to kMax; totals must stay below 2^31.
class PowerSum {
public:
    constexpr PowerSum() = default;

    static constexpr double kMax = 0x1p30;

    static PowerSum from_double(double value) {
        PowerSum s;
        s.units_ = static_cast<__int128>(std::nearbyint(std::min(value, kMax) * 0x1p96));
        return s;
    }

    double to_double() const { return static_cast<double>(units_) * 0x1p-96; }

    PowerSum& operator+=(PowerSum o) {
        units_ += o.units_;
        return *this;
    }
    PowerSum& operator-=(PowerSum o) {
        units_ -= o.units_;
        return *this;
    }
    friend PowerSum operator+(PowerSum a, PowerSum b) { return a += b; }
    friend PowerSum operator-(PowerSum a, PowerSum b) { return a -= b; }

    friend bool operator==(PowerSum, PowerSum) = default;
    friend auto operator<=>(PowerSum a, PowerSum b) { return a.units_ <=> b.units_; }

private:
    __int128 units_ = 0;
};

/// Correctly rounded sum of finite doubles, independent of the order they
/// are added in. Keeps non-overlapping partial sums (Shewchuk).
class ExactSum {
public:
    void add(double x) {
        std::size_t k = 0;
        for (std::size_t m = 0; m < count_; ++m) {
            double y = partials_[m];
            if (std::abs(x) < std::abs(y)) {
                std::swap(x, y);
            }
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) {
                partials_[k++] = lo;
            }
            x = hi;
        }
        partials_[k] = x;
        count_ = k + 1;
    }

    double value() const {
        if (count_ == 0) {
            return 0.0;
        }
        std::size_t n = count_ - 1;
        double hi = partials_[n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            lo = y - (hi - x);
            if (lo != 0.0) {
                break;
            }
        }
        // Round half-way cases the way a single exact rounding would.
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) ||
                      (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) {
                hi = x;
            }
        }
        return hi;
    }

private:
    // Non-overlapping doubles span at most 2098 bits.
    std::array<double, 48> partials_{};
    std::size_t count_ = 0;
};

} // namespace churnnet
