#pragma once

namespace kdfkit {

/// Kahan-compensated running sum over any field type with + and -.
template <class T>
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(T start) : sum_(start) {}

    void add(T term)
    {
        const T y = term - carry_;
        const T t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }

    T value() const { return sum_; }

private:
    T sum_{0};
    T carry_{0};
};

} // namespace kdfkit
