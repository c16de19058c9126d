#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ssfa {

// Truncated power-series algebra over an arbitrary field T (Real, Complex
// or Rational).  A series is a coefficient vector c[0..k]; every operation
// truncates at the order of its shortest input, nothing is zero-padded.
template <class T>
struct Series {
    std::vector<T> c;

    Series() = default;
    explicit Series(std::vector<T> coeffs) : c(std::move(coeffs)) {}
    Series(std::size_t order, const T& fill) : c(order + 1, fill) {}

    std::size_t order() const { return c.empty() ? 0 : c.size() - 1; }
    const T& operator[](std::size_t i) const { return c[i]; }
    T& operator[](std::size_t i) { return c[i]; }

    Series truncated(std::size_t k) const {
        Series out = *this;
        if (out.c.size() > k + 1) out.c.resize(k + 1);
        return out;
    }
};

template <class T>
Series<T> operator+(const Series<T>& a, const Series<T>& b) {
    std::size_t k = std::min(a.c.size(), b.c.size());
    Series<T> out;
    out.c.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
}

template <class T>
Series<T> operator-(const Series<T>& a, const Series<T>& b) {
    std::size_t k = std::min(a.c.size(), b.c.size());
    Series<T> out;
    out.c.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.c[i] = a.c[i] - b.c[i];
    return out;
}

template <class T>
Series<T> operator*(const T& s, const Series<T>& a) {
    Series<T> out = a;
    for (auto& x : out.c) x = s * x;
    return out;
}

template <class T>
Series<T> mul(const Series<T>& a, const Series<T>& b) {
    std::size_t k = std::min(a.order(), b.order());
    Series<T> out(k, T(0));
    for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = 0; i + j <= k; ++j)
            out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

// Reciprocal of a unit series (a[0] != 0).
template <class T>
Series<T> reciprocal(const Series<T>& a) {
    if (a.c.empty() || a.c[0] == T(0))
        throw std::domain_error("series reciprocal: vanishing constant term");
    std::size_t k = a.order();
    Series<T> out(k, T(0));
    out.c[0] = T(1) / a.c[0];
    for (std::size_t n = 1; n <= k; ++n) {
        T s(0);
        for (std::size_t j = 1; j <= n; ++j) s += a.c[j] * out.c[n - j];
        out.c[n] = -s / a.c[0];
    }
    return out;
}

// log of a series with a[0] == 1; log_trunc(a)[0] == 0.
template <class T>
Series<T> log_unit(const Series<T>& a) {
    if (a.c.empty() || a.c[0] != T(1))
        throw std::domain_error("series log: constant term must be 1");
    std::size_t k = a.order();
    Series<T> out(k, T(0));
    // n*l_n = n*a_n - sum_{j=1}^{n-1} j*l_j*a_{n-j}
    for (std::size_t n = 1; n <= k; ++n) {
        T s = T(int(n)) * a.c[n];
        for (std::size_t j = 1; j < n; ++j) s -= T(int(j)) * out.c[j] * a.c[n - j];
        out.c[n] = s / T(int(n));
    }
    return out;
}

// exp of a series with a[0] == 0.
template <class T>
Series<T> exp_zero(const Series<T>& a) {
    if (a.c.empty() || a.c[0] != T(0))
        throw std::domain_error("series exp: constant term must be 0");
    std::size_t k = a.order();
    Series<T> out(k, T(0));
    out.c[0] = T(1);
    for (std::size_t n = 1; n <= k; ++n) {
        T s(0);
        for (std::size_t j = 1; j <= n; ++j) s += T(int(j)) * a.c[j] * out.c[n - j];
        out.c[n] = s / T(int(n));
    }
    return out;
}

// (a)^r for a unit series (a[0] == 1) and an arbitrary exponent r in T.
template <class T>
Series<T> pow_unit(const Series<T>& a, const T& r) {
    if (a.c.empty() || a.c[0] != T(1))
        throw std::domain_error("series pow: constant term must be 1");
    std::size_t k = a.order();
    Series<T> out(k, T(0));
    out.c[0] = T(1);
    // n*h_n = sum_{j=1}^{n} ((r+1)j - n) a_j h_{n-j}
    for (std::size_t n = 1; n <= k; ++n) {
        T s(0);
        for (std::size_t j = 1; j <= n; ++j)
            s += ((r + T(1)) * T(int(j)) - T(int(n))) * a.c[j] * out.c[n - j];
        out.c[n] = s / T(int(n));
    }
    return out;
}

// Binomial series (1 + x)^r truncated at order k.
template <class T>
Series<T> binomial_series(const T& r, std::size_t k) {
    Series<T> out(k, T(0));
    out.c[0] = T(1);
    for (std::size_t n = 1; n <= k; ++n)
        out.c[n] = out.c[n - 1] * (r - T(int(n) - 1)) / T(int(n));
    return out;
}

template <class T>
T evaluate(const Series<T>& a, const T& x) {
    T acc(0);
    for (std::size_t i = a.c.size(); i-- > 0;) acc = acc * x + a.c[i];
    return acc;
}

}  // namespace ssfa
