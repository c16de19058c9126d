#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/math/constants/constants.hpp>

#include <stdexcept>
#include <string>

namespace ssfa {

// Construction-time arithmetic runs at 100 decimal digits.  The moment
// systems are Hankel-like and lose digits quickly with the order, so the
// headroom over the 50-digit minimum is deliberate.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>,
    boost::multiprecision::et_off>;
using Complex = boost::multiprecision::cpp_complex<100>;
using Rational = boost::multiprecision::cpp_rational;

inline Real to_real(const Rational& q) {
    return Real(boost::multiprecision::cpp_int(numerator(q)).str()) /
           Real(boost::multiprecision::cpp_int(denominator(q)).str());
}

inline Real real_pi() {
    return boost::math::constants::pi<Real>();
}

// A parameter is treated as real when its imaginary part is below this
// scale relative to 1+|Re|.
inline bool effectively_real(const Complex& z) {
    return abs(z.imag()) < Real("1e-20") * (1 + abs(z.real()));
}

struct NoSolutionError : std::runtime_error {
    explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateNodesError : std::runtime_error {
    explicit DegenerateNodesError(const std::string& what) : std::runtime_error(what) {}
};

struct OrderUnavailableError : std::runtime_error {
    explicit OrderUnavailableError(const std::string& what) : std::runtime_error(what) {}
};

struct DepthUnavailableError : std::runtime_error {
    explicit DepthUnavailableError(const std::string& what) : std::runtime_error(what) {}
};

struct BranchPointError : std::runtime_error {
    explicit BranchPointError(const std::string& what) : std::runtime_error(what) {}
};

struct BetaDegenerateError : std::runtime_error {
    explicit BetaDegenerateError(const std::string& what) : std::runtime_error(what) {}
};

struct OmegaUnavailableError : std::runtime_error {
    explicit OmegaUnavailableError(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientOrdersError : std::runtime_error {
    explicit InsufficientOrdersError(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ssfa
