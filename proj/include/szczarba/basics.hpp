#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sz {

// All chain coefficients are exact arbitrary-precision integers.
using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct InvalidSplit : Error { using Error::Error; };
struct Unbounded : Error { using Error::Error; };
struct NotReduced : Error { using Error::Error; };
struct NotOneReduced : Error { using Error::Error; };
struct NotInSnp : Error { using Error::Error; };
struct InvalidCase : Error { using Error::Error; };
struct InfiniteDegree : Error { using Error::Error; };
struct NotChainMap : Error { using Error::Error; };
struct NonField : Error { using Error::Error; };

inline Int sign_pow(long e) { return (e % 2 == 0) ? Int(1) : Int(-1); }
inline int parity(long e) { return static_cast<int>(((e % 2) + 2) % 2); }

} // namespace sz
