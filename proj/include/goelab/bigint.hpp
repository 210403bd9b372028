#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace goelab {

using BigInt = boost::multiprecision::mpz_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace goelab
