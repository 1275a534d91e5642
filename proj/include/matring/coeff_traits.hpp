#ifndef MATRING_COEFF_TRAITS_HPP
#define MATRING_COEFF_TRAITS_HPP

// Small per-coefficient-type hooks that generic containers need: a zero and
// a one minted from an existing element, and sign information for printing.

#include "matring/exact_arith.hpp"

#include <ostream>
#include <string>

namespace matring {

inline Rational zero_like(const Rational&) { return {}; }
inline Rational one_like(const Rational&) { return {1}; }
inline bool is_negative(const Rational& r) { return r.sign() < 0; }

inline Fp zero_like(Fp x) { return {0, x.modulus()}; }
inline Fp one_like(Fp x) { return {1, x.modulus()}; }
inline bool is_negative(Fp) { return false; }

inline std::string coeff_str(const Rational& r) { return r.str(); }
inline std::string coeff_str(Fp x) { return x.str(); }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
inline std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.str(); }

}  // namespace matring

#endif  // MATRING_COEFF_TRAITS_HPP
