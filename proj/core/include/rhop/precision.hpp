#pragma once

#include <complex>
#include <string>
#include <type_traits>
#include <string_view>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace rhop {

namespace mp = boost::multiprecision;

/// Software extended precision, 50 significant decimal digits.
using extended = mp::cpp_bin_float_50;
/// Very wide floating point for convergence studies whose errors fall far
/// below 1e-50 (strong-limit checks out to n = 30).
using wide = mp::number<mp::cpp_bin_float<150>>;
/// Exact rational arithmetic.
using rational = mp::cpp_rational;

using cplx = std::complex<double>;

template <class Real>
struct complex_of {
  using type = std::complex<Real>;
};
template <>
struct complex_of<extended> {
  using type = mp::cpp_complex_50;
};
template <>
struct complex_of<wide> {
  using type = mp::number<mp::complex_adaptor<mp::cpp_bin_float<150>>>;
};

template <class Real>
using complex_t = typename complex_of<Real>::type;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class Backend, mp::expression_template_option ET>
struct is_complex<mp::number<Backend, ET>>
    : std::bool_constant<mp::number_category<mp::number<Backend, ET>>::value ==
                         mp::number_kind_complex> {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Complex conjugate that is the identity on real scalar types.
template <class T>
T conjugate(const T& x) {
  if constexpr (is_complex_v<T>) {
    using std::conj;
    return T(conj(x));
  } else {
    return x;
  }
}

template <class T>
auto real_part(const T& x) {
  if constexpr (is_complex_v<T>) {
    using std::real;
    return decltype(real(x))(real(x));
  } else {
    return x;
  }
}

enum class Precision { standard, extended, exact };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

template <class To, class From>
To convert(const From& x) {
  return static_cast<To>(x);
}

template <class Real>
complex_t<Real> make_complex(const Real& re, const Real& im) {
  return complex_t<Real>(re, im);
}

inline double to_double(double x) { return x; }
template <class Backend, mp::expression_template_option ET>
double to_double(const mp::number<Backend, ET>& x) {
  return x.template convert_to<double>();
}

template <class C>
cplx to_cplx(const C& z) {
  using std::imag;
  using std::real;
  return {to_double(real(z)), to_double(imag(z))};
}

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

}  // namespace rhop
