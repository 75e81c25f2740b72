#pragma once

// Minimal RAII handle over an MPFR number with an explicit bit precision.
// Only the operations the character-sum evaluators need are exposed.

#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace qprod::mp {

class Real {
 public:
  explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(long value, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& mul_si(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& div_si(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& mul_2si(long k) { mpfr_mul_2si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& negate() { mpfr_neg(v_, v_, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }

  friend Real sin(const Real& x) { Real r(x.precision()); mpfr_sin(r.v_, x.v_, MPFR_RNDN); return r; }
  friend Real cos(const Real& x) { Real r(x.precision()); mpfr_cos(r.v_, x.v_, MPFR_RNDN); return r; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Nearest integer, and |x - nearest| as a double.
  std::pair<mpz_class, double> round_with_residual() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    Real diff(*this);
    mpfr_sub_z(diff.v_, diff.v_, z.get_mpz_t(), MPFR_RNDN);
    return {z, mpfr_get_d(diff.v_, MPFR_RNDN) < 0 ? -diff.to_double() : diff.to_double()};
  }

 private:
  mpfr_t v_;
};

/// x + iy at a fixed working precision.
struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t bits) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator*=(const Complex& o) {
    Real a = re * o.re;
    a -= im * o.im;
    Real b = re * o.im;
    b += im * o.re;
    re = std::move(a);
    im = std::move(b);
    return *this;
  }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  Complex conj() const {
    Complex c(*this);
    c.im.negate();
    return c;
  }
};

}  // namespace qprod::mp
