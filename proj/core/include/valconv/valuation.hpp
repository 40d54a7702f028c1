#pragma once

#include <string>

#include "valconv/convolution.hpp"
#include "valconv/linsolve.hpp"

namespace valconv {

// Invariant smooth valuation {c, tau}: c constant, tau a dual-valued n-form.
struct InvariantValuation {
  Scalar c;
  BigradedForm tau;
  std::string lie;

  InvariantValuation& operator+=(const InvariantValuation& other);
  InvariantValuation& operator-=(const InvariantValuation& other);
  InvariantValuation& operator*=(const Scalar& factor);
  friend InvariantValuation operator+(InvariantValuation a, const InvariantValuation& b) { return a += b; }
  friend InvariantValuation operator-(InvariantValuation a, const InvariantValuation& b) { return a -= b; }
  friend InvariantValuation operator*(InvariantValuation a, const Scalar& s) { return a *= s; }
  friend bool operator==(const InvariantValuation& a, const InvariantValuation& b) {
    return a.c == b.c && a.tau == b.tau;
  }
};

InvariantValuation haar_valuation(const LieAlgebra& lie);
InvariantValuation euler_characteristic(const LieAlgebra& lie);
// Dual (n-1)-form with only the top sphere component: the sphere area form of total mass 1.
BigradedForm volume_primitive(int dim);

struct PrimitiveOptions {
  int window = -1;        // coefficient degree bound; -1 = max degree of tau + 2
  int escalations = 2;    // retries, each widening the window by 2
  // Gauge: pivot order and the value given to free unknowns of each linear solve.
  PivotOrder gauge = PivotOrder::Natural;
  Rational free_value = 0;
};

struct PrimitivePair {
  BigradedForm omega;  // d_total(omega) = tau - tau_0, top component zero
  int window = 0;      // largest window used
};

// Primitive of tau - tau_0 for a closed dual n-form tau whose top sphere integral vanishes.
PrimitivePair find_primitive(const LieAlgebra& lie, const BigradedForm& tau, const PrimitiveOptions& options = {});

struct ValidationReport {
  bool vertical = false;
  bool closed = false;
  bool zero_top_integral = false;
  bool primitive = false;
  VerticalityResult vertical_witness;
  std::string detail;
  bool ok() const { return vertical && closed && zero_top_integral && primitive; }
};

ValidationReport validate(const LieAlgebra& lie, const InvariantValuation& v, const PrimitiveOptions& options = {});

Scalar mu_of(const InvariantValuation& v);

struct ValuationConvolveOptions {
  bool strict_invariance = true;
  PrimitiveOptions primitive;
};

// {c_phi mu(psi) + pi_*(tau_phi * omega_psi), tau_phi * tau_psi}, where omega_psi is a
// primitive of tau_psi - tau_psi,0 plus c_psi times the unit-mass area form.
InvariantValuation convolve_valuations(const LieAlgebra& lie, const InvariantValuation& phi,
                                       const InvariantValuation& psi, const ValuationConvolveOptions& options = {});

}  // namespace valconv
