#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <type_traits>
#include <vector>

// Dense complex polynomial kernels shared by the encoder and the detectors.
// Coefficient vectors are always stored in ascending powers: coeffs[0] is the
// constant term, coeffs[degree] the leading coefficient.

namespace immocz {

template <typename Scalar>
using ComplexT = std::complex<Scalar>;

template <typename Scalar>
using ComplexVectorT = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;

template <typename Scalar>
using ComplexMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using ComplexVector = ComplexVectorT<double>;

/// Thrown when a coefficient vector has an effectively vanishing leading
/// coefficient, so its nominal degree cannot be trusted.
class DegeneratePolynomialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Horner evaluation of an ascending-power coefficient vector at z.
template <typename Derived>
typename Derived::Scalar polyval(const Eigen::MatrixBase<Derived>& coeffs,
                                 const typename Derived::Scalar& z) {
  using Value = typename Derived::Scalar;
  Value acc = Value(0);
  for (Eigen::Index m = coeffs.size() - 1; m >= 0; --m) {
    acc = acc * z + coeffs(m);
  }
  return acc;
}

/// Full linear convolution of two coefficient vectors, i.e. the coefficients
/// of the product polynomial. Output length is a.size() + b.size() - 1.
template <typename DerivedA, typename DerivedB>
Eigen::Vector<typename DerivedA::Scalar, Eigen::Dynamic> convolve_full(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Value = typename DerivedA::Scalar;
  if (a.size() == 0 || b.size() == 0) {
    throw std::invalid_argument("convolve_full: empty operand");
  }
  Eigen::Vector<Value, Eigen::Dynamic> out =
      Eigen::Vector<Value, Eigen::Dynamic>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      out(i + j) += a(i) * b(j);
    }
  }
  return out;
}

namespace internal {

// Working precision one level above Scalar. Roots of clustered or
// high-degree polynomials are sensitive to coefficient rounding at the
// cond * eps level, so expansion and refinement accumulate in wider
// arithmetic and round once at the end.
template <typename Scalar>
using WideScalar = std::conditional_t<std::is_same_v<Scalar, float>, double, long double>;

}  // namespace internal

/// Coefficients of the monic polynomial prod_k (z - roots[k]), built by
/// iterated convolution with the first-order factors [-root, 1].
template <typename Scalar>
ComplexVectorT<Scalar> polynomial_from_roots(const ComplexVectorT<Scalar>& roots) {
  using Wide = internal::WideScalar<Scalar>;
  std::vector<std::complex<Wide>> coeffs{std::complex<Wide>(1)};
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    const std::complex<Wide> root(roots(k).real(), roots(k).imag());
    coeffs.push_back(coeffs.back());
    for (std::size_t m = coeffs.size() - 2; m > 0; --m) {
      coeffs[m] = coeffs[m - 1] - root * coeffs[m];
    }
    coeffs[0] = -root * coeffs[0];
  }
  ComplexVectorT<Scalar> out(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    out(static_cast<Eigen::Index>(m)) =
        ComplexT<Scalar>(static_cast<Scalar>(coeffs[m].real()),
                         static_cast<Scalar>(coeffs[m].imag()));
  }
  return out;
}

/// Canonical ordering used everywhere roots are reported: ascending phase in
/// [0, 2pi), ties broken by ascending modulus. Keeps diagnostics and test
/// vectors stable across runs.
template <typename Scalar>
void sort_roots_canonical(ComplexVectorT<Scalar>* roots) {
  auto key_angle = [](const ComplexT<Scalar>& z) {
    Scalar a = std::arg(z);
    if (a < Scalar(0)) a += Scalar(2) * std::numbers::pi_v<Scalar>;
    return a;
  };
  std::sort(roots->begin(), roots->end(),
            [&](const ComplexT<Scalar>& x, const ComplexT<Scalar>& y) {
              const Scalar ax = key_angle(x);
              const Scalar ay = key_angle(y);
              if (ax != ay) return ax < ay;
              return std::abs(x) < std::abs(y);
            });
}

namespace internal {

// Parlett-Reinsch style balancing with powers of two, so eigenvalues are
// unaffected by the scaling itself. Companion matrices of noisy received
// polynomials can mix very small and very large entries.
template <typename Scalar>
void balance_companion(ComplexMatrixT<Scalar>* matrix) {
  ComplexMatrixT<Scalar>& m = *matrix;
  const Eigen::Index n = m.rows();
  const Scalar gamma = Scalar(0.9);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar row_norm = m.row(i).template lpNorm<1>();
      const Scalar col_norm = m.col(i).template lpNorm<1>();
      if (row_norm == Scalar(0) || col_norm == Scalar(0)) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent != 0) {
        const Scalar scaled_col = std::ldexp(col_norm, exponent);
        const Scalar scaled_row = std::ldexp(row_norm, -exponent);
        if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
          changed = true;
          m.row(i) *= std::ldexp(Scalar(1), -exponent);
          m.col(i) *= std::ldexp(Scalar(1), exponent);
        }
      }
    }
  }
}

// A few guarded Newton steps per root, evaluated in wide arithmetic.
// Companion eigenvalues are backward stable but lose forward accuracy for
// sensitive roots; refinement against the stored coefficients recovers it.
// Multiple roots are left alone (a step is only kept while the residual
// strictly drops).
template <typename Scalar>
void polish_roots(const ComplexVectorT<Scalar>& coeffs,
                  ComplexVectorT<Scalar>* roots) {
  using Wide = WideScalar<Scalar>;
  using WideComplex = std::complex<Wide>;
  const Eigen::Index degree = coeffs.size() - 1;

  std::vector<WideComplex> wide(degree + 1);
  std::vector<WideComplex> derivative(degree);
  for (Eigen::Index m = 0; m <= degree; ++m) {
    wide[m] = WideComplex(coeffs(m).real(), coeffs(m).imag());
    if (m >= 1) derivative[m - 1] = wide[m] * Wide(m);
  }
  auto eval = [](const std::vector<WideComplex>& c, const WideComplex& z) {
    WideComplex acc(0);
    for (std::size_t m = c.size(); m-- > 0;) acc = acc * z + c[m];
    return acc;
  };

  for (Eigen::Index i = 0; i < roots->size(); ++i) {
    WideComplex root((*roots)(i).real(), (*roots)(i).imag());
    Wide residual = std::abs(eval(wide, root));
    for (int iteration = 0; iteration < 4; ++iteration) {
      if (residual == Wide(0)) break;
      const WideComplex slope = eval(derivative, root);
      if (slope == WideComplex(0)) break;
      const WideComplex candidate = root - eval(wide, root) / slope;
      if (!std::isfinite(candidate.real()) || !std::isfinite(candidate.imag())) {
        break;
      }
      const Wide candidate_residual = std::abs(eval(wide, candidate));
      if (candidate_residual >= residual) break;
      root = candidate;
      residual = candidate_residual;
    }
    (*roots)(i) = ComplexT<Scalar>(static_cast<Scalar>(root.real()),
                                   static_cast<Scalar>(root.imag()));
  }
}

}  // namespace internal

/// All complex roots of the polynomial with the given ascending-power
/// coefficients, via the eigenvalues of the balanced companion matrix
/// followed by Newton refinement.
/// Returned in canonical order (see sort_roots_canonical).
///
/// Throws DegeneratePolynomialError if the leading coefficient underflows
/// relative to the largest coefficient (the nominal degree is then bogus).
template <typename Scalar>
ComplexVectorT<Scalar> find_polynomial_roots(const ComplexVectorT<Scalar>& coeffs) {
  const Eigen::Index degree = coeffs.size() - 1;
  if (degree < 0) {
    throw std::invalid_argument("find_polynomial_roots: empty coefficient vector");
  }
  const Scalar max_mag = coeffs.cwiseAbs().maxCoeff();
  const Scalar lead_mag = std::abs(coeffs(degree));
  if (max_mag == Scalar(0) || lead_mag <= Scalar(1e-300) * max_mag) {
    throw DegeneratePolynomialError("leading coefficient underflow");
  }
  ComplexVectorT<Scalar> roots(degree);
  if (degree == 0) return roots;
  if (degree == 1) {
    roots(0) = -coeffs(0) / coeffs(1);
    return roots;
  }

  ComplexMatrixT<Scalar> companion = ComplexMatrixT<Scalar>::Zero(degree, degree);
  for (Eigen::Index r = 1; r < degree; ++r) {
    companion(r, r - 1) = ComplexT<Scalar>(1);
  }
  for (Eigen::Index r = 0; r < degree; ++r) {
    companion(r, degree - 1) = -coeffs(r) / coeffs(degree);
  }
  internal::balance_companion(&companion);

  // Balancing is a diagonal similarity, so the matrix stays upper Hessenberg
  // and the Schur iteration can start directly from it.
  Eigen::ComplexSchur<ComplexMatrixT<Scalar>> schur;
  ComplexMatrixT<Scalar> unit;
  schur.computeFromHessenberg(companion, unit, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw DegeneratePolynomialError("companion eigenvalue iteration failed");
  }
  roots = schur.matrixT().diagonal();
  internal::polish_roots(coeffs, &roots);
  sort_roots_canonical(&roots);
  return roots;
}

/// Relative backward-error style residual of z as a root of the polynomial:
/// |P(z)| normalized by the Horner magnitude sum at z. Values near machine
/// epsilon indicate a numerically exact root.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real root_residual(
    const Eigen::MatrixBase<Derived>& coeffs, const typename Derived::Scalar& z) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Real scale = Real(0);
  Real zmag = std::abs(z);
  Real zpow = Real(1);
  for (Eigen::Index m = 0; m < coeffs.size(); ++m) {
    scale += std::abs(coeffs(m)) * zpow;
    zpow *= zmag;
  }
  if (scale == Real(0)) return Real(0);
  return std::abs(polyval(coeffs, z)) / scale;
}

}  // namespace immocz
