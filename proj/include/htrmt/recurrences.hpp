#pragma once

#include "htrmt/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace htrmt {

enum class Family { gaussian, laguerre, jacobi, jacobi_symmetric, antisym_squared };

const char* family_name(Family f);
Family parse_family(const std::string& name);

// alpha1 is the Laguerre/Jacobi exponent (the common exponent a in the
// symmetric Jacobi case); alpha2 is the second Jacobi exponent.
template <class T>
struct BasicParams {
    Family family = Family::gaussian;
    T alpha{};
    std::optional<T> alpha1;
    std::optional<T> alpha2;
};

template <class T>
struct BasicMomentSet {
    BasicParams<T> params;
    int order = 0;
    std::vector<T> m0;
    std::optional<std::vector<T>> m1;
};

template <class T>
struct BasicCovTable {
    BasicParams<T> params;
    int pmax = 0;
    int qmax = 0;
    std::vector<std::vector<T>> mu; // (pmax+1) x (qmax+1)
    std::vector<T> mu_diag;         // indices 0..pmax+qmax
};

using EnsembleParams = BasicParams<Scalar>;
using MomentSet = BasicMomentSet<Scalar>;
using CovTable = BasicCovTable<Scalar>;

// Fully symbolic parameters (alpha, alpha1, alpha2 as polynomial variables).
BasicParams<MultiPoly> symbolic_params(Family f);

// Typed engines, instantiated for Rational, MultiPoly and double.
template <class T>
BasicMomentSet<T> moments0(const BasicParams<T>& params, int order);
template <class T>
BasicCovTable<T> covariances(const BasicParams<T>& params, int pmax, int qmax,
                             const BasicMomentSet<T>& m0);
template <class T>
std::vector<T> covariance_diagonal(const BasicParams<T>& params, int pmax,
                                   const BasicMomentSet<T>& m0);
template <class T>
BasicMomentSet<T> moments1(const BasicParams<T>& params, int order, const BasicMomentSet<T>& m0,
                           const std::vector<T>& mu_diag);
// Rearranged Jacobi recurrence, or the symmetric form for JacobiSymmetric.
template <class T>
std::vector<T> jacobi_moments_alt(int order, const BasicParams<T>& params);
// Reduced Gaussian recurrence; returns m_0..m_order with m_{2n} = (1+alpha) * reduced[n].
template <class T>
std::vector<T> gaussian_moments_alt(int order, const T& alpha);
template <class T>
std::vector<T> gaussian_reduced_moments(int n, const T& alpha);

std::vector<MultiPoly> gaussian_moments_alt(int order);
// Density-of-states moments in squared variables, w_0..w_order.
std::vector<MultiPoly> dos_moments(int order);

// Ring-dispatching front ends: every supplied Scalar must share one variant.
MomentSet moments0(const EnsembleParams& params, int order);
CovTable covariances(const EnsembleParams& params, int pmax, int qmax, const MomentSet& m0);
std::vector<Scalar> covariance_diagonal(const EnsembleParams& params, int pmax, const MomentSet& m0);
MomentSet moments1(const EnsembleParams& params, int order, const MomentSet& m0,
                   const std::vector<Scalar>& mu_diag);
std::vector<Scalar> jacobi_moments_alt(int order, const EnsembleParams& params);

Ring ring_of(const EnsembleParams& params);

template <class T>
BasicParams<T> typed(const EnsembleParams& p);
template <class T>
EnsembleParams erase(const BasicParams<T>& p);
template <class T>
MomentSet erase(const BasicMomentSet<T>& m);
template <class T>
BasicMomentSet<T> typed(const MomentSet& m);

} // namespace htrmt
