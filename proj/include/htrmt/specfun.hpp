#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace htrmt {

using ComplexVal = std::complex<double>;

// Series evaluation, with MPFR re-evaluation when the summation loses more
// than 20 bits to cancellation.
ComplexVal gauss_2f1(ComplexVal a, ComplexVal b, ComplexVal c, ComplexVal z);
ComplexVal kummer_1f1(ComplexVal a, ComplexVal b, ComplexVal z);

// D_{-alpha}(ix) from the integral representation (alpha > 0).
ComplexVal parabolic_cylinder_Dix(double alpha, double x);
// Same value from the Kummer-function expansion; usable for large alpha.
ComplexVal parabolic_cylinder_Dix_series(double alpha, double x);
// Resolvent of the Gaussian limiting density at x + i0, from the ratio
// i D_{-alpha-1}(ix) / D_{-alpha}(ix). Im W = -pi rho(x).
ComplexVal gaussian_stieltjes(double alpha, double x);

double digamma(double x);
double trigamma(double x);

double density_gaussian(double alpha, double x);
double density_laguerre(double alpha1, double alpha, double x);
double density_jacobi(double alpha1, double alpha2, double alpha, double x);
// One-sided density of the positive eigenvalues x > 0.
double density_antisym(double alpha, double x);
// Density of the squared eigenvalues y > 0.
double density_antisym_squared(double alpha, double y);
// y * density_antisym_squared(alpha, y), parametrised by log y so that y may
// underflow.
double antisym_squared_scaled(double alpha, double log_y);
double dyson_dos(double alpha, double y);
// y * dyson_dos(alpha, y) as a function of log y.
double dyson_dos_scaled(double alpha, double log_y);

// Coefficients of x^{-(2p+1)}, p = 0..order, in the large-x expansion of the
// Gaussian resolvent.
std::vector<double> stieltjes_gaussian_series(double alpha, int order);
// Coefficients of x^{-(p+1)}, p = 0..order, of the Jacobi resolvent.
std::vector<double> stieltjes_jacobi_series(double alpha1, double alpha2, double alpha, int order);
// Jacobi resolvent evaluated through gauss_2f1 at 1/x, x > 1.
double stieltjes_jacobi(double alpha1, double alpha2, double alpha, double x);

double semicircle_law(double y);
double weak_disorder_law(double alpha, double kappa, double y);

struct LimitReport {
    std::string name;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> reference;
    double sup_abs = 0.0;
    double max_rel = 0.0;
};

LimitReport limit_semicircle(double alpha, int threads = 1);
LimitReport limit_weak_disorder(double alpha, double kappa, int threads = 1);
LimitReport limit_jacobi_laguerre(double alpha1, double alpha, double alpha2, int threads = 1);

enum class DensityKind { gaussian, laguerre, jacobi, antisym, antisym_squared, dyson };

std::string_view density_kind_name(DensityKind k);
DensityKind parse_density_kind(std::string_view s);

struct DensitySpec {
    DensityKind kind = DensityKind::gaussian;
    double alpha = 1.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

double density_value(const DensitySpec& s, double x);
// Integral of x^p rho over the support by adaptive quadrature.
double density_moment(const DensitySpec& s, int p, double abs_tol = 1e-10);
// Probability mass of the interval [a, b].
double density_mass(const DensitySpec& s, double a, double b, double abs_tol = 1e-10);

struct DensityCurve {
    DensitySpec spec;
    std::vector<double> grid;
    std::vector<double> values;
    double quadrature_mass = 0.0;
    double tolerance = 1e-6;
};

DensityCurve density_curve(const DensitySpec& s, std::vector<double> grid, int threads = 1);

void to_json(nlohmann::json& j, const DensitySpec& s);
DensitySpec density_spec_from_json(const nlohmann::json& j);

// CSV with columns x,rho behind a single "# {json}" header line.
void write_density_csv(std::ostream& os, const DensityCurve& c, const nlohmann::json& extra = {});

// Evaluates f at every grid point using up to `threads` workers; output
// order follows the grid.
std::vector<double> parallel_map(const std::vector<double>& grid, int threads,
                                 const std::function<double(double)>& f);

} // namespace htrmt
