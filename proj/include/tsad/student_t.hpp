#pragma once

namespace tsad {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
/// x in [0, 1]. Continued-fraction evaluation (modified Lentz), switching
/// to the symmetry relation where the fraction converges slowly.
double incomplete_beta(double a, double b, double x);

/// Inverse of I_x(a, b) in x: bracketing bisection polished by Newton
/// steps. Accurate to ~1e-12 in x.
double incomplete_beta_inv(double a, double b, double p);

/// Quantile of Student's t distribution with `dof` degrees of freedom at
/// probability p in (0, 1). Accuracy better than 1e-8 over the ranges the
/// ESD test uses.
double student_t_quantile(double p, double dof);

/// Two-sided normal tail probability P(|Z| >= |z|) for a standard normal Z.
double normal_two_sided_tail(double z);

}  // namespace tsad
