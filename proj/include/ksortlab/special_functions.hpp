#pragma once

namespace ksortlab::special {

// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

// Student-t CDF with `df` degrees of freedom.
double student_t_cdf(double t, double df);

// P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

// P(F >= f) for F(df1, df2).
double f_upper_p(double f, double df1, double df2);

double normal_cdf(double z);

// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

}  // namespace ksortlab::special
