#pragma once

namespace stylo::special {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Lentz continued fraction, evaluated on whichever of I_x(a,b) and
/// 1 - I_{1-x}(b,a) converges faster (switch at x = (a+1)/(a+b+2)).
double incomplete_beta(double x, double a, double b);

/// Upper tail P(F > f) of the F distribution with (d1, d2) degrees of freedom.
double f_survival(double f, double d1, double d2);

/// Lower tail P(F <= f).
double f_cdf(double f, double d1, double d2);

}  // namespace stylo::special
