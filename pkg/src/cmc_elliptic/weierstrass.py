"""Real-axis evaluation of the Weierstrass P-function and its companions.

A :class:`WpEvaluator` is bound to one invariant pair (g2, g3) with nonzero
discriminant. P and P' are computed from the truncated Laurent series inside
a safe radius and extended by repeated argument duplication; the inverse is
the decreasing elliptic integral from the argument to infinity, and the
antiderivative is adaptive quadrature of P. Only real arguments on the
branch P(z) >= e_max (e_max the largest real root of 4x^3 - g2*x - g3) are
supported; that is the branch on which P takes real values on the real axis.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

from ._ratpoly import real_cbrt
from .errors import (AccuracyError, BranchError, DomainError, PoleError,
                     SingularError)

_N_LAURENT = 24  # series coefficients c_2..c_25
_MAX_DUPLICATIONS = 12


class WpEvaluator:
    """Immutable P/P'/P-inverse evaluator for one (g2, g3) pair."""

    def __init__(self, g2: float, g3: float):
        if not (math.isfinite(g2) and math.isfinite(g3)):
            raise DomainError("g2 and g3 must be finite")
        self.g2 = float(g2)
        self.g3 = float(g3)
        self.disc = self.g2 ** 3 - 27.0 * self.g3 ** 2
        scale = max(abs(self.g2) ** 3, 27.0 * self.g3 ** 2, 1.0)
        if abs(self.disc) <= 1e-14 * scale:
            raise SingularError(
                f"discriminant {self.disc!r} vanishes; the P-function does not exist")
        self.laurent = self._laurent_coeffs()
        self.r0 = self._series_radius()
        self.e_max = self._largest_cubic_root()

    # -- construction helpers ------------------------------------------------

    def _laurent_coeffs(self) -> tuple[float, ...]:
        """Coefficients c_2..c_25 of P(z) = 1/z^2 + sum c_k z^(2k-2)."""
        c = {2: self.g2 / 20.0, 3: self.g3 / 28.0}
        for k in range(4, _N_LAURENT + 2):
            acc = 0.0
            for mm in range(2, k - 1):
                acc += c[mm] * c[k - mm]
            c[k] = 3.0 * acc / ((2 * k + 1) * (k - 3))
        return tuple(c[k] for k in range(2, _N_LAURENT + 2))

    def _series_radius(self) -> float:
        """Radius on which 24 Laurent terms are accurate to ~1e-15.

        |c_k| grows like 1/rho^(2k) with rho the distance to the nearest
        lattice point, so rho is estimated from the top coefficients and the
        series is trusted on half that distance (tail then < 2^-48).
        """
        gamma = 0.0
        for k in range(14, _N_LAURENT + 2):
            ck = self.laurent[k - 2]
            if ck != 0.0:
                gamma = max(gamma, abs(ck) ** (1.0 / (2.0 * k)))
        if gamma == 0.0:
            return 0.5
        return 0.5 / gamma

    def _largest_cubic_root(self) -> float:
        """Largest real root of 4x^3 - g2*x - g3 (Cardano/trig + Newton)."""
        p = -self.g2 / 4.0
        q = -self.g3 / 4.0
        if self.disc > 0:
            # Three real roots; the largest is the k=0 trigonometric one.
            r = math.sqrt(-p / 3.0)
            arg = min(1.0, max(-1.0, 3.0 * q / (2.0 * p * r)))
            x = 2.0 * r * math.cos(math.acos(arg) / 3.0)
        else:
            d = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
            x = real_cbrt(-q / 2.0 + d) + real_cbrt(-q / 2.0 - d)
        for _ in range(3):
            f = 4.0 * x ** 3 - self.g2 * x - self.g3
            df = 12.0 * x * x - self.g2
            if df == 0.0:
                break
            x -= f / df
        return x

    # -- evaluation -----------------------------------------------------------

    def _series(self, u: float) -> tuple[float, float]:
        v = u * u
        p_tail = 0.0
        dp_tail = 0.0
        for k in range(_N_LAURENT + 1, 1, -1):
            ck = self.laurent[k - 2]
            p_tail = p_tail * v + ck
            dp_tail = dp_tail * v + (2 * k - 2) * ck
        # p = 1/v + v * p_tail_as_series: c_k v^(k-1) = v * (c_k v^(k-2))
        p = 1.0 / v + v * p_tail
        pp = -2.0 / (v * u) + u * dp_tail
        return p, pp

    def wp(self, z: float) -> tuple[float, float]:
        """(P(z), P'(z)) by Laurent series plus argument duplication."""
        if z == 0.0:
            raise PoleError("P has a pole at z=0")
        if not math.isfinite(z):
            raise DomainError(f"z must be finite, got {z!r}")
        n_dup = 0
        zz = z
        while abs(zz) > self.r0:
            zz *= 0.5
            n_dup += 1
            if n_dup > _MAX_DUPLICATIONS:
                raise AccuracyError(
                    f"|z|={abs(z)!r} needs more than {_MAX_DUPLICATIONS} duplications")
        p, pp = self._series(zz)
        for _ in range(n_dup):
            if abs(pp) < 1e-14:
                raise BranchError(
                    "argument duplication hit a half-period (P' vanished)")
            q = (6.0 * p * p - self.g2 / 2.0) / (2.0 * pp)
            p, pp = -2.0 * p + q * q, -pp + 6.0 * p * q - 2.0 * q ** 3
        return p, pp

    def wp_second(self, z: float) -> float:
        """P''(z) = 6 P(z)^2 - g2/2."""
        p, _ = self.wp(z)
        return 6.0 * p * p - self.g2 / 2.0

    def _cubic(self, t: float) -> float:
        return 4.0 * t ** 3 - self.g2 * t - self.g3

    def wp_inverse(self, w: float) -> float:
        """The positive z with P(z) = w, via the integral of 1/sqrt(cubic).

        Integrates from w to infinity: substitution t = w + tau^2 removes the
        square-root endpoint behavior, and sigma = t^(-1/2) maps the tail to
        a finite smooth integral.
        """
        if not math.isfinite(w):
            raise DomainError(f"w must be finite, got {w!r}")
        if w < self.e_max - 1e-12 * max(1.0, abs(self.e_max)):
            raise BranchError(
                f"w={w!r} below the real branch (e_max={self.e_max!r})")
        w = max(w, self.e_max)
        t_mid = max(1.0, 2.0 * abs(self.e_max) + 1.0, w + max(1.0, 0.5 * abs(w)))
        fp = 12.0 * w * w - self.g2        # f'(w)
        fpp_half = 12.0 * w                # f''(w)/2
        f0 = max(self._cubic(w), 0.0)      # >= 0 on the branch; clamp roundoff

        def near(tau: float) -> float:
            t2 = tau * tau
            phi = f0 / t2 + fp + fpp_half * t2 + 4.0 * t2 * t2 if t2 > 0 else fp
            if phi <= 0:
                phi = abs(fp)
            return 2.0 / math.sqrt(phi)

        def tail(sigma: float) -> float:
            s2 = sigma * sigma
            return 2.0 / math.sqrt(4.0 - self.g2 * s2 * s2 - self.g3 * s2 * s2 * s2)

        z1, e1 = quad(near, 0.0, math.sqrt(t_mid - w), epsabs=1e-13,
                      epsrel=1e-11, limit=200)
        z2, e2 = quad(tail, 0.0, 1.0 / math.sqrt(t_mid), epsabs=1e-13,
                      epsrel=1e-11, limit=200)
        z = z1 + z2
        err = e1 + e2
        if err > max(1e-9 * abs(z), 1e-10):
            raise AccuracyError(
                f"inverse integral error estimate {err:.3e}", achieved=err)
        return z

    def wp_integral(self, t0: float, t1: float) -> float:
        """Integral of P over [t0, t1] on a pole-free stretch of the real axis."""
        if t0 == t1:
            return 0.0
        if min(t0, t1) <= 0.0 <= max(t0, t1):
            raise PoleError("integration interval contains the pole at 0")
        val, err = quad(lambda t: self.wp(t)[0], t0, t1, epsabs=1e-12,
                        epsrel=1e-10, limit=200)
        if err > max(1e-8 * abs(val), 1e-9):
            raise AccuracyError(
                f"P-integral error estimate {err:.3e}", achieved=err)
        return val
