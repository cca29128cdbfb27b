"""Statistical helpers: incomplete beta, Student t tails, Welch t-test,
Pearson correlation.

The regularized incomplete beta uses the modified Lentz continued
fraction; the two-sided p-value of a t statistic with df degrees of
freedom is I_{df/(df+t^2)}(df/2, 1/2).
"""

import math


class DegenerateVariance(ValueError):
    pass


class ConstantInput(ValueError):
    pass


def _betacf(a, b, x, max_iter=300, eps=3e-16):
    """Continued fraction for the incomplete beta (modified Lentz)."""
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    return h


def betainc(a, b, x):
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_two_sided_p(t, df):
    """P(|T_df| >= |t|) via the incomplete beta."""
    if df <= 0:
        raise ValueError("df must be positive")
    return betainc(df / 2.0, 0.5, df / (df + t * t))


def welch_ttest(sample_a, sample_b):
    """Two-sample Welch t-test; returns (t, df, two_sided_p)."""
    a = [float(v) for v in sample_a]
    b = [float(v) for v in sample_b]
    na, nb = len(a), len(b)
    if na < 2 or nb < 2:
        raise ValueError("each sample needs at least 2 values")
    ma = sum(a) / na
    mb = sum(b) / nb
    va = sum((v - ma) ** 2 for v in a) / (na - 1)
    vb = sum((v - mb) ** 2 for v in b) / (nb - 1)
    if va + vb == 0.0:
        raise DegenerateVariance("both samples are constant")
    sa, sb = va / na, vb / nb
    se = math.sqrt(sa + sb)
    t = (ma - mb) / se
    df = (sa + sb) ** 2 / (
        (sa * sa) / (na - 1) + (sb * sb) / (nb - 1)
    )
    return t, df, student_t_two_sided_p(t, df)


def pearson(x, y):
    """Pearson r with its two-sided p-value from the t distribution."""
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    n = len(xs)
    if n != len(ys):
        raise ValueError("x and y must have equal length")
    if n < 3:
        raise ValueError("need at least 3 points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((v - mx) ** 2 for v in xs)
    syy = sum((v - my) ** 2 for v in ys)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantInput("pearson requires non-constant inputs")
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return r, student_t_two_sided_p(t, n - 2)
