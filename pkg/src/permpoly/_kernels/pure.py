"""Pure-Python kernel backend.

Every function here mirrors one in `_core.pyx` exactly; the compiled module is
preferred at import time and this one is the fallback.  All kernels work on
rank-encoded data: a field of size Q is described by three integer tables,

  exp:  length Q-1, exp[i] is the rank of g**i for a fixed generator g
  log:  length Q,   log[exp[i]] = i and log[0] = -1
  zech: length Q-1, zech[z] = log(1 + g**z), or -1 when 1 + g**z = 0

so multiplication is two lookups and addition is one Zech lookup.  Kernels
never raise on field-domain questions; callers own validation.
"""

BACKEND = "pure"


def _mul(a, b, exp, log, qm1):
    if a == 0 or b == 0:
        return 0
    return exp[(log[a] + log[b]) % qm1]


def _add(a, b, exp, log, zech, qm1):
    if a == 0:
        return b
    if b == 0:
        return a
    la = log[a]
    z = zech[(log[b] - la) % qm1]
    if z < 0:
        return 0
    return exp[(la + z) % qm1]


def _pow(a, e, exp, log, qm1):
    # e >= 0 only; 0**0 = 1 by convention
    if a == 0:
        return 1 if e == 0 else 0
    return exp[(log[a] * (e % qm1)) % qm1]


def tabulate_dense(coeffs, exp, log, zech):
    """Horner-evaluate an ascending coefficient list at every rank."""
    q = len(log)
    qm1 = q - 1
    out = [0] * q
    if not coeffs:
        return out
    rev = list(reversed(coeffs))
    for x in range(q):
        acc = 0
        for c in rev:
            acc = _add(_mul(acc, x, exp, log, qm1), c, exp, log, zech, qm1)
        out[x] = acc
    return out


def tabulate_sparse(exps, coeffs, exp, log, zech):
    """Evaluate sum(c * x**e) at every rank; exponents must be >= 0."""
    q = len(log)
    qm1 = q - 1
    out = [0] * q
    const = 0
    for e, c in zip(exps, coeffs):
        if e == 0:
            const = _add(const, c, exp, log, zech, qm1)
    out[0] = const
    for x in range(1, q):
        lx = log[x]
        acc = 0
        for e, c in zip(exps, coeffs):
            if c == 0:
                continue
            term = _mul(exp[(lx * (e % qm1)) % qm1], c, exp, log, qm1)
            acc = _add(acc, term, exp, log, zech, qm1)
        out[x] = acc
    return out


def interpolate(values, exp, log, zech, negone):
    """Coefficients (length Q, ascending) of the unique reduced polynomial
    through the table.

    Realizes sum_a T(a)*(1 - (x - a)**(Q-1)) term by term: since
    C(Q-1, k) = (-1)**k mod p, the x**k coefficient collapses to
    -sum_{a != 0} T(a) * a**(Q-1-k) for 1 <= k <= Q-2, with the a = 0 point
    contributing only to k = 0 and k = Q-1.
    """
    q = len(values)
    qm1 = q - 1
    # logs of the table read in generator order; -1 marks zero entries
    tlog = [0] * qm1
    for alpha in range(qm1):
        tlog[alpha] = log[values[exp[alpha]]]
    out = [0] * q
    out[0] = values[0]
    total = 0
    for v in values:
        total = _add(total, v, exp, log, zech, qm1)
    out[qm1] = _mul(negone, total, exp, log, qm1)
    for k in range(1, qm1):
        acc = 0
        r = 0  # r = (-alpha * k) mod (Q-1), updated incrementally
        for alpha in range(qm1):
            lt = tlog[alpha]
            if lt >= 0:
                acc = _add(acc, exp[(lt + r) % qm1], exp, log, zech, qm1)
            r -= k
            if r < 0:
                r += qm1
        out[k] = _mul(negone, acc, exp, log, qm1)
    return out


def compose_tables(outer, inner):
    return [outer[v] for v in inner]


def is_permutation(values):
    q = len(values)
    seen = bytearray(q)
    for v in values:
        if seen[v]:
            return False
        seen[v] = 1
    return True


def invert_table(values):
    """Inverse table of a bijection, or None when the input is not one."""
    q = len(values)
    out = [-1] * q
    for a, v in enumerate(values):
        if out[v] >= 0:
            return None
        out[v] = a
    return out


def pointwise_pow(values, m, exp, log):
    qm1 = len(log) - 1
    mm = m % qm1
    return [0 if v == 0 else exp[(log[v] * mm) % qm1] for v in values]


def scale_table(c, values, exp, log):
    if c == 0:
        return [0] * len(values)
    qm1 = len(log) - 1
    lc = log[c]
    return [0 if v == 0 else exp[(lc + log[v]) % qm1] for v in values]


def add_tables(a, b, exp, log, zech):
    qm1 = len(log) - 1
    return [_add(x, y, exp, log, zech, qm1) for x, y in zip(a, b)]
