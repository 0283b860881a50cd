# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend; mirrors permpoly._kernels.pure function for function.

See pure.py for the table conventions (exp / log / zech).  With cdivision
enabled the C `%` follows the dividend's sign, so every reduction below is
arranged to act on non-negative operands.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"

ctypedef long long i64


cdef i64* _arr(object xs, Py_ssize_t n) except NULL:
    cdef i64* p = <i64*> malloc(n * sizeof(i64)) if n > 0 else <i64*> malloc(sizeof(i64))
    if p == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            p[i] = xs[i]
    except BaseException:
        free(p)
        raise
    return p


cdef list _out(i64* buf, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return out


cdef inline i64 _mul(i64 a, i64 b, i64* exp, i64* log, i64 qm1) noexcept:
    if a == 0 or b == 0:
        return 0
    return exp[(log[a] + log[b]) % qm1]


cdef inline i64 _add(i64 a, i64 b, i64* exp, i64* log, i64* zech, i64 qm1) noexcept:
    cdef i64 la, d, z
    if a == 0:
        return b
    if b == 0:
        return a
    la = log[a]
    d = log[b] - la
    if d < 0:
        d += qm1
    z = zech[d]
    if z < 0:
        return 0
    return exp[(la + z) % qm1]


cdef inline i64 _pow(i64 a, i64 e, i64* exp, i64* log, i64 qm1) noexcept:
    if a == 0:
        return 1 if e == 0 else 0
    return exp[(log[a] * (e % qm1)) % qm1]


def tabulate_dense(coeffs, exp, log, zech):
    cdef Py_ssize_t q = len(log), nc = len(coeffs)
    cdef i64 qm1 = q - 1
    cdef i64 *c = NULL, *e = NULL, *l = NULL, *z = NULL, *buf = NULL
    cdef Py_ssize_t x, i
    cdef i64 acc
    if nc == 0:
        return [0] * q
    try:
        c = _arr(coeffs, nc)
        e = _arr(exp, qm1)
        l = _arr(log, q)
        z = _arr(zech, qm1)
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        for x in range(q):
            acc = 0
            for i in range(nc - 1, -1, -1):
                acc = _add(_mul(acc, x, e, l, qm1), c[i], e, l, z, qm1)
            buf[x] = acc
        return _out(buf, q)
    finally:
        free(c); free(e); free(l); free(z); free(buf)


def tabulate_sparse(exps, coeffs, exp, log, zech):
    cdef Py_ssize_t q = len(log), nt = len(coeffs)
    cdef i64 qm1 = q - 1
    cdef i64 *te = NULL, *tc = NULL, *e = NULL, *l = NULL, *z = NULL, *buf = NULL
    cdef Py_ssize_t x, t
    cdef i64 acc, lx, term
    try:
        te = _arr(exps, nt)
        tc = _arr(coeffs, nt)
        e = _arr(exp, qm1)
        l = _arr(log, q)
        z = _arr(zech, qm1)
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        acc = 0
        for t in range(nt):
            if te[t] == 0:
                acc = _add(acc, tc[t], e, l, z, qm1)
        buf[0] = acc
        for x in range(1, q):
            lx = l[x]
            acc = 0
            for t in range(nt):
                if tc[t] == 0:
                    continue
                term = _mul(e[(lx * (te[t] % qm1)) % qm1], tc[t], e, l, qm1)
                acc = _add(acc, term, e, l, z, qm1)
            buf[x] = acc
        return _out(buf, q)
    finally:
        free(te); free(tc); free(e); free(l); free(z); free(buf)


def interpolate(values, exp, log, zech, negone):
    cdef Py_ssize_t q = len(values)
    cdef i64 qm1 = q - 1
    cdef i64 neg = negone
    cdef i64 *v = NULL, *e = NULL, *l = NULL, *z = NULL, *tlog = NULL, *buf = NULL
    cdef Py_ssize_t k, alpha
    cdef i64 acc, r, lt, total
    try:
        v = _arr(values, q)
        e = _arr(exp, qm1)
        l = _arr(log, q)
        z = _arr(zech, qm1)
        tlog = <i64*> malloc((qm1 if qm1 > 0 else 1) * sizeof(i64))
        buf = <i64*> malloc(q * sizeof(i64))
        if tlog == NULL or buf == NULL:
            raise MemoryError()
        for alpha in range(qm1):
            tlog[alpha] = l[v[e[alpha]]]
        buf[0] = v[0]
        total = 0
        for alpha in range(q):
            total = _add(total, v[alpha], e, l, z, qm1)
        buf[qm1] = _mul(neg, total, e, l, qm1)
        for k in range(1, qm1):
            acc = 0
            r = 0
            for alpha in range(qm1):
                lt = tlog[alpha]
                if lt >= 0:
                    acc = _add(acc, e[(lt + r) % qm1], e, l, z, qm1)
                r -= k
                if r < 0:
                    r += qm1
            buf[k] = _mul(neg, acc, e, l, qm1)
        return _out(buf, q)
    finally:
        free(v); free(e); free(l); free(z); free(tlog); free(buf)


def compose_tables(outer, inner):
    cdef Py_ssize_t q = len(inner)
    cdef i64 *o = NULL, *i_ = NULL, *buf = NULL
    cdef Py_ssize_t x
    try:
        o = _arr(outer, len(outer))
        i_ = _arr(inner, q)
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        for x in range(q):
            buf[x] = o[i_[x]]
        return _out(buf, q)
    finally:
        free(o); free(i_); free(buf)


def is_permutation(values):
    cdef Py_ssize_t q = len(values)
    cdef i64 *v = NULL
    cdef char *seen = NULL
    cdef Py_ssize_t x
    cdef bint ok = True
    try:
        v = _arr(values, q)
        seen = <char*> malloc(q)
        if seen == NULL:
            raise MemoryError()
        for x in range(q):
            seen[x] = 0
        for x in range(q):
            if seen[v[x]]:
                ok = False
                break
            seen[v[x]] = 1
        return bool(ok)
    finally:
        free(v); free(seen)


def invert_table(values):
    cdef Py_ssize_t q = len(values)
    cdef i64 *v = NULL, *buf = NULL
    cdef Py_ssize_t x
    cdef bint ok = True
    try:
        v = _arr(values, q)
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        for x in range(q):
            buf[x] = -1
        for x in range(q):
            if buf[v[x]] >= 0:
                ok = False
                break
            buf[v[x]] = x
        if not ok:
            return None
        return _out(buf, q)
    finally:
        free(v); free(buf)


def pointwise_pow(values, m, exp, log):
    cdef Py_ssize_t q = len(values)
    cdef i64 qm1 = len(log) - 1
    cdef i64 mm = m % qm1
    cdef i64 *v = NULL, *e = NULL, *l = NULL, *buf = NULL
    cdef Py_ssize_t x
    try:
        v = _arr(values, q)
        e = _arr(exp, qm1)
        l = _arr(log, len(log))
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        for x in range(q):
            buf[x] = 0 if v[x] == 0 else e[(l[v[x]] * mm) % qm1]
        return _out(buf, q)
    finally:
        free(v); free(e); free(l); free(buf)


def scale_table(c, values, exp, log):
    cdef Py_ssize_t q = len(values)
    cdef i64 qm1 = len(log) - 1
    cdef i64 cc = c
    cdef i64 *v = NULL, *e = NULL, *l = NULL, *buf = NULL
    cdef Py_ssize_t x
    cdef i64 lc
    if cc == 0:
        return [0] * q
    try:
        v = _arr(values, q)
        e = _arr(exp, qm1)
        l = _arr(log, len(log))
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        lc = l[cc]
        for x in range(q):
            buf[x] = 0 if v[x] == 0 else e[(lc + l[v[x]]) % qm1]
        return _out(buf, q)
    finally:
        free(v); free(e); free(l); free(buf)


def add_tables(a, b, exp, log, zech):
    cdef Py_ssize_t q = len(a)
    cdef i64 qm1 = len(log) - 1
    cdef i64 *va = NULL, *vb = NULL, *e = NULL, *l = NULL, *z = NULL, *buf = NULL
    cdef Py_ssize_t x
    try:
        va = _arr(a, q)
        vb = _arr(b, q)
        e = _arr(exp, qm1)
        l = _arr(log, len(log))
        z = _arr(zech, qm1)
        buf = <i64*> malloc(q * sizeof(i64))
        if buf == NULL:
            raise MemoryError()
        for x in range(q):
            buf[x] = _add(va[x], vb[x], e, l, z, qm1)
        return _out(buf, q)
    finally:
        free(va); free(vb); free(e); free(l); free(z); free(buf)
