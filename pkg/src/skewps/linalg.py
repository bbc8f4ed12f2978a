"""Row reduction over an exact field.

``field`` is any ring object from :mod:`skewps.rings` that is a field
(``RationalField`` or ``PrimeField``); vectors are plain lists.
"""


def rref(rows, field):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not field.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inverse(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[1])


def same_span(rows_a, rows_b, field):
    ra = rank(rows_a, field)
    rb = rank(rows_b, field)
    return ra == rb == rank(list(rows_a) + list(rows_b), field)


def solve(columns, target, field):
    """Find coefficients x with sum_k x_k * columns[k] == target, or None."""
    n = len(columns)
    dim = len(target)
    # augmented system: one row per coordinate
    rows = [[columns[k][i] for k in range(n)] + [target[i]] for i in range(dim)]
    red, pivots = rref(rows, field)
    if n in pivots:
        return None
    x = [field.zero] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def in_span(vector, rows, field):
    return solve(list(rows), list(vector), field) is not None
