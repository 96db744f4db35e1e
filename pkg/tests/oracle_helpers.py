"""Independent brute-force enumerations used as oracles in tests.

Everything here works directly from the maps S_j(x) = rho*x + d_j by
enumerating words, with no reference to the package's net-interval or
matrix machinery, so agreement is meaningful evidence of correctness.
"""

from fractions import Fraction


def cylinder_start_sets(system, n_max):
    """Per level m = 0..n_max, the distinct values {S_sigma(0) : |sigma| = m}.

    Uses S_{sigma e}(0) = S_sigma(0) + rho^m d_e and deduplicates exactly.
    """
    ctx = system.context
    starts = {ctx.zero.coeffs: ctx.zero}
    out = [list(starts.values())]
    power = ctx.one
    for _ in range(n_max):
        nxt = {}
        for s in starts.values():
            for d in system.translations:
                v = s + power * d
                nxt.setdefault(v.coeffs, v)
        starts = nxt
        power = power * system.rho
        out.append(list(starts.values()))
    return out


def endpoint_sets(system, n_max):
    """Per level, the sorted endpoint set {S_sigma(0), S_sigma(1)}."""
    start_sets = cylinder_start_sets(system, n_max)
    out = []
    power = system.context.one
    for starts in start_sets:
        endpoints = {s.coeffs: s for s in starts}
        for s in starts:
            e = s + power
            endpoints.setdefault(e.coeffs, e)
        out.append(sorted(endpoints.values()))
        power = power * system.rho
    return out


def brute_net_intervals(system, n, probe):
    """Level-n net intervals [(a, b), ...] by direct enumeration.

    A candidate interval between consecutive level-n endpoints is kept iff
    some endpoint of level n + probe lies strictly inside it.  Cylinder
    starts all belong to the attractor and every attractor point is a limit
    of them, so with a generous probe this converges to the true answer;
    endpoints are nested across levels (d_0 = 0 and d_m = 1 - rho fix both
    ends of every cylinder), so only the deepest set needs scanning.
    """
    sets = endpoint_sets(system, n + probe)
    level_n = sets[n]
    deepest = sets[n + probe]
    kept = []
    for a, b in zip(level_n, level_n[1:]):
        lo = _bisect_right(deepest, a)
        if lo < len(deepest) and (deepest[lo] - b).sign() < 0:
            kept.append((a, b))
    return kept


def _bisect_right(sorted_elems, x):
    lo, hi = 0, len(sorted_elems)
    while lo < hi:
        mid = (lo + hi) // 2
        if (sorted_elems[mid] - x).sign() <= 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


def interval_mass(system, mass_map, left, neighbours, n):
    """Total word mass over the cylinders covering one net interval.

    The covering cylinders of a net interval with left endpoint `left` and
    neighbour offsets (a_i) start at left - rho^n * a_i.
    """
    power = system.context.one
    for _ in range(n):
        power = power * system.rho
    total = Fraction(0)
    for a_i in neighbours:
        entry = mass_map.get((left - power * a_i).coeffs)
        if entry is not None:
            total += entry[1]
    return total


def cylinder_mass(system, n):
    """dict coeffs -> (S_sigma(0), total probability of words landing there)."""
    ctx = system.context
    level = {ctx.zero.coeffs: (ctx.zero, Fraction(1))}
    power = ctx.one
    for _ in range(n):
        nxt = {}
        for start, mass in level.values():
            for j, d in enumerate(system.translations):
                v = start + power * d
                p = mass * system.probabilities[j]
                key = v.coeffs
                if key in nxt:
                    nxt[key] = (nxt[key][0], nxt[key][1] + p)
                else:
                    nxt[key] = (v, p)
        level = nxt
        power = power * system.rho
    return level


def matrix_power_entry_sum(rows, exponent):
    """Entry sum of the `exponent`-th power of a rational matrix, exactly.

    Plain list-of-lists arithmetic, independent of the matrix classes under
    test.  The 1/n-th root of this norm always sits at or above the
    spectral radius and squeezes down onto it along doubling exponents.
    """
    n = len(rows)
    rows = [[Fraction(x) for x in row] for row in rows]
    result = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    base = rows
    k = exponent
    while k:
        if k & 1:
            result = [
                [sum(result[i][t] * base[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
        k >>= 1
        if k:
            base = [
                [sum(base[i][t] * base[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
    return sum(sum(row) for row in result)
