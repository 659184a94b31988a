"""Regenerate the bundled newform fixtures without network access.

Each newform is derived independently of the qlift package: q-expansions are
built here from plain integer lists, and the newform is pinned down as an exact
eigenvector of U_p operators on a basis of eta-quotients (or, for level one, as
(E4^3 - E6^2)/1728).  Usage: python tools/make_lmfdb_fixtures.py [outdir]
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from math import gcd
from pathlib import Path

COUNT = {"1.12.a.a": 100, "6.12.a.a": 100, "2.20.a.a": 100}


def mul(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[:n - i]):
                out[i + j] += x * y
    return out


def euler_power(r: int, n: int, step: int = 1) -> list:
    """prod_{m >= 1} (1 - q^(step m))^r to n terms, by repeated (de)multiplication."""
    out = [1] + [0] * (n - 1)
    for m in range(step, n, step):
        for _ in range(abs(r)):
            if r > 0:
                for i in range(n - 1, m - 1, -1):
                    out[i] -= out[i - m]
            else:
                for i in range(m, n):
                    out[i] += out[i - m]
    return out


def eta_product(exps: dict, n: int) -> list | None:
    """prod eta(d z)^r_d on the integer grid (None if the q-power is not integral)."""
    shift = sum(d * r for d, r in exps.items())
    if shift % 24:
        return None
    shift //= 24
    if shift < 0 or shift >= n:
        return None
    series = [1] + [0] * (n - 1)
    for d, r in exps.items():
        series = mul(series, euler_power(r, n, d), n)
    return [0] * shift + series[:n - shift]


def sigma(n: int, k: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def delta_from_eisenstein(n: int) -> list:
    e4 = [1] + [240 * sigma(m, 3) for m in range(1, n)]
    e6 = [1] + [-504 * sigma(m, 5) for m in range(1, n)]
    e4c = mul(mul(e4, e4, n), e4, n)
    e6s = mul(e6, e6, n)
    return [(x - y) // 1728 for x, y in zip(e4c, e6s)]


def cusp_orders_positive(exps: dict, level: int) -> bool:
    for c in (d for d in range(1, level + 1) if level % d == 0):
        total = sum(Fraction(gcd(c, d) ** 2 * r, d) for d, r in exps.items())
        if total <= 0:
            return False
    return True


def eta_basis(level: int, weight: int, bound: int, n: int, dim: int) -> list:
    """Independent holomorphic-cusp eta-quotients of the given level and weight."""
    divs = [d for d in range(1, level + 1) if level % d == 0]
    found = []
    rows = []
    for exps_t in itertools.product(range(-bound, bound + 1), repeat=len(divs)):
        if sum(exps_t) != 2 * weight:
            continue
        exps = dict(zip(divs, exps_t))
        if sum(d * r for d, r in exps.items()) % 24:
            continue
        if sum(level // d * r for d, r in exps.items()) % 24:
            continue
        prod = 1
        for d, r in exps.items():
            prod *= d ** (r % 2)
        if int(prod ** 0.5) ** 2 != prod:
            continue
        if not cusp_orders_positive(exps, level):
            continue
        f = eta_product(exps, n)
        if f is None:
            continue
        if _independent(rows, f):
            rows.append(f)
            found.append((exps, f))
            if len(found) == dim:
                break
    if len(found) < dim:
        raise RuntimeError(f"only {len(found)} independent eta-quotients found")
    return [f for _, f in found]


def _rank(rows: list) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                t = m[i][c] / m[rank][c]
                m[i] = [a - t * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _independent(rows: list, f: list) -> bool:
    return _rank(rows + [f]) == len(rows) + 1


def null_space(eqs: list, nvars: int) -> list:
    m = [[Fraction(x) for x in r] for r in eqs]
    pivots = []
    rank = 0
    for c in range(nvars):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                t = m[i][c]
                m[i] = [a - t * b for a, b in zip(m[i], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nvars
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def eigenform(basis: list, eigen: dict, n_out: int, n_eq: int) -> list:
    """The unique combination with f | U_p = lambda_p f (p in eigen), a(1) = 1."""
    eqs = []
    for p, lam in eigen.items():
        for m in range(n_eq):
            eqs.append([b[p * m] - lam * b[m] for b in basis])
    sol = null_space(eqs, len(basis))
    if len(sol) != 1:
        raise RuntimeError(f"eigenspace has dimension {len(sol)}, expected 1")
    v = sol[0]
    f = [sum(c * b[m] for c, b in zip(v, basis)) for m in range(n_out + 1)]
    if f[1] == 0:
        raise RuntimeError("eigenvector has a(1) = 0")
    scale = 1 / f[1]
    out = [x * scale for x in f]
    if any(x.denominator != 1 for x in out):
        raise RuntimeError("non-integral normalized coefficients")
    return [int(x) for x in out]


def derive(label: str, count: int) -> list:
    """a(1..count) for one of the bundled labels."""
    if label == "1.12.a.a":
        return delta_from_eisenstein(count + 1)[1:]
    if label == "6.12.a.a":
        n_eq = 40
        n = max(3 * n_eq, count + 1)
        basis = eta_basis(6, 12, 24, n, 9)
        return eigenform(basis, {2: -32, 3: -243}, count, n_eq)[1:]
    if label == "2.20.a.a":
        n_eq = 40
        n = max(2 * n_eq, count + 1)
        basis = eta_basis(2, 20, 64, n, 4)
        return eigenform(basis, {2: -512}, count, n_eq)[1:]
    raise KeyError(label)


def render(label: str, coeffs: list) -> str:
    level, weight = label.split(".")[:2]
    head = f"{label} {weight} {level} {len(coeffs)}"
    return "\n".join([head] + [str(c) for c in coeffs]) + "\n"


def main(argv: list[str]) -> int:
    root = Path(__file__).resolve().parent.parent
    out = Path(argv[1]) if len(argv) > 1 else root / "src" / "qlift" / "data" / "lmfdb"
    out.mkdir(parents=True, exist_ok=True)
    for label, count in COUNT.items():
        coeffs = derive(label, count)
        (out / f"{label}.txt").write_text(render(label, coeffs))
        print(f"{label}: {' '.join(map(str, coeffs[:5]))} ...")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
