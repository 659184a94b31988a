"""Weight/level/character/multiplier records and their behaviour under U, V, twists."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gcd

from ..chars import RealChar


class UncoveredTransition(ValueError):
    """No known rule gives the space that an operator maps this form into."""


@dataclass(frozen=True)
class FormMeta:
    """M_{weight2/2}(level, character * nu_eta^eta_power)."""

    weight2: int
    level: int
    character: RealChar = RealChar()
    eta_power: int = 0
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        object.__setattr__(self, "eta_power", self.eta_power % 24)
        if (self.weight2 % 2) != (self.eta_power % 2):
            raise ValueError("half-integral weight requires an odd eta power and conversely")

    @property
    def is_half_integral(self) -> bool:
        return self.weight2 % 2 == 1

    @property
    def kappa(self) -> int:
        """k with weight k + 1/2 (half-integral) or weight k (integral)."""
        return self.weight2 // 2


def _bottom(p: int) -> RealChar:
    return RealChar.legendre_bottom(p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def uv_meta_transition(meta: FormMeta, op: str, p: int = 1,
                       psi: RealChar | None = None) -> FormMeta:
    """Space reached by `op` in {"U", "V", "twist"} with parameter p (or psi)."""
    N, chi, r = meta.level, meta.character, meta.eta_power
    if op == "twist":
        if psi is None:
            raise UncoveredTransition("twist needs a character")
        m = psi.modulus
        if r == 0:
            return replace(meta, level=N * m * m, character=chi * psi * psi)
        if p >= 5 and _is_prime(p) and all(psi(n) == _bottom(p)(n) for n in range(1, 4 * p + 1)):
            return replace(meta, level=N * p * p)
        raise UncoveredTransition(f"twist by {psi} on an eta-multiplier form")
    if op not in ("U", "V"):
        raise UncoveredTransition(f"unknown operator {op!r}")
    if p == 1:
        return meta
    if r == 0:
        # integer weight, trivial multiplier: classical level bookkeeping
        if op == "V":
            return replace(meta, level=N * p)
        return replace(meta, level=N if N % p == 0 else N * p)
    if not _is_prime(p):
        raise UncoveredTransition(f"{op}_{p} with composite p on an eta-multiplier form")
    if p >= 5:
        level = N * p if op == "V" else N * p // gcd(N, p)
        return replace(meta, level=level, character=chi * _bottom(p), eta_power=p * r)
    if p == 3:
        chi3 = _bottom(3) if r % 2 else RealChar(indicator_mod=3)
        if op == "U":
            if r % 3:
                raise UncoveredTransition("U_3 needs 3 | r")
            if N % 3:
                level = 3 * N
                character = chi if r % 6 == 0 else chi * chi3
            elif N % 9:
                level, character = N, chi * chi3
            else:
                level, character = N // 3, chi * chi3
            return replace(meta, level=level, character=character, eta_power=3 * r)
        level = 3 * N if (N % 3 == 0 or r % 3 == 0) else 9 * N
        return replace(meta, level=level, character=chi * chi3, eta_power=3 * r)
    # p == 2
    if op == "V":
        if r % 2:
            raise UncoveredTransition("V_2 on an odd eta power leaves the eta-multiplier family")
        half = r // 2
        character = chi * RealChar(top=-4) if half % 2 else chi
        return replace(meta, level=8 * N // gcd(4, N), character=character, eta_power=2 * r)
    if r % 2:
        raise UncoveredTransition("U_2 on an odd eta power")
    # the power is only known mod 24, so the finer 16 | r case is not distinguished
    if r % 4 == 0:
        return replace(meta, level=4 * N, eta_power=2 * r)
    half = r // 2
    character = chi * RealChar(top=-4) if half % 2 else chi
    return replace(meta, level=8 * N, character=character, eta_power=2 * r)
