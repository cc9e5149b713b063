"""LP route to shared stable matchings: model, exact solve, theta-rounding.

The feasibility program has one variable per worker-firm pair, row and column
sums pinned to 1, and, per source instance, one inequality per pair saying
"if w is matched below f then f is matched above w".  Everything runs in
exact rational arithmetic: a feasible vertex is certified by the scaled
integer simplex, and for a single instance every vertex is a 0/1 stable
matching.  Rounding aligns each worker's unit interval (best firm first)
with each firm's reversed one and reads the matching off a shared theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import Instance, Matching
from .errors import BoundaryTheta, ValidationError
from .outcomes import _Sentinel
from .simplex import solve_feasibility

#: exact rationals everywhere; no floats in feasibility or rounding paths
Rational = Fraction

#: model has no feasible point
INFEASIBLE = _Sentinel("Infeasible")


@dataclass(frozen=True)
class LPModel:
    """Joint stability program over one or more instances on shared agents."""

    n: int
    instances: tuple[Instance, ...]

    @property
    def num_vars(self) -> int:
        return self.n * self.n

    def var(self, w: int, f: int) -> int:
        return (w - 1) * self.n + (f - 1)

    def counts(self) -> dict[str, int]:
        """Constraint rows by family: 2n equalities, k*n^2 stability, n^2 nonneg."""
        return {"equality": 2 * self.n,
                "stability": len(self.instances) * self.n * self.n,
                "nonnegativity": self.n * self.n}

    def equality_rows(self) -> Iterator[tuple[list[int], int]]:
        n = self.n
        for w in range(1, n + 1):
            row = [0] * self.num_vars
            for f in range(1, n + 1):
                row[self.var(w, f)] = 1
            yield row, 1
        for f in range(1, n + 1):
            row = [0] * self.num_vars
            for w in range(1, n + 1):
                row[self.var(w, f)] = 1
            yield row, 1

    def stability_rows(self) -> Iterator[tuple[list[int], int]]:
        """For each instance and pair (w, f):
        sum of x over firms w ranks below f minus sum of x over workers f
        ranks above w, <= 0."""
        n = self.n
        for inst in self.instances:
            for w in range(1, n + 1):
                for f in range(1, n + 1):
                    row = [0] * self.num_vars
                    rank_f = inst.wrank(w, f)
                    for g in range(1, n + 1):
                        if inst.wrank(w, g) > rank_f:
                            row[self.var(w, g)] += 1
                    rank_w = inst.frank(f, w)
                    for u in range(1, n + 1):
                        if inst.frank(f, u) < rank_w:
                            row[self.var(u, f)] -= 1
                    yield row, 0

    def export_text(self) -> str:
        """Human-readable listing, one constraint per line, exact coefficients."""
        def terms(row):
            parts = []
            for idx, c in enumerate(row):
                if c == 0:
                    continue
                w, f = divmod(idx, self.n)
                name = f"x_{w + 1}_{f + 1}"
                parts.append(f"+ {name}" if c > 0 else f"- {name}")
            return " ".join(parts) if parts else "0"

        lines = [f"# joint stability program: n={self.n}, "
                 f"instances={len(self.instances)}"]
        for row, rhs in self.equality_rows():
            lines.append(f"{terms(row)} = {rhs}")
        for row, rhs in self.stability_rows():
            lines.append(f"{terms(row)} <= {rhs}")
        lines.append("x_w_f >= 0 for all w, f")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FractionalMatching:
    """Doubly stochastic matrix of exact rationals satisfying a model."""

    n: int
    values: tuple[tuple[Fraction, ...], ...]

    def value(self, w: int, f: int) -> Fraction:
        return self.values[w - 1][f - 1]

    def row_sums(self) -> list[Fraction]:
        return [sum(row) for row in self.values]

    def col_sums(self) -> list[Fraction]:
        return [sum(row[j] for row in self.values) for j in range(self.n)]

    def is_integral(self) -> bool:
        return all(v == 0 or v == 1 for row in self.values for v in row)

    def as_matching(self) -> Matching:
        if not self.is_integral():
            raise ValidationError("fractional matrix is not 0/1")
        firms = [0] * self.n
        for w in range(1, self.n + 1):
            for f in range(1, self.n + 1):
                if self.value(w, f) == 1:
                    firms[w - 1] = f
        return Matching(firms)

    @classmethod
    def from_matching(cls, m: Matching) -> "FractionalMatching":
        values = tuple(tuple(Fraction(1) if m.firm_of(w) == f else Fraction(0)
                             for f in range(1, m.n + 1))
                       for w in range(1, m.n + 1))
        return cls(m.n, values)


def build_lp(instances: Sequence[Instance]) -> LPModel:
    if not instances:
        raise ValueError("need at least one instance")
    n = instances[0].n
    if any(inst.n != n for inst in instances):
        raise ValidationError("instances must share n")
    return LPModel(n, tuple(instances))


def solve_feasible(model: LPModel):
    """Exact vertex of the model's polytope, or INFEASIBLE."""
    x = solve_feasibility(model.num_vars,
                          list(model.equality_rows()),
                          list(model.stability_rows()))
    if x is None:
        return INFEASIBLE
    n = model.n
    values = tuple(tuple(x[model.var(w, f)] for f in range(1, n + 1))
                   for w in range(1, n + 1))
    return FractionalMatching(n, values)


def _locate(theta: Fraction, lengths: list[Fraction]) -> int:
    """Index of the subinterval containing theta; boundaries are errors."""
    cum = Fraction(0)
    for i, length in enumerate(lengths):
        if length == 0:
            continue
        nxt = cum + length
        if cum < theta < nxt:
            return i
        if theta == cum or theta == nxt:
            if (theta == 0 and cum == 0) or (theta == 1 and nxt == 1):
                return i
            raise BoundaryTheta(f"theta={theta} is a subinterval breakpoint")
        cum = nxt
    raise ValidationError("subinterval lengths do not sum to 1")


def theta_round(x: FractionalMatching, inst: Instance, theta: Fraction) -> Matching:
    """Integral matching read off the aligned unit intervals at theta.

    Worker intervals are laid out most-preferred firm first, firm intervals
    least-preferred worker first; zero-length subintervals are skipped.
    Raises BoundaryTheta when theta hits a breakpoint (retry with another).
    """
    theta = Fraction(theta)
    if not 0 <= theta <= 1:
        raise ValueError("theta must lie in [0, 1]")
    n = x.n
    mu = []
    for w in range(1, n + 1):
        order = inst.worker_prefs[w - 1]
        idx = _locate(theta, [x.value(w, f) for f in order])
        mu.append(order[idx])
    nu = []
    for f in range(1, n + 1):
        order = list(reversed(inst.firm_prefs[f - 1]))
        idx = _locate(theta, [x.value(w, f) for w in order])
        nu.append(order[idx])
    m = Matching(mu)                             # raises if mu is not a bijection
    if any(m.worker_of(f) != nu[f - 1] for f in range(1, n + 1)):
        raise ValidationError("worker and firm interval readings disagree; "
                              "x is not feasible for this instance")
    return m


def rounding_agreement(x: FractionalMatching, a: Instance, b: Instance,
                       thetas: Sequence[Fraction]):
    """None when every sampled theta rounds to the same matching under a and b,
    else the first witness (theta, matching_under_a, matching_under_b)."""
    for theta in thetas:
        ma = theta_round(x, a, theta)
        mb = theta_round(x, b, theta)
        if ma != mb:
            return (theta, ma, mb)
    return None


def theta_samples(count: int, seed: int = 0) -> list[Fraction]:
    """Deterministic interior thetas: a coarse grid plus seeded rationals."""
    import random
    grid = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    rng = random.Random(seed)
    out = list(grid)
    while len(out) < count:
        den = rng.randrange(97, 1009)
        num = rng.randrange(1, den)
        out.append(Fraction(num, den))
    return out[:count]
