"""Exhaustive (or seeded-sampled) sweeps of equational laws over finite carriers.

A law is a vectorized predicate over index arrays. ``sweep`` evaluates it on
every tuple of the carrier, or on a fixed-seed random sample when the tuple
space is too large, and records the first counterexample it meets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SAMPLE_SIZE = 100_000
DEFAULT_SEED = 0

# rows of the (x, y, z) grid evaluated per numpy call during ternary sweeps
_BLOCK = 1 << 21


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    checked: int
    sampled: bool = False
    counterexample: tuple | None = None
    detail: str = ""

    def line(self):
        mode = "sampled" if self.sampled else "exhaustive"
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} ({mode}, {self.checked} tuples)"
        if self.detail:
            text += f": {self.detail}"
        return text


@dataclass
class Report:
    """Ordered collection of law results with a pass/fail verdict."""

    title: str
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.ok

    @property
    def failures(self):
        return [r for r in self.results if not r.passed]

    @property
    def sampled(self):
        return any(r.sampled for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self):
        return [r.name for r in self.results]

    def add(self, result):
        self.results.append(result)
        return result

    def extend(self, other):
        self.results.extend(other.results)

    def lines(self):
        return [r.line() for r in self.results]

    def __str__(self):
        return "\n".join([self.title, *("  " + s for s in self.lines())])


def _first_failure(ok, columns):
    bad = np.flatnonzero(~ok)
    if bad.size == 0:
        return None
    k = bad[0]
    return tuple(int(c[k]) for c in columns)


def sweep(name, arity, holds, size, *, exhaustive=True, samples=SAMPLE_SIZE,
          rng=None, render=None):
    """Check ``holds(*xs)`` on all ``arity``-tuples over ``range(size)``.

    With ``exhaustive=False`` a sample of ``samples`` tuples is drawn from
    ``rng`` instead. ``render`` turns a counterexample tuple into text.
    """
    if size == 0:
        return AxiomResult(name, True, 0, not exhaustive)
    if not exhaustive:
        if rng is None:
            rng = np.random.default_rng(DEFAULT_SEED)
        cols = [rng.integers(0, size, samples) for _ in range(arity)]
        ok = np.asarray(holds(*cols), dtype=bool)
        bad = _first_failure(ok, cols)
        return _result(name, bad, samples, True, render)

    if arity <= 2:
        grids = np.meshgrid(*([np.arange(size)] * arity), indexing="ij")
        cols = [g.ravel() for g in grids]
        ok = np.asarray(holds(*cols), dtype=bool)
        return _result(name, _first_failure(ok, cols), size ** arity, False, render)

    if arity != 3:
        raise ValueError("only arities 1, 2 and 3 are supported")
    yz = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    y0, z0 = yz[0].ravel(), yz[1].ravel()
    step = max(1, _BLOCK // (size * size))
    for start in range(0, size, step):
        xs = np.arange(start, min(start + step, size))
        x = np.repeat(xs, size * size)
        y = np.tile(y0, xs.size)
        z = np.tile(z0, xs.size)
        ok = np.asarray(holds(x, y, z), dtype=bool)
        bad = _first_failure(ok, (x, y, z))
        if bad is not None:
            return _result(name, bad, size ** 3, False, render)
    return AxiomResult(name, True, size ** 3, False)


def _result(name, bad, checked, sampled, render):
    if bad is None:
        return AxiomResult(name, True, checked, sampled)
    detail = "counterexample " + (render(bad) if render else str(bad))
    return AxiomResult(name, False, checked, sampled, bad, detail)
