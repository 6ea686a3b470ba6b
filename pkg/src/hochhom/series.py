"""Poincare series of higher Hochschild and THH calculations over F_p.

Closed-form series come from the word families: each word contributes a
factor per its multiplicative class (exterior, height-p truncated, or
free), and the base letter of the B'/B'' families is bookkept in the
base ring, not in the word factor (basis_note records which).  Group
algebras split as a tensor product of a THH factor and per-factor HH
contributions: Laurent for Z, truncated polynomial for the p-part,
etale (degree 0) for torsion coprime to p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import words as W


@dataclass(frozen=True)
class PoincareSeries:
    """Truncated power series with nonnegative integer coefficients.

    coeffs maps degree -> coefficient (zeros omitted); truncation is the
    last trustworthy degree; basis_note says what the coefficients count
    (F_p-dimensions, or free ranks over a recorded base ring)."""

    coeffs: dict[int, int]
    truncation: int
    basis_note: str = "F_p-dimensions"
    validity: Optional[str] = None

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")
        clean = {}
        for d, c in self.coeffs.items():
            if d < 0:
                raise ValueError("degrees must be nonnegative")
            if c < 0:
                raise ValueError("coefficients must be nonnegative")
            if c and d <= self.truncation:
                clean[int(d)] = int(c)
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, degree: int) -> int:
        if degree > self.truncation:
            raise ValueError(f"degree {degree} beyond truncation {self.truncation}")
        return self.coeffs.get(degree, 0)

    def as_list(self) -> list[int]:
        return [self.coeffs.get(d, 0) for d in range(self.truncation + 1)]

    def convolve(self, other: "PoincareSeries",
                 basis_note: Optional[str] = None,
                 validity: Optional[str] = None) -> "PoincareSeries":
        n = min(self.truncation, other.truncation)
        coeffs = _convolve(self.coeffs, other.coeffs, n)
        return PoincareSeries(coeffs, n,
                              basis_note or self.basis_note,
                              validity if validity is not None else self.validity)

    def same_coefficients(self, other: "PoincareSeries") -> bool:
        n = min(self.truncation, other.truncation)
        return all(self.coeffs.get(d, 0) == other.coeffs.get(d, 0)
                   for d in range(n + 1))

    def text_table(self) -> list[str]:
        width = max(len("deg"), len(str(self.truncation)))
        lines = [f"{'deg':>{width}}  dim"]
        for d in range(self.truncation + 1):
            c = self.coeffs.get(d, 0)
            if c:
                lines.append(f"{d:>{width}}  {c}")
        return lines

    def to_json_dict(self) -> dict:
        out = {
            "base": self.basis_note,
            "coeffs": {str(d): c for d, c in sorted(self.coeffs.items())},
            "truncation": self.truncation,
        }
        if self.validity is not None:
            out["validity"] = self.validity
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for d, c in sorted(self.coeffs.items()):
            if d == 0:
                bits.append(str(c))
            else:
                term = f"t^{d}" if d > 1 else "t"
                bits.append(term if c == 1 else f"{c}*{term}")
        return " + ".join(bits)


def _convolve(a: Mapping[int, int], b: Mapping[int, int],
              truncation: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for d1, c1 in a.items():
        if d1 > truncation:
            continue
        for d2, c2 in b.items():
            d = d1 + d2
            if d <= truncation:
                out[d] = out.get(d, 0) + c1 * c2
    return out


def _geometric(step: int, truncation: int) -> dict[int, int]:
    if step < 1:
        raise ValueError("free factor needs positive degree")
    return {d: 1 for d in range(0, truncation + 1, step)}


def family_series(family: W.WordFamily, n: int, p: int,
                  max_degree: int) -> PoincareSeries:
    """Poincare series of the algebra generated by the length-n words.

    Exterior words give 1 + t^d, divided-power words give a height-p
    truncated factor, the free base letter mu gives 1/(1 - t^d).  The
    bare base letter x of B'/B'' belongs to the base ring and carries no
    factor here."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    coeffs = {0: 1}
    for w in W.enumerate_words(n, family, p, max_degree):
        cls = W.classify(w, family)
        d = W.total_degree(w, p, family)
        if len(w) == 1 and w[0][0] == "x":
            continue  # base ring factor, see basis_note of the callers
        if cls.kind == "free":
            factor = _geometric(d, max_degree)
        elif cls.kind == "exterior":
            factor = {0: 1, d: 1}
        else:  # truncated of height p (height m only for the bare x)
            factor = {j * d: 1 for j in range(p) if j * d <= max_degree}
        coeffs = _convolve(coeffs, factor, max_degree)
    series = PoincareSeries(coeffs, max_degree)
    assert series.coefficient(0) == 1
    return series


def thh_fp(n: int, p: int, max_degree: int) -> PoincareSeries:
    """Series of the n-fold iterated THH of F_p: family B at length n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = family_series(W.family_b(), n, p, max_degree)
    if (p != 2 and n <= 2 * p + 2) or (p == 2 and n <= 3):
        validity = "proved"
    else:
        validity = "conjectural (collapse unproven beyond this range)"
    return PoincareSeries(base.coeffs, max_degree, "F_p-dimensions", validity)


def hh_polynomial(n: int, p: int, max_degree: int) -> PoincareSeries:
    """Order-n Hochschild homology of F_p[x], |x| = 0, as ranks over F_p[x]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = family_series(W.family_bprime(), n + 1, p, max_degree)
    return PoincareSeries(base.coeffs, max_degree,
                          f"free ranks over F_{p}[x]")


def hh_laurent(n: int, p: int, max_degree: int) -> PoincareSeries:
    """Same coefficients as hh_polynomial; the base ring is F_p[x^+-1]."""
    base = hh_polynomial(n, p, max_degree)
    return PoincareSeries(base.coeffs, max_degree,
                          f"free ranks over F_{p}[x^±1]")


def hh_truncated(n: int, p: int, ell: int, max_degree: int) -> PoincareSeries:
    """Order-n Hochschild homology of F_p[x]/x^(p^ell), |x| = 0.

    The ring-level identification holds for p-power truncations; other
    heights are available through hh_truncated_words as a word-calculus
    series only."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if ell < 1:
        raise ValueError(
            "the ring-level series needs a p-power truncation p^ell, ell >= 1; "
            "use hh_truncated_words for other heights (word calculus only)")
    m = p ** ell
    base = family_series(W.family_bdoubleprime(m), n + 1, p, max_degree)
    return PoincareSeries(base.coeffs, max_degree,
                          f"free ranks over F_{p}[x]/x^{m}")


def hh_truncated_words(n: int, p: int, m: int, max_degree: int) -> PoincareSeries:
    """Word-calculus series for a general truncation height m >= 2.

    No ring-level claim is attached unless m is a power of p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 2:
        raise ValueError("truncation height must be >= 2")
    base = family_series(W.family_bdoubleprime(m), n + 1, p, max_degree)
    note = (f"word-calculus series for height {m}; ring identification "
            f"proved only for p-power heights")
    return PoincareSeries(base.coeffs, max_degree, note)


def etale_finite(q: int) -> PoincareSeries:
    """HH of an etale F_p-algebra of dimension q sits in degree 0."""
    if q < 1:
        raise ValueError("dimension must be >= 1")
    return PoincareSeries({0: q}, 0,
                          "F_p-dimensions (etale: concentrated in degree 0)")


_TRIVIAL_NAMES = {"trivial", "0", "1", "e", "()"}


@dataclass(frozen=True)
class GroupSpec:
    """A finitely generated abelian group Z^r x Z/n_1 x ... x Z/n_k."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for order in self.torsion:
            if order < 2:
                raise ValueError(f"torsion order {order} must be >= 2")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Grammar: "Z^r x Z/n1 x Z/n2 ...", "Z" alone, or "trivial"."""
        s = text.strip().replace("×", "x")
        if s.lower() in _TRIVIAL_NAMES:
            return cls()
        rank, torsion = 0, []
        for token in (t.strip() for t in s.split("x")):
            if not token:
                raise ValueError(f"empty factor in group spec {text!r}")
            m = re.fullmatch(r"Z(?:\^(\d+))?", token)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z/(\d+)", token)
            if m:
                order = int(m.group(1))
                if order == 1:
                    continue
                torsion.append(order)
                continue
            raise ValueError(f"cannot parse group factor {token!r}")
        return cls(rank, tuple(torsion))

    def factored_torsion(self) -> list[tuple[int, int]]:
        """Each torsion order as prime powers (q, e), cyclic CRT pieces."""
        out = []
        for order in self.torsion:
            n, q = order, 2
            while q * q <= n:
                if n % q == 0:
                    e = 0
                    while n % q == 0:
                        n //= q
                        e += 1
                    out.append((q, e))
                q += 1
            if n > 1:
                out.append((n, 1))
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{n}" for n in self.torsion)
        return " x ".join(parts) if parts else "trivial"


def hh_group_algebra(group: GroupSpec, n: int, p: int,
                     max_degree: int) -> PoincareSeries:
    """Order-n Hochschild homology of F_p[G] for abelian G, as ranks over
    the recorded base ring: each Z gives a Laurent factor, each p-power
    torsion factor a truncated polynomial factor, torsion coprime to p an
    etale factor in degree 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    series = PoincareSeries({0: 1}, max_degree)
    base_parts: list[str] = []
    for _ in range(group.free_rank):
        series = series.convolve(hh_laurent(n, p, max_degree))
        base_parts.append(f"F_{p}[x^±1]")
    for q, e in group.factored_torsion():
        if q == p:
            series = series.convolve(hh_truncated(n, p, e, max_degree))
            base_parts.append(f"F_{p}[x]/x^{p ** e}")
        else:
            # etale factor, re-truncated so the convolution window survives
            etale = PoincareSeries({0: q ** e}, max_degree,
                                   etale_finite(q ** e).basis_note)
            series = series.convolve(etale)
            base_parts.append(f"F_{p}[C_{q ** e}]")
    note = "free ranks over " + (" (x) ".join(base_parts) if base_parts
                                 else f"F_{p}")
    return PoincareSeries(series.coeffs, max_degree, note)


def thh_group_algebra(group: GroupSpec, n: int, p: int,
                      max_degree: int) -> PoincareSeries:
    """Order-n THH of F_p[G]: the THH factor of F_p convolved with the
    group-algebra Hochschild factors."""
    thh = thh_fp(n, p, max_degree)
    hh = hh_group_algebra(group, n, p, max_degree)
    coeffs = _convolve(thh.coeffs, hh.coeffs, max_degree)
    return PoincareSeries(coeffs, max_degree, hh.basis_note, thh.validity)


def hh_poly_gens(gen_degrees: Sequence[int], n: int, p: int,
                 max_degree: int) -> PoincareSeries:
    """Order-n Hochschild homology series of a polynomial ring on
    generators of the given internal degrees, F_p-dimensions including
    the free base factors 1/(1 - t^d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if p != 2 and any(d % 2 for d in gen_degrees):
        raise ValueError("odd generator degrees need p = 2")
    if any(d < 1 for d in gen_degrees):
        raise ValueError("generator degrees must be >= 1")
    coeffs = {0: 1}
    for d in gen_degrees:
        fam = W.family_bprime(base_degree=d)
        word_part = family_series(fam, n + 1, p, max_degree)
        coeffs = _convolve(coeffs, word_part.coeffs, max_degree)
        coeffs = _convolve(coeffs, _geometric(d, max_degree), max_degree)
    return PoincareSeries(coeffs, max_degree, "F_p-dimensions")
