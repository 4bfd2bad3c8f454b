"""Sparse symmetric tensors and the degree-d homogenization of polynomials.

A polynomial p of degree at most d in n variables is embedded as a symmetric
order-d tensor T of dimension n+1: index 0 is the homogenizing slot (the
leading 1 of the lifted vector (1, x)).  Each monomial with exponent vector
a contributes the value

    (d - |a|)! a_1! ... a_n! / d!  *  coeff

at every permutation of the index tuple that holds d-|a| zeros and a_i
copies of i.  Only one canonically sorted tuple per monomial is stored;
permutation multiplicity is recovered from the multiset of indices.

These generic routines are deliberately simple (dictionary storage, explicit
permutation sums).  They serve as the correctness oracle for the structured
fast paths in quartic_problem, not as a production tensor library.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial, prod

import numpy as np

__all__ = [
    "MonomialPoly",
    "SymTensor",
    "AugVector",
    "homogenize",
    "eval_via_tensor",
    "multilinear_eval",
    "partial_gradient",
    "frobenius_norm",
    "multiplicity",
    "tensor_to_text",
    "tensor_from_text",
]


@dataclass(frozen=True)
class MonomialPoly:
    """Polynomial in n variables of degree at most d, as a sparse exponent map.

    terms maps exponent tuples (length n, nonnegative ints, sum <= d) to
    real coefficients.  Zero coefficients are dropped on construction.
    """

    n: int
    d: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        if self.d < 0:
            raise ValueError("degree bound must be nonnegative")
        clean = {}
        for expo, coeff in self.terms.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != self.n:
                raise ValueError(f"exponent {expo} has length {len(expo)}, expected {self.n}")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            if sum(expo) > self.d:
                raise ValueError(f"monomial {expo} exceeds degree bound {self.d}")
            if coeff != 0.0:
                clean[expo] = float(coeff)
        object.__setattr__(self, "terms", clean)

    def evaluate(self, x) -> float:
        """Direct evaluation, the reference for all tensor paths."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"point has shape {x.shape}, expected ({self.n},)")
        total = 0.0
        for expo, coeff in self.terms.items():
            total += coeff * prod(x[i] ** e for i, e in enumerate(expo) if e)
        return total


@dataclass(frozen=True)
class SymTensor:
    """Symmetric order-`order` tensor on indices {0, ..., dim-1}.

    entries maps canonically sorted index tuples to per-position values.
    Any permutation of a stored tuple denotes the same entry; explicit
    zeros are dropped.
    """

    order: int
    dim: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        clean = {}
        for key, val in self.entries.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.order:
                raise ValueError(f"index tuple {key} has arity {len(key)}, expected {self.order}")
            if any(i < 0 or i >= self.dim for i in key):
                raise ValueError(f"index out of range in {key}")
            skey = tuple(sorted(key))
            if skey != key and skey in self.entries:
                raise ValueError(f"duplicate entry for {skey} after canonicalization")
            if val != 0.0:
                clean[skey] = float(val)
        object.__setattr__(self, "entries", clean)

    def value_at(self, idx) -> float:
        """Entry lookup for an arbitrary (not necessarily sorted) index tuple."""
        return self.entries.get(tuple(sorted(int(i) for i in idx)), 0.0)


class AugVector:
    """Vector x in R^n together with its lift (1, x) in R^{n+1}."""

    __slots__ = ("body", "_lifted")

    def __init__(self, body, unit=False):
        body = np.asarray(body, dtype=float)
        if body.ndim != 1 or body.size < 1:
            raise ValueError("body must be a nonempty 1-d vector")
        if unit and abs(np.linalg.norm(body) - 1.0) > 1e-12:
            raise ValueError("body flagged unit but its norm is not 1 within 1e-12")
        self.body = body.copy()
        self.body.setflags(write=False)
        self._lifted = np.concatenate(([1.0], self.body))
        self._lifted.setflags(write=False)

    @property
    def lifted(self):
        return self._lifted

    def __len__(self):
        return self.body.size


def _as_lifted(v, dim):
    """Accept an AugVector or a raw length-dim array (arbitrary leading slot)."""
    if isinstance(v, AugVector):
        vec = v.lifted
    else:
        vec = np.asarray(v, dtype=float)
    if vec.shape != (dim,):
        raise ValueError(f"vector has shape {vec.shape}, expected ({dim},)")
    return vec


def multiplicity(key) -> int:
    """Number of distinct permutations of an index tuple."""
    counts = Counter(key)
    m = factorial(len(key))
    for c in counts.values():
        m //= factorial(c)
    return m


def homogenize(p: MonomialPoly, d=None) -> SymTensor:
    """Embed p as a symmetric order-d tensor of dimension n+1.

    The entry stored for a monomial is the per-position value of the
    canonical tuple; multiplying it by the tuple's permutation count
    recovers the coefficient.
    """
    if d is None:
        d = p.d
    if d < p.d:
        raise ValueError(f"target order {d} below polynomial degree bound {p.d}")
    entries = {}
    for expo, coeff in p.terms.items():
        total = sum(expo)
        if total > d:
            raise ValueError(f"monomial {expo} exceeds order {d}")
        key = (0,) * (d - total)
        for i, e in enumerate(expo):
            key = key + (i + 1,) * e
        weight = factorial(d - total)
        for e in expo:
            weight *= factorial(e)
        entries[key] = coeff * weight / factorial(d)
    return SymTensor(order=d, dim=p.n + 1, entries=entries)


def eval_via_tensor(T: SymTensor, x) -> float:
    """<T, lifted^order>: polynomial evaluation through the tensor."""
    vec = _as_lifted(x, T.dim)
    total = 0.0
    for key, val in T.entries.items():
        total += val * multiplicity(key) * prod(vec[i] for i in key)
    return total


def multilinear_eval(T: SymTensor, vs) -> float:
    """Multilinear form of T against order-many vectors (one per slot)."""
    if len(vs) != T.order:
        raise ValueError(f"need {T.order} vectors, got {len(vs)}")
    vecs = [_as_lifted(v, T.dim) for v in vs]
    total = 0.0
    for key, val in T.entries.items():
        s = 0.0
        for perm in set(permutations(key)):
            s += prod(vecs[k][i] for k, i in enumerate(perm))
        total += val * s
    return total


def partial_gradient(T: SymTensor, vs) -> np.ndarray:
    """Contract T against order-1 vectors; drop the homogenizing component.

    Returns the last dim-1 components of the vector G with
    G_j = sum T[j, i_1, ..., i_{order-1}] vs[0][i_1] ... vs[-1][i_{order-1}],
    i.e. the (0, I_n) row selection applied to the full contraction.
    """
    if len(vs) != T.order - 1:
        raise ValueError(f"need {T.order - 1} vectors, got {len(vs)}")
    vecs = [_as_lifted(v, T.dim) for v in vs]
    G = np.zeros(T.dim)
    for key, val in T.entries.items():
        for perm in set(permutations(key)):
            G[perm[0]] += val * prod(vecs[k - 1][i] for k, i in enumerate(perm) if k > 0)
    return G[1:]


def frobenius_norm(T: SymTensor) -> float:
    """Frobenius norm over all dim^order positions (multiplicity-weighted)."""
    return float(np.sqrt(sum(multiplicity(k) * v * v for k, v in T.entries.items())))


def tensor_to_text(T: SymTensor) -> str:
    """One canonical entry per line: `i1 i2 ... id value` with 17 significant digits."""
    lines = [f"{T.order} {T.dim}"]
    for key in sorted(T.entries):
        idx = " ".join(str(i) for i in key)
        lines.append(f"{idx} {T.entries[key]:.17g}")
    return "\n".join(lines) + "\n"


def tensor_from_text(text: str) -> SymTensor:
    """Inverse of tensor_to_text."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty tensor text")
    order, dim = (int(t) for t in lines[0].split())
    entries = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != order + 1:
            raise ValueError(f"malformed entry line: {ln!r}")
        key = tuple(int(t) for t in parts[:order])
        entries[key] = float(parts[order])
    return SymTensor(order=order, dim=dim, entries=entries)
