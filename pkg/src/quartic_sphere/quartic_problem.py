"""Structured quartic-quadratic objective on the unit sphere.

    f(x) = (theta/2) sum_i x_i^4 + x' B x,    ||x|| = 1

with a shift alpha that augments f into f_alpha(x) = f(x) - alpha (1 + ||x||^2)^2
(constant -4 alpha on the sphere) and a four-block multilinear extension
F_alpha used by the alternating solver.  Every structured formula here is
checked against the generic tensor_core paths in the test suite.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import tensor_core as tc

__all__ = ["QuarticProblem", "BlockState", "BLOCK_IDS"]

BLOCK_IDS = ("x", "y", "z", "w")


@dataclass
class BlockState:
    """The four unit-vector blocks of the multilinear problem."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    w: np.ndarray

    @classmethod
    def from_single(cls, u):
        u = np.asarray(u, dtype=float)
        return cls(u.copy(), u.copy(), u.copy(), u.copy())

    def blocks(self):
        return [self.x, self.y, self.z, self.w]

    def get(self, which):
        if which not in BLOCK_IDS:
            raise ValueError(f"unknown block id {which!r}")
        return getattr(self, which)

    def set(self, which, value):
        if which not in BLOCK_IDS:
            raise ValueError(f"unknown block id {which!r}")
        setattr(self, which, value)

    def copy(self):
        return BlockState(self.x.copy(), self.y.copy(), self.z.copy(), self.w.copy())

    def stacked(self):
        return np.concatenate(self.blocks())


class QuarticProblem:
    """Instance data (theta, B, alpha) with fast evaluators and gradients.

    B is stored as symmetric CSR; the input must be exactly symmetric.
    alpha=None selects the theory-safe default ||T_f||_F (closed form),
    the shift under which the augmented objective is certified concave
    in the paper's sense.
    """

    def __init__(self, theta, B, alpha=None):
        if theta < 0:
            raise ValueError("theta must be nonnegative")
        if sp.issparse(B):
            Bs = sp.csr_matrix(B, dtype=float)
            if (Bs != Bs.T).nnz != 0:
                raise ValueError("B must be exactly symmetric")
        else:
            Bd = np.asarray(B, dtype=float)
            if Bd.ndim != 2 or Bd.shape[0] != Bd.shape[1]:
                raise ValueError("B must be square")
            if not np.array_equal(Bd, Bd.T):
                raise ValueError("B must be exactly symmetric")
            Bs = sp.csr_matrix(Bd)
        self.theta = float(theta)
        self.B = Bs
        self.n = Bs.shape[0]
        self._tensor = None
        self._B_dense = None
        self.alpha = self.tensor_norm() if alpha is None else float(alpha)
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")

    # -- instance helpers ------------------------------------------------

    def with_alpha(self, alpha):
        """Same (theta, B) under a different shift; B is shared, not copied."""
        clone = QuarticProblem.__new__(QuarticProblem)
        clone.theta = self.theta
        clone.B = self.B
        clone.n = self.n
        clone._tensor = self._tensor
        clone._B_dense = self._B_dense
        clone.alpha = float(alpha)
        if clone.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        return clone

    def B_dense(self):
        if self._B_dense is None:
            self._B_dense = self.B.toarray()
        return self._B_dense

    def to_poly(self) -> tc.MonomialPoly:
        """The defining polynomial as an explicit monomial map."""
        terms = {}
        n = self.n
        if self.theta != 0.0:
            for i in range(n):
                e = [0] * n
                e[i] = 4
                terms[tuple(e)] = self.theta / 2.0
        Bc = self.B.tocoo()
        for i, j, v in zip(Bc.row, Bc.col, Bc.data):
            if j < i or v == 0.0:
                continue
            e = [0] * n
            if i == j:
                e[i] = 2
                coeff = v
            else:
                e[i] = 1
                e[j] = 1
                coeff = 2.0 * v
            terms[tuple(e)] = terms.get(tuple(e), 0.0) + coeff
        return tc.MonomialPoly(n=n, d=4, terms=terms)

    def tensor(self) -> tc.SymTensor:
        """Order-4 homogenization of f, built lazily and cached."""
        if self._tensor is None:
            self._tensor = tc.homogenize(self.to_poly(), d=4)
        return self._tensor

    def tensor_norm(self) -> float:
        """Closed-form Frobenius norm of the homogenization of f.

        Canonical entries and multiplicities: (i,i,i,i) value theta/2 times 1,
        permutations of (0,0,i,i) value b_ii/6 times 6, permutations of
        (0,0,i,j) value b_ij/6 times 12.
        """
        diag = self.B.diagonal()
        upper = sp.triu(self.B, k=1)
        off_sq = float(np.sum(upper.data**2)) if upper.nnz else 0.0
        return float(
            np.sqrt(self.n * self.theta**2 / 4.0 + np.sum(diag**2) / 6.0 + off_sq / 3.0)
        )

    # -- objective values ------------------------------------------------

    def f_value(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"point has shape {x.shape}, expected ({self.n},)")
        return float(0.5 * self.theta * np.sum(x**4) + x @ (self.B @ x))

    def f_alpha_value(self, x) -> float:
        """f(x) - alpha (1 + ||x||^2)^2; equals f(x) - 4 alpha on the sphere."""
        x = np.asarray(x, dtype=float)
        return self.f_value(x) - self.alpha * (1.0 + float(x @ x)) ** 2

    def F_alpha_value(self, state: BlockState) -> float:
        """Four-block multilinear extension with the fixed shift pairing.

        The shift couples the lifted (x, y) pair with the lifted (z, w) pair:
        -alpha (1 + <x,y>) (1 + <z,w>).
        """
        x, y, z, w = state.blocks()
        quartic = 0.5 * self.theta * float(np.sum(x * y * z * w))
        Bx, By, Bz = self.B @ x, self.B @ y, self.B @ z
        quad = (
            float(x @ By) + float(x @ Bz) + float(x @ (self.B @ w))
            + float(y @ Bz) + float(w @ By) + float(w @ Bz)
        ) / 6.0
        shift = self.alpha * (1.0 + float(x @ y)) * (1.0 + float(z @ w))
        return quartic + quad - shift

    # -- gradients ---------------------------------------------------------

    def grad_f(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return 2.0 * self.theta * x**3 + 2.0 * (self.B @ x)

    def grad_f_alpha(self, x) -> np.ndarray:
        """Ambient gradient of f_alpha at a unit point: 2 theta x^3 + 2Bx - 8 alpha x."""
        x = np.asarray(x, dtype=float)
        return self.grad_f(x) - 8.0 * self.alpha * x

    def block_gradient(self, state: BlockState, which) -> np.ndarray:
        """Gradient of F_alpha in one block, the others held fixed.

        For block x: theta/2 (y*z*w) + B(y+z+w)/6 - alpha (1+<z,w>) y.
        The shift partner and opposite pair follow the fixed pairing:
        x and y are partners under <x~, y~>, z and w under <z~, w~>.
        """
        x, y, z, w = state.x, state.y, state.z, state.w
        if which == "x":
            p1, p2, p3, partner, pair = y, z, w, y, float(z @ w)
        elif which == "y":
            p1, p2, p3, partner, pair = x, z, w, x, float(z @ w)
        elif which == "z":
            p1, p2, p3, partner, pair = x, y, w, w, float(x @ y)
        elif which == "w":
            p1, p2, p3, partner, pair = x, y, z, z, float(x @ y)
        else:
            raise ValueError(f"unknown block id {which!r}")
        return (
            0.5 * self.theta * (p1 * p2 * p3)
            + (self.B @ (p1 + p2 + p3)) / 6.0
            - self.alpha * (1.0 + pair) * partner
        )

    # -- second order (test-only, routed through tensor_core) --------------

    def hessian_quadform(self, u, v) -> float:
        """v' Hess(f_alpha)(u) v for arbitrary u, v in R^{n+1}.

        12 T[u,u,v,v] - 8 alpha <u,v>^2 - 4 alpha ||u||^2 ||v||^2, with the
        tensor contraction done by the generic multilinear evaluator.
        """
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if u.shape != (self.n + 1,) or v.shape != (self.n + 1,):
            raise ValueError(f"u, v must have length {self.n + 1}")
        quu_vv = tc.multilinear_eval(self.tensor(), [u, u, v, v])
        return (
            12.0 * quu_vv
            - 8.0 * self.alpha * float(u @ v) ** 2
            - 4.0 * self.alpha * float(u @ u) * float(v @ v)
        )
