"""Self-contained dense real eigensolver.

Pipeline: Householder reduction to Hessenberg form, Francis implicit
double-shift QR with deflation to real Schur form, eigenvalue extraction
from the 1x1/2x2 diagonal blocks, right eigenvectors by inverse iteration
on real shifted systems, and left eigenvectors from the inverse of the
real eigenvector basis (which enforces biorthogonality up to solve error).

Complex pairs are represented throughout by real/imaginary splits; no
complex arithmetic is used.
"""

from dataclasses import dataclass

import numpy as np

from . import densecore as dc
from .densecore import EPS
from .errors import (
    AccuracyError,
    ConvergenceError,
    InternalError,
    NotDiagonalizableError,
    ShapeError,
)

MAX_SWEEPS_PER_N = 30
_INVERSE_ITER_CAP = 8
_START_SEED = 0x9E3779B9


@dataclass(frozen=True)
class RealEigenvalue:
    alpha: float


@dataclass(frozen=True)
class ComplexPairEigenvalue:
    """One conjugate pair sigma +- i*omega, stored via its omega > 0 member."""

    sigma: float
    omega: float

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValueError(f"pair representative needs omega > 0, got {self.omega}")


@dataclass(frozen=True)
class ComplexVectorSplit:
    """Real and imaginary parts of a complex vector."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        if self.re.shape != self.im.shape:
            raise ShapeError(
                f"split parts differ in shape: {self.re.shape} vs {self.im.shape}"
            )

    def norm(self):
        return float(np.sqrt(np.sum(self.re**2) + np.sum(self.im**2)))


@dataclass(frozen=True)
class EigenSystem:
    """Aligned eigenvalues and right/left eigenvectors of a real matrix.

    Entries of right/left are real vectors for RealEigenvalue slots and
    ComplexVectorSplit for ComplexPairEigenvalue slots.  Left vectors are
    scaled so that d_i^dag b_j = delta_ij.
    """

    eigenvalues: tuple
    right: tuple
    left: tuple
    dim: int
    basis_rcond: float


def _house_vec(x):
    """Unit reflector direction v with (I - 2 v v^T) x = alpha e1, or None."""
    normx = np.linalg.norm(x)
    if normx == 0.0:
        return None
    v = x.astype(float).copy()
    v[0] += normx if v[0] >= 0.0 else -normx
    nv = np.linalg.norm(v)
    if nv == 0.0:
        return None
    return v / nv


def hessenberg_reduce(m):
    """Householder similarity reduction. Returns (H, Q) with Q H Q^T = M."""
    a = dc.as_matrix(m)
    n = a.shape[0]
    if n != a.shape[1]:
        raise ShapeError(f"hessenberg of non-square {a.shape}")
    q = np.eye(n)
    for k in range(n - 2):
        v = _house_vec(a[k + 1:, k])
        if v is None:
            continue
        a[k + 1:, k:] -= 2.0 * np.outer(v, v @ a[k + 1:, k:])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v)
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v)
        a[k + 2:, k] = 0.0
    return a, q


def _apply_reflector(t, z, k, v):
    """Similarity-apply reflector on rows/cols k..k+len(v)-1, accumulate in z."""
    j = k + v.shape[0]
    t[k:j, :] -= 2.0 * np.outer(v, v @ t[k:j, :])
    t[:, k:j] -= 2.0 * np.outer(t[:, k:j] @ v, v)
    z[:, k:j] -= 2.0 * np.outer(z[:, k:j] @ v, v)


def _francis_step(t, z, lo, hi, s, p):
    """One implicit double-shift sweep on the active block [lo, hi].

    s and p are the sum and product of the two shifts.
    """
    x = t[lo, lo] * t[lo, lo] + t[lo, lo + 1] * t[lo + 1, lo] - s * t[lo, lo] + p
    y = t[lo + 1, lo] * (t[lo, lo] + t[lo + 1, lo + 1] - s)
    w = t[lo + 2, lo + 1] * t[lo + 1, lo]
    for k in range(lo, hi - 1):
        v = _house_vec(np.array([x, y, w]))
        if v is not None:
            _apply_reflector(t, z, k, v)
        if k > lo:
            # the reflector zeroed the bulge column below the subdiagonal
            t[k + 1, k - 1] = 0.0
            t[k + 2, k - 1] = 0.0
        x = t[k + 1, k]
        y = t[k + 2, k]
        w = t[k + 3, k] if k < hi - 2 else 0.0
    v = _house_vec(np.array([x, y]))
    if v is not None:
        _apply_reflector(t, z, hi - 1, v)
    if hi - 1 > lo:
        t[hi, hi - 2] = 0.0


def _split_2x2(t, z, l):
    """Triangularize the 2x2 block at l if its eigenvalues are real."""
    a, b = t[l, l], t[l, l + 1]
    c, d = t[l + 1, l], t[l + 1, l + 1]
    mid = (a + d) / 2.0
    disc = ((a - d) / 2.0) ** 2 + b * c
    if disc < 0.0:
        return False  # genuine complex pair, keep the block
    sq = np.sqrt(disc)
    lam = mid + sq if mid >= 0.0 else mid - sq
    # eigenvector of the block for lam, from the better-scaled row
    v1 = np.array([b, lam - a])
    v2 = np.array([lam - d, c])
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    nv = np.linalg.norm(v)
    if nv > 0.0:
        v /= nv
        g = np.array([[v[0], -v[1]], [v[1], v[0]]])
        t[:, l:l + 2] = t[:, l:l + 2] @ g
        t[l:l + 2, :] = g.T @ t[l:l + 2, :]
        z[:, l:l + 2] = z[:, l:l + 2] @ g
    t[l + 1, l] = 0.0
    return True


def real_schur(h, q, tol=None, max_sweeps=None):
    """Francis double-shift QR with deflation.

    Returns (T, Z) with T quasi-upper-triangular (every surviving 2x2
    diagonal block has complex eigenvalues) and Z T Z^T = Q H Q^T.
    """
    t = dc.as_matrix(h)
    z = dc.as_matrix(q)
    n = t.shape[0]
    norm_h = dc.frobenius_norm(t)
    if tol is None:
        tol = n * EPS * norm_h
    if max_sweeps is None:
        max_sweeps = MAX_SWEEPS_PER_N * max(n, 1)
    sweeps = 0
    block_iters = 0
    hi = n - 1
    while hi > 0:
        # scan for a negligible subdiagonal above hi
        l = hi
        while l > 0:
            thr = EPS * (abs(t[l - 1, l - 1]) + abs(t[l, l]))
            if thr == 0.0:
                thr = tol if tol > 0.0 else EPS
            if abs(t[l, l - 1]) <= thr:
                t[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            block_iters = 0
        elif l == hi - 1:
            _split_2x2(t, z, l)
            hi -= 2
            block_iters = 0
        else:
            if sweeps >= max_sweeps:
                raise ConvergenceError(hi, sweeps)
            if block_iters > 0 and block_iters % 10 == 0:
                # exceptional shift to break symmetry-induced cycles
                ex = abs(t[hi, hi - 1]) + abs(t[hi - 1, hi - 2])
                shift = t[hi, hi] + 0.75 * ex
                s, p = 2.0 * shift, shift * shift
            else:
                s = t[hi - 1, hi - 1] + t[hi, hi]
                p = t[hi - 1, hi - 1] * t[hi, hi] - t[hi - 1, hi] * t[hi, hi - 1]
            _francis_step(t, z, l, hi, s, p)
            sweeps += 1
            block_iters += 1
    # a 2x2 block may remain at the top of the matrix
    if n >= 2 and t[1, 0] != 0.0:
        thr = EPS * (abs(t[0, 0]) + abs(t[1, 1]))
        if abs(t[1, 0]) <= (thr if thr > 0.0 else EPS):
            t[1, 0] = 0.0
        else:
            _split_2x2(t, z, 0)
    return t, z


def extract_eigenvalues(t):
    """Read eigenvalues off the 1x1 and 2x2 diagonal blocks of a Schur form."""
    t = np.asarray(t, dtype=float)
    n = t.shape[0]
    eigs = []
    i = 0
    while i < n:
        if i == n - 1 or t[i + 1, i] == 0.0:
            eigs.append(RealEigenvalue(float(t[i, i])))
            i += 1
        else:
            a, b = t[i, i], t[i, i + 1]
            c, d = t[i + 1, i], t[i + 1, i + 1]
            disc = ((a - d) / 2.0) ** 2 + b * c
            if disc >= 0.0:
                raise InternalError(
                    f"2x2 Schur block at {i} has real eigenvalues; "
                    "real_schur should have split it"
                )
            eigs.append(
                ComplexPairEigenvalue(float((a + d) / 2.0), float(np.sqrt(-disc)))
            )
            i += 2
    return eigs


def _sort_eigenvalues(eigs):
    """Deterministic order: real eigenvalues ascending, then pairs by (sigma, omega)."""
    reals = sorted(
        (e for e in eigs if isinstance(e, RealEigenvalue)), key=lambda e: e.alpha
    )
    pairs = sorted(
        (e for e in eigs if isinstance(e, ComplexPairEigenvalue)),
        key=lambda e: (e.sigma, e.omega),
    )
    return reals + pairs


def _clusters(eigs, ctol):
    """Group adjacent (sorted) eigenvalues closer than ctol."""
    groups = []
    for i, e in enumerate(eigs):
        if groups:
            prev = eigs[groups[-1][-1]]
            if isinstance(e, RealEigenvalue) and isinstance(prev, RealEigenvalue):
                if abs(e.alpha - prev.alpha) <= ctol:
                    groups[-1].append(i)
                    continue
            elif isinstance(e, ComplexPairEigenvalue) and isinstance(
                prev, ComplexPairEigenvalue
            ):
                if np.hypot(e.sigma - prev.sigma, e.omega - prev.omega) <= ctol:
                    groups[-1].append(i)
                    continue
        groups.append([i])
    return groups


def _complex_dot_split(u, w):
    """u^dag w for splits u, w; returns (re, im)."""
    re = dc.dot(u.re, w.re) + dc.dot(u.im, w.im)
    im = dc.dot(u.re, w.im) - dc.dot(u.im, w.re)
    return re, im


def _mgs_real(vectors):
    out = []
    for v in vectors:
        for u in out:
            v = v - dc.dot(u, v) * u
        nv = np.linalg.norm(v)
        v = v / nv if nv > 0.0 else v
        out.append(v)
    return out


def _mgs_split(splits):
    out = []
    for s in splits:
        re, im = s.re.copy(), s.im.copy()
        for u in out:
            cr, ci = _complex_dot_split(u, ComplexVectorSplit(re, im))
            re = re - (cr * u.re - ci * u.im)
            im = im - (cr * u.im + ci * u.re)
        s2 = ComplexVectorSplit(re, im)
        nn = s2.norm()
        if nn > 0.0:
            s2 = ComplexVectorSplit(re / nn, im / nn)
        out.append(s2)
    return out


def _pair_system(m, sigma, omega):
    """Real bordered system whose null space carries the (b, p) split."""
    n = m.shape[0]
    a = np.zeros((2 * n, 2 * n))
    shifted = m - sigma * np.eye(n)
    a[:n, :n] = shifted
    a[n:, n:] = shifted
    a[:n, n:] = omega * np.eye(n)
    a[n:, :n] = -omega * np.eye(n)
    return a


def _pair_residual(m, e, s):
    rb = np.linalg.norm(m @ s.re - (e.sigma * s.re - e.omega * s.im))
    rp = np.linalg.norm(m @ s.im - (e.omega * s.re + e.sigma * s.im))
    return rb + rp


def right_eigenvectors(m, eigs, tol):
    """Inverse iteration on real shifted systems, one slot per eigenvalue.

    Eigenvalues clustered within 1e-8*||M||_F are orthogonalized together
    by modified Gram-Schmidt; a cluster whose vectors cannot reach the
    residual tolerance marks the matrix as defective.
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    norm_m = dc.frobenius_norm(m)
    ctol = 1e-8 * norm_m
    rng = np.random.default_rng(_START_SEED ^ n)
    vectors = [None] * len(eigs)
    for group in _clusters(eigs, ctol):
        rep = eigs[group[0]]
        if isinstance(rep, RealEigenvalue):
            lu, swaps = dc.lu_factor(m - rep.alpha * np.eye(n), perturb_singular=True)
            vs = [rng.standard_normal(n) for _ in group]
            vs = [v / np.linalg.norm(v) for v in vs]
            best = [np.inf] * len(group)
            for _ in range(_INVERSE_ITER_CAP):
                vs = [dc.lu_solve(lu, swaps, v) for v in vs]
                vs = _mgs_real(vs)
                best = [
                    min(b, np.linalg.norm(m @ v - rep.alpha * v))
                    for b, v in zip(best, vs)
                ]
                if all(b <= tol * norm_m for b in best):
                    break
            for j, (idx, v) in enumerate(zip(group, vs)):
                r = np.linalg.norm(m @ v - rep.alpha * v)
                if r > tol * norm_m:
                    if len(group) > 1:
                        raise NotDiagonalizableError(
                            f"repeated eigenvalue {rep.alpha:.6g} is defective"
                        )
                    raise AccuracyError(r, tol * norm_m)
                vectors[idx] = _canonical_sign(v)
        else:
            lu, swaps = dc.lu_factor(
                _pair_system(m, rep.sigma, rep.omega), perturb_singular=True
            )
            ss = [
                ComplexVectorSplit(rng.standard_normal(n), rng.standard_normal(n))
                for _ in group
            ]
            ss = _mgs_split(ss)
            for _ in range(_INVERSE_ITER_CAP):
                nxt = []
                for s in ss:
                    w = dc.lu_solve(lu, swaps, np.concatenate([s.re, s.im]))
                    nxt.append(ComplexVectorSplit(w[:n], w[n:]))
                ss = _mgs_split(nxt)
                if all(
                    _pair_residual(m, rep, s) <= tol * norm_m * (s.norm() * np.sqrt(2))
                    for s in ss
                ):
                    break
            for idx, s in zip(group, ss):
                e = eigs[idx]
                r = _pair_residual(m, e, s)
                bound = tol * norm_m * (np.linalg.norm(s.re) + np.linalg.norm(s.im))
                if r > bound:
                    if len(group) > 1:
                        raise NotDiagonalizableError(
                            f"repeated pair ({e.sigma:.6g}, {e.omega:.6g}) is defective"
                        )
                    raise AccuracyError(r, bound)
                vectors[idx] = canonicalize_phase(s)
    return vectors


def _canonical_sign(v):
    """Largest-magnitude entry made positive; ties break at the lowest index."""
    j = int(np.argmax(np.abs(v)))
    return -v if v[j] < 0.0 else v


def canonicalize_phase(split):
    """Rotate a complex split by a unit phase so its largest entry is real > 0.

    Idempotent bit-for-bit: the pinned entry is stored with an exact zero
    imaginary part, so a second application is the identity.
    """
    mags = split.re**2 + split.im**2
    if not np.any(mags > 0.0):
        raise ShapeError("cannot canonicalize a zero vector")
    j = int(np.argmax(mags))
    bj, pj = split.re[j], split.im[j]
    if pj == 0.0 and bj > 0.0:
        return split
    phi = np.arctan2(pj, bj)
    c, s = np.cos(phi), np.sin(phi)
    re = c * split.re + s * split.im
    im = c * split.im - s * split.re
    re[j] = np.hypot(bj, pj)
    im[j] = 0.0
    return ComplexVectorSplit(re, im)


def real_basis(eigs, right):
    """Columns a_i for real slots and (b_i, p_i) for pair slots, in order."""
    cols = []
    for e, v in zip(eigs, right):
        if isinstance(e, RealEigenvalue):
            cols.append(v)
        else:
            cols.append(v.re)
            cols.append(v.im)
    return np.column_stack(cols)


def left_eigenvectors(eigs, right, rcond_min=1e-12):
    """Left eigenvectors from the inverse of the real eigenvector basis.

    For a pair occupying columns (b, p), rows (r1, r2) of the inverse give
    d = r1/2 and q = r2/2, which satisfy d^dag b = 1 and biorthogonality
    against every other eigenvector up to solve error.
    Returns (left, basis_rcond).
    """
    b_real = real_basis(eigs, right)
    try:
        b_inv = dc.inverse(b_real)
    except Exception as exc:
        raise NotDiagonalizableError(str(exc)) from exc
    rcond = dc.rcond_1norm(b_real, b_inv)
    if rcond < rcond_min:
        raise NotDiagonalizableError(f"eigenvector basis rcond {rcond:.3e}")
    left = []
    row = 0
    for e in eigs:
        if isinstance(e, RealEigenvalue):
            left.append(b_inv[row, :].copy())
            row += 1
        else:
            left.append(
                ComplexVectorSplit(b_inv[row, :] / 2.0, b_inv[row + 1, :] / 2.0)
            )
            row += 2
    return left, rcond


def eigensystem(m, tol=1e-9):
    """Full right/left eigen-decomposition of a real square matrix."""
    m = dc.as_matrix(m)
    n = m.shape[0]
    if n != m.shape[1]:
        raise ShapeError(f"eigensystem of non-square {m.shape}")
    norm_m = dc.frobenius_norm(m)
    if norm_m == 0.0:
        eigs = [RealEigenvalue(0.0)] * n
        basis = [np.eye(n)[:, i] for i in range(n)]
        return EigenSystem(tuple(eigs), tuple(basis), tuple(basis), n, 1.0)
    # fixed pre-scaling keeps the QR thresholds meaningful for extreme norms
    h, q = hessenberg_reduce(m / norm_m)
    t, _ = real_schur(h, q)
    eigs = extract_eigenvalues(t)
    eigs = [
        RealEigenvalue(e.alpha * norm_m)
        if isinstance(e, RealEigenvalue)
        else ComplexPairEigenvalue(e.sigma * norm_m, e.omega * norm_m)
        for e in eigs
    ]
    eigs = _sort_eigenvalues(eigs)
    right = right_eigenvectors(m, eigs, tol)
    left, rcond = left_eigenvectors(eigs, right)
    return EigenSystem(tuple(eigs), tuple(right), tuple(left), n, rcond)
