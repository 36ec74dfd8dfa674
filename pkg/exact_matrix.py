# exact_matrix.py
"""
Exact integer linear algebra over numpy object arrays.

Entries are Python ints, so nothing ever wraps. The determinant uses
fraction-free (Bareiss) elimination and the permanent uses Ryser's
inclusion-exclusion formula walked in Gray-code order.
"""

import logging

import numpy as np

import config
from errors import CapabilityError, CapacityError, InvalidGraphError, QueryError

log = logging.getLogger(__name__)


class IntMatrix:
    """
    Dense arbitrary-precision integer matrix.

    Args:
        entries: nested row lists, a numpy array or another IntMatrix.
        labels: optional row/column labels (vertex ids) so callers can index
            by vertex instead of position. Only meaningful for square matrices.
    """

    def __init__(self, entries, labels=None):
        if isinstance(entries, IntMatrix):
            entries = entries.entries
        if isinstance(entries, np.ndarray):
            entries = entries.tolist()
        rows = [[int(x) for x in row] for row in entries]
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise InvalidGraphError("Matrix rows have different lengths.")
        arr = np.zeros((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            arr[i, :] = row
        self.entries = arr
        self.labels = self._check_labels(labels, len(rows))

    @classmethod
    def zeros(cls, rows, cols, labels=None):
        return cls._from_array(np.zeros((rows, cols), dtype=object), labels)

    @classmethod
    def _from_array(cls, arr, labels=None):
        # Trusted fast path: arr is already a 2-D object array of Python ints.
        obj = cls.__new__(cls)
        obj.entries = arr
        obj.labels = cls._check_labels(labels, arr.shape[0])
        return obj

    @staticmethod
    def _check_labels(labels, n):
        if labels is None:
            return None
        labels = tuple(labels)
        if len(labels) != n:
            raise InvalidGraphError(f"Expected {n} labels, got {len(labels)}.")
        return labels

    # --- shape & access ---
    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def position(self, key):
        """Resolves a vertex label or an integer position to a row index."""
        if self.labels is not None and key in self.labels:
            return self.labels.index(key)
        if isinstance(key, (int, np.integer)) and not isinstance(key, bool) and 0 <= key < self.rows:
            return int(key)
        raise QueryError(f"Unknown matrix index '{key}'.")

    def __getitem__(self, key):
        i, j = key
        return int(self.entries[self.position(i), self.position(j)])

    def tolist(self):
        return [[int(x) for x in row] for row in self.entries.tolist()]

    # --- arithmetic ---
    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InvalidGraphError(f"Cannot multiply {self.shape} by {other.shape}.")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix._from_array(np.dot(self.entries, other.entries))

    def __add__(self, other):
        self._require_same_shape(other)
        return IntMatrix._from_array(self.entries + other.entries, self.labels)

    def __sub__(self, other):
        self._require_same_shape(other)
        return IntMatrix._from_array(self.entries - other.entries, self.labels)

    def __neg__(self):
        return IntMatrix._from_array(-self.entries, self.labels)

    def __abs__(self):
        return IntMatrix._from_array(np.abs(self.entries), self.labels)

    @property
    def T(self):
        return IntMatrix._from_array(self.entries.T.copy(), self.labels)

    def _require_same_shape(self, other):
        if self.shape != other.shape:
            raise InvalidGraphError(f"Shape mismatch: {self.shape} vs {other.shape}.")

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            other = IntMatrix(other)
        return self.shape == other.shape and bool(np.all(self.entries == other.entries))

    __hash__ = None

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def to_text(self):
        """Aligned plain-text rendering, one row per line."""
        cells = [[str(x) for x in row] for row in self.tolist()]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def as_int_matrix(M):
    return M if isinstance(M, IntMatrix) else IntMatrix(M)


def _require_square(M):
    if not M.is_square:
        raise InvalidGraphError(f"Matrix must be square, got {M.rows}x{M.cols}.")


def determinant(M):
    """
    Calculates the exact determinant by Bareiss fraction-free elimination.
    Every intermediate division is exact. The empty matrix has determinant 1.
    """
    M = as_int_matrix(M)
    _require_square(M)
    n = M.rows
    if n == 0:
        return 1
    a = M.entries.copy()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i, k] != 0), None)
            if swap is None:
                return 0
            a[[k, swap]] = a[[swap, k]]
            sign = -sign
        pivot = a[k, k]
        a[k + 1:, k + 1:] = (a[k + 1:, k + 1:] * pivot - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        prev = pivot
    return sign * int(a[n - 1, n - 1])


def permanent(M, max_n=None):
    """
    Calculates the exact permanent with Ryser's formula in Gray-code order.

    Args:
        M: square matrix.
        max_n: size guard; defaults to config.PERMANENT_MAX_N.

    Returns:
        int. Raises CapacityError when the matrix is larger than the guard.
    """
    M = as_int_matrix(M)
    _require_square(M)
    n = M.rows
    limit = config.PERMANENT_MAX_N if max_n is None else max_n
    if n > limit:
        log.warning("Refusing permanent of a %dx%d matrix (limit %d).", n, n, limit)
        raise CapacityError(f"Permanent of a {n}x{n} matrix exceeds the limit n <= {limit}.")
    if n == 0:
        return 1

    a = M.entries
    row_sums = np.zeros(n, dtype=object)
    total = 0
    gray = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            row_sums = row_sums + a[:, j]
        else:
            row_sums = row_sums - a[:, j]
        product = int(np.prod(row_sums))
        if bin(gray).count("1") % 2:
            total -= product
        else:
            total += product
    return -total if n % 2 else total


def minor(M, rows, cols):
    """Returns M with the given rows and columns (labels or positions) deleted."""
    M = as_int_matrix(M)
    r = sorted({M.position(x) for x in rows})
    c = sorted({M.position(x) for x in cols})
    arr = np.delete(np.delete(M.entries, r, axis=0), c, axis=1)
    labels = None
    if M.labels is not None and r == c:
        labels = tuple(lab for i, lab in enumerate(M.labels) if i not in r)
    return IntMatrix._from_array(arr, labels)


def ordered_second_cofactor(L, u1, w1, u2, w2):
    """
    Value of the (u2, w2)-cofactor inside the (u1, w1)-minor of L.

    Each step carries its own positional sign: (u1, w1) is signed by its
    position in L and (u2, w2) by its position in the reduced matrix.
    For an all-positive graph this is Tutte's transpedance [u1u2, w1w2].
    """
    L = as_int_matrix(L)
    _require_square(L)
    p1, q1 = L.position(u1), L.position(w1)
    p2, q2 = L.position(u2), L.position(w2)
    if p1 == p2 or q1 == q2:
        raise QueryError(f"Index collision in cofactor request ({u1},{w1},{u2},{w2}).")
    sign = -1 if (p1 + q1) % 2 else 1
    p2r = p2 - (p2 > p1)
    q2r = q2 - (q2 > q1)
    if (p2r + q2r) % 2:
        sign = -sign
    inner = np.delete(np.delete(L.entries, [p1, p2], axis=0), [q1, q2], axis=1)
    return sign * determinant(IntMatrix._from_array(inner))


def totalminor_coeff2(L, u1, w1, u2, w2, kind="det", max_n=None):
    """
    Coefficient of x_{u1w1} x_{u2w2} in det(X - L) (or perm(X - L)), all
    other x's at zero.

    Both forms are affine in each entry, so four evaluations isolate the
    mixed term: f(1,1) - f(1,0) - f(0,1) + f(0,0).
    """
    L = as_int_matrix(L)
    _require_square(L)
    if kind == "det":
        evaluate = determinant
    elif kind == "perm":
        evaluate = lambda m: permanent(m, max_n=max_n)
    else:
        raise CapabilityError(f"Unknown polynomial kind '{kind}' (expected det or perm).")

    pu1, pw1 = L.position(u1), L.position(w1)
    pu2, pw2 = L.position(u2), L.position(w2)
    if pu1 == pu2 or pw1 == pw2:
        return 0

    base = -L.entries

    def f(a, b):
        X = base.copy()
        X[pu1, pw1] += a
        X[pu2, pw2] += b
        return evaluate(IntMatrix._from_array(X))

    return f(1, 1) - f(1, 0) - f(0, 1) + f(0, 0)


def tree_number(L):
    """
    Calculates τ: the determinant of L with its first row and column deleted.
    Returns 0 for the empty matrix.
    """
    L = as_int_matrix(L)
    _require_square(L)
    if L.rows == 0:
        return 0
    return determinant(minor(L, [0], [0]))
