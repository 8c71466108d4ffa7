"""Exact integer linear algebra over the crossing relations.

The coloring matrix has one row per crossing and one column per Fox arc
(over-merged edge class): the row encodes 2*over - under_in - under_out = 0.
Everything downstream is arbitrary-precision integer arithmetic; Smith
normal form is computed densely with minimal-absolute-value pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import Diagram, DiagramError, crossing_graph_pieces

Matrix = list[list[int]]


@dataclass(frozen=True)
class ColoringMatrix:
    """Crossing-relation matrix over the arc classes of a diagram."""

    rows: tuple[tuple[int, ...], ...]
    columns: tuple[int, ...]        # arc class representatives, sorted
    crossing_ids: tuple[int, ...]   # row order

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.columns))


@dataclass(frozen=True)
class ColoringLattice:
    """Integer basis of the kernel of a coloring matrix.

    Basis vectors are indexed by arc class; ``expand`` turns a class vector
    into a full per-edge coloring.  The basis generates the whole integer
    kernel (it is saturated, not merely a rational basis) and is kept in
    Hermite form so equal lattices compare equal.
    """

    basis: tuple[tuple[int, ...], ...]
    columns: tuple[int, ...]
    edge_class: tuple[tuple[int, int], ...]  # (edge, class rep) pairs

    @property
    def rank(self) -> int:
        return len(self.basis)

    def expand(self, vector: tuple[int, ...]) -> dict[int, int]:
        col = {c: i for i, c in enumerate(self.columns)}
        return {e: vector[col[rep]] for e, rep in self.edge_class}

    def edge_vectors(self) -> list[dict[int, int]]:
        return [self.expand(v) for v in self.basis]


def coloring_matrix(diagram: Diagram) -> ColoringMatrix:
    """One relation row per crossing on the arc-class columns.

    Coefficients fuse when classes coincide: a crossing whose under-arcs
    belong to one class gives the {+2, -2} row, and a kink whose over and
    under arcs are the same class gives the zero row.
    """
    cls = diagram.arc_classes()
    cols = diagram.arc_class_reps()
    idx = {c: i for i, c in enumerate(cols)}
    rows = []
    cids = []
    for x in diagram.crossings:
        row = [0] * len(cols)
        row[idx[cls[x.over_in]]] += 2
        row[idx[cls[x.under_in]]] -= 1
        row[idx[cls[x.under_out]]] -= 1
        rows.append(tuple(row))
        cids.append(x.cid)
    return ColoringMatrix(rows=tuple(rows), columns=cols, crossing_ids=tuple(cids))


# -- Smith normal form -------------------------------------------------------


def smith_normal_form(matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return unimodular U, V and diagonal S with U*M*V = S and d1 | d2 | ...

    Dense elimination with pivoting on the smallest nonzero entry to limit
    coefficient growth; all arithmetic is exact.
    """
    S = [list(map(int, row)) for row in matrix]
    r = len(S)
    c = len(S[0]) if r else 0
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        for k in range(c):
            S[dst][k] += q * S[src][k]
        for k in range(r):
            U[dst][k] += q * U[src][k]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = S[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, r):
                if S[i][t]:
                    q = -(S[i][t] // S[t][t])
                    add_row(i, t, q)
                    if S[i][t]:  # remainder smaller than pivot: promote it
                        swap_rows(t, i)
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(t + 1, c):
                if S[t][j]:
                    q = -(S[t][j] // S[t][t])
                    add_col(j, t, q)
                    if S[t][j]:
                        swap_cols(t, j)
                    dirty = True
                    break
            if not dirty:
                break
        t += 1

    # normalize signs and enforce the divisibility chain
    n = min(r, c)
    for i in range(n):
        if S[i][i] < 0:
            for k in range(c):
                S[i][k] = -S[i][k]
            for k in range(r):
                U[i][k] = -U[i][k]
    i = 0
    while i < n - 1:
        a, b = S[i][i], S[i + 1][i + 1]
        if a and b and b % a:
            add_col(i, i + 1, 1)  # brings b into column i
            _rediagonalize(S, U, V, i, r, c)
            i = max(i - 1, 0)
        else:
            i += 1
    for i in range(n):
        if S[i][i] < 0:
            for k in range(c):
                S[i][k] = -S[i][k]
            for k in range(r):
                U[i][k] = -U[i][k]
    return U, S, V


def _rediagonalize(S, U, V, t, r, c):
    """Restore diagonal form from position t after a divisibility fix-up."""
    while True:
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = S[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            return
        i0, j0 = pivot
        S[t], S[i0] = S[i0], S[t]
        U[t], U[i0] = U[i0], U[t]
        for row in S:
            row[t], row[j0] = row[j0], row[t]
        for row in V:
            row[t], row[j0] = row[j0], row[t]
        clean = True
        for i in range(t + 1, r):
            if S[i][t]:
                q = -(S[i][t] // S[t][t])
                for k in range(c):
                    S[i][k] += q * S[t][k]
                for k in range(r):
                    U[i][k] += q * U[t][k]
                if S[i][t]:
                    S[t], S[i] = S[i], S[t]
                    U[t], U[i] = U[i], U[t]
                clean = False
                break
        if not clean:
            continue
        for j in range(t + 1, c):
            if S[t][j]:
                q = -(S[t][j] // S[t][t])
                for row in S:
                    row[j] += q * row[t]
                for row in V:
                    row[j] += q * row[t]
                if S[t][j]:
                    for row in S:
                        row[t], row[j] = row[j], row[t]
                    for row in V:
                        row[t], row[j] = row[j], row[t]
                clean = False
                break
        if clean:
            t += 1


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return []
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def det_int(A: Matrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


def snf_diagonal(matrix) -> list[int]:
    _, S, _ = smith_normal_form(matrix)
    n = min(len(S), len(S[0]) if S else 0)
    return [S[i][i] for i in range(n)]


# -- kernel lattice ----------------------------------------------------------


def hermite_form(rows: Matrix) -> Matrix:
    """Row-style Hermite normal form with positive pivots; zero rows dropped."""
    M = [list(map(int, r)) for r in rows]
    if not M:
        return []
    c = len(M[0])
    pivot_row = 0
    for j in range(c):
        best = None
        for i in range(pivot_row, len(M)):
            if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best][j])):
                best = i
        if best is None:
            continue
        M[pivot_row], M[best] = M[best], M[pivot_row]
        # clear below by gcd steps
        changed = True
        while changed:
            changed = False
            for i in range(pivot_row + 1, len(M)):
                if M[i][j]:
                    q = M[i][j] // M[pivot_row][j]
                    M[i] = [a - q * b for a, b in zip(M[i], M[pivot_row])]
                    if M[i][j]:
                        M[pivot_row], M[i] = M[i], M[pivot_row]
                        changed = True
        if M[pivot_row][j] < 0:
            M[pivot_row] = [-a for a in M[pivot_row]]
        for i in range(pivot_row):
            q = M[i][j] // M[pivot_row][j]
            if q:
                M[i] = [a - q * b for a, b in zip(M[i], M[pivot_row])]
        pivot_row += 1
        if pivot_row == len(M):
            break
    return [r for r in M if any(r)]


def kernel_lattice(matrix: ColoringMatrix, diagram: Optional[Diagram] = None) -> ColoringLattice:
    """Saturated integer basis of ker(M), canonicalized by Hermite reduction.

    With U*M*V = S diagonal, the kernel is generated by the columns of V at
    positions where S has no (or a zero) diagonal entry; those columns span
    every integer kernel vector because V is unimodular.
    """
    r, c = matrix.shape
    if c == 0:
        return ColoringLattice(basis=(), columns=(), edge_class=_edge_class(matrix, diagram))
    _, S, V = smith_normal_form([list(row) for row in matrix.rows])
    n = min(r, c)
    free = [j for j in range(c) if j >= n or S[j][j] == 0]
    vectors = [[V[i][j] for i in range(c)] for j in free]
    basis = hermite_form(vectors)
    return ColoringLattice(
        basis=tuple(tuple(v) for v in basis),
        columns=matrix.columns,
        edge_class=_edge_class(matrix, diagram),
    )


def _edge_class(matrix: ColoringMatrix, diagram: Optional[Diagram]) -> tuple[tuple[int, int], ...]:
    if diagram is None:
        return tuple((c, c) for c in matrix.columns)
    return tuple(sorted(diagram.arc_classes().items()))


def diagram_lattice(diagram: Diagram) -> ColoringLattice:
    return kernel_lattice(coloring_matrix(diagram), diagram)


# -- colorability ------------------------------------------------------------


def determinant(diagram: Diagram) -> int:
    """|product of elementary divisors| of the matrix with one row and one
    column deleted; 0 for split or singular diagrams.

    Deleting the last row/column is the canonical choice; invariance under
    the choice is a tested property.  A connected diagram whose relation
    matrix is not square (some component never passes under) is reported 0:
    such diagrams always have extra coloring freedom.
    """
    if not diagram.crossings and not diagram.free_loops:
        raise DiagramError("determinant requires a non-empty diagram")
    pieces = crossing_graph_pieces(diagram)
    if len(pieces) > 1:
        return 0
    M = coloring_matrix(diagram)
    r, c = M.shape
    if r == 0:
        return 1  # a single crossing-free circle
    return reduced_determinant(M, r - 1, c - 1)


def reduced_determinant(matrix: ColoringMatrix, drop_row: int, drop_col: int) -> int:
    r, c = matrix.shape
    if r != c:
        return 0
    reduced = [
        [matrix.rows[i][j] for j in range(c) if j != drop_col]
        for i in range(r) if i != drop_row
    ]
    if not reduced:
        return 1
    d = det_int(reduced)
    return abs(d)


def is_z_colorable(diagram: Diagram) -> tuple[bool, Optional[dict[int, int]]]:
    """Decide Z-colorability; the witness is a non-trivial coloring when true.

    Split diagrams are colorable outright: coloring the pieces by distinct
    constants already uses two colors.  Connected diagrams are colorable
    exactly when the kernel lattice has rank at least 2.
    """
    if diagram.num_components == 0:
        return False, None
    pieces = crossing_graph_pieces(diagram)
    if len(pieces) > 1:
        witness = {}
        for k, piece in enumerate(pieces):
            for e in piece:
                witness[e] = k
        return True, (witness or None)
    lat = diagram_lattice(diagram)
    if lat.rank < 2:
        return False, None
    for v in lat.basis:
        if len(set(v)) > 1:
            return True, lat.expand(v)
    return False, None


def fox_coloring_count(diagram: Diagram, n: int) -> int:
    """Number of arc colorings in Z/n satisfying every relation mod n.

    Counted through the Smith form: each divisor d contributes gcd(d, n)
    solutions and each free column contributes n.  Crossing-free circles
    contribute a free constant each.
    """
    import math

    if n < 2:
        raise ValueError("modulus must be at least 2")
    M = coloring_matrix(diagram)
    r, c = M.shape
    diag = snf_diagonal([list(row) for row in M.rows]) if r and c else []
    count = 1
    for d in diag:
        count *= math.gcd(d, n) if d else n
    count *= n ** (c - len(diag))
    count *= n ** diagram.free_loops
    return count


def solve_partial(diagram: Diagram, partial: dict[int, int]) -> Optional[dict[int, int]]:
    """Complete a partial arc assignment to a full coloring, or return None.

    The completion is a lattice member agreeing with ``partial``; free
    directions are pinned to zero, so a unique completion is returned
    deterministically and the empty assignment completes to all zeros.
    """
    edges = set(diagram.edges)
    unknown = set(partial) - edges
    if unknown:
        raise DiagramError(f"assignment names unknown arcs: {sorted(unknown)}")
    lat = diagram_lattice(diagram)
    cls = diagram.arc_classes()
    pinned: dict[int, int] = {}
    for e, v in partial.items():
        rep = cls[e]
        if rep in pinned and pinned[rep] != int(v):
            return None
        pinned[rep] = int(v)
    if not lat.columns:
        return {}
    col = {cdx: i for i, cdx in enumerate(lat.columns)}
    k = lat.rank
    if k == 0:
        if any(v != 0 for v in pinned.values()):
            return None
        return {e: 0 for e in edges}
    A = [[lat.basis[t][col[rep]] for t in range(k)] for rep in sorted(pinned)]
    b = [pinned[rep] for rep in sorted(pinned)]
    t = _solve_integer(A, b, k)
    if t is None:
        return None
    values = [sum(t[i] * lat.basis[i][j] for i in range(k)) for j in range(len(lat.columns))]
    out = {e: values[col[rep]] for e, rep in lat.edge_class}
    for e, v in partial.items():
        if out[e] != int(v):
            return None
    return out


def _solve_integer(A: Matrix, b: list[int], width: int) -> Optional[list[int]]:
    """One integer solution of A x = b with free coordinates set to zero."""
    if not A:
        return [0] * width
    U, S, V = smith_normal_form(A)
    w = mat_mul(U, [[x] for x in b])
    n = min(len(A), width)
    y = [0] * width
    for i in range(len(A)):
        wi = w[i][0]
        d = S[i][i] if i < n else 0
        if d == 0:
            if wi != 0:
                return None
        else:
            if wi % d:
                return None
            y[i] = wi // d
    x = mat_mul(V, [[v] for v in y])
    return [row[0] for row in x]
