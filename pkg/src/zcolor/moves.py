"""Reidemeister moves on PD diagrams, with replayable verified traces.

Moves are purely combinatorial edits of the crossing rows.  Each move names
its location by current arc/crossing ids; replaying a trace re-executes the
edits with deterministic id allocation, so a trace can be checked by
replaying it and comparing the result with the claimed target.

Locality is tracked through disks: a disk is declared as a set of crossing
ids of the stage's source diagram, moves are tagged with a disk, and every
crossing a move modifies or removes must belong to the disk or have been
created by an earlier move of the same disk.  Disks of one stage must be
pairwise disjoint; a multi-stage trace chains independently-disked stages.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import (
    OVER_A,
    OVER_B,
    UNDER_IN,
    UNDER_OUT,
    Diagram,
    DiagramError,
    same_diagram,
)


class MoveError(ValueError):
    """Raised when a move's location is not applicable."""


# -- move records ------------------------------------------------------------


@dataclass(frozen=True)
class R1Insert:
    kind = "R1+"
    edge: int
    sign: int
    over_first: bool = False


@dataclass(frozen=True)
class R1Remove:
    kind = "R1-"
    cid: int


@dataclass(frozen=True)
class R2Insert:
    """Push ``push_edge`` across ``across_edge`` inside a shared face."""

    kind = "R2+"
    push_edge: int
    across_edge: int
    push_over: bool
    corner: Optional[tuple[int, int]] = None
    lean_forward: bool = True


@dataclass(frozen=True)
class R2Remove:
    kind = "R2-"
    cid1: int
    cid2: int


@dataclass(frozen=True)
class R3:
    kind = "R3"
    cids: tuple[int, int, int]


Move = R1Insert | R1Remove | R2Insert | R2Remove | R3


@dataclass(frozen=True)
class Stage:
    moves: tuple[tuple[Move, int], ...]          # (move, disk id)
    disks: dict[int, frozenset[int]]             # disk id -> source crossing ids


@dataclass(frozen=True)
class MoveTrace:
    """A sequence of stages, each a disk-localized batch of moves."""

    stages: tuple[Stage, ...]

    @property
    def moves(self) -> list[tuple[Move, int]]:
        return [mv for st in self.stages for mv in st.moves]

    def __len__(self):
        return sum(len(st.moves) for st in self.stages)


def single_stage(moves: Sequence[tuple[Move, int]], disks: dict[int, frozenset[int]]) -> MoveTrace:
    return MoveTrace(stages=(Stage(moves=tuple(moves), disks=dict(disks)),))


EMPTY_TRACE = MoveTrace(stages=())


# -- mutable builder ---------------------------------------------------------


class DiagramBuilder:
    """Mutable crossing table used while applying moves."""

    def __init__(self, diagram: Diagram):
        self.rows: dict[int, tuple[int, int, int, int]] = {
            x.cid: x.slots for x in diagram.crossings
        }
        self.free_loops = diagram.free_loops
        self.next_cid = max(self.rows, default=-1) + 1
        self.next_edge = max((e for r in self.rows.values() for e in r), default=0) + 1
        self._diagram: Optional[Diagram] = None

    def diagram(self, cable=None) -> Diagram:
        if self._diagram is None or cable is not None:
            cids = sorted(self.rows)
            self._diagram = Diagram(
                [self.rows[c] for c in cids],
                free_loops=self.free_loops,
                cable=cable,
                cids=cids,
            )
        return self._diagram

    def _dirty(self):
        self._diagram = None

    def occurrences(self, edge: int) -> list[tuple[int, int]]:
        out = []
        for cid, row in self.rows.items():
            for s, e in enumerate(row):
                if e == edge:
                    out.append((cid, s))
        return out

    def is_head(self, cid: int, slot: int) -> bool:
        """Does the edge at this slot terminate here (point into the crossing)?"""
        if slot == UNDER_IN:
            return True
        if slot == UNDER_OUT:
            return False
        d = self.diagram()
        x = d.crossing(cid)
        head_slot = OVER_B if x.sign > 0 else OVER_A
        return slot == head_slot

    def fresh_edge(self) -> int:
        e = self.next_edge
        self.next_edge += 1
        return e

    def fresh_cid(self) -> int:
        c = self.next_cid
        self.next_cid += 1
        return c

    def replace_occurrence(self, cid: int, slot: int, new_edge: int):
        row = list(self.rows[cid])
        row[slot] = new_edge
        self.rows[cid] = tuple(row)
        self._dirty()


# -- face walking on the builder ---------------------------------------------


def _faces(builder: DiagramBuilder):
    occ: dict[int, list[tuple[int, int]]] = {}
    for cid, row in builder.rows.items():
        for s, e in enumerate(row):
            occ.setdefault(e, []).append((cid, s))
    corners = {(cid, i) for cid in builder.rows for i in range(4)}
    faces = []
    while corners:
        start = min(corners)
        walk = []
        cur = start
        while True:
            walk.append(cur)
            corners.discard(cur)
            cid, i = cur
            e = builder.rows[cid][(i + 1) % 4]
            a, b = occ[e]
            cur = b if a == (cid, (i + 1) % 4) else a
            if cur == start:
                break
        faces.append(tuple(walk))
    return faces


def _face_walk_edges(builder: DiagramBuilder, face) -> list[tuple[int, tuple[int, int]]]:
    """(edge, departing occurrence) for each boundary step of the face."""
    out = []
    for cid, i in face:
        e = builder.rows[cid][(i + 1) % 4]
        out.append((e, (cid, (i + 1) % 4)))
    return out


# -- move application ---------------------------------------------------------


def apply_move(builder: DiagramBuilder, move: Move) -> dict:
    """Apply one move; returns {"created": [...], "touched": [...]} crossing ids."""
    if isinstance(move, R1Insert):
        return _apply_r1_insert(builder, move)
    if isinstance(move, R1Remove):
        return _apply_r1_remove(builder, move)
    if isinstance(move, R2Insert):
        return _apply_r2_insert(builder, move)
    if isinstance(move, R2Remove):
        return _apply_r2_remove(builder, move)
    if isinstance(move, R3):
        return _apply_r3(builder, move)
    raise MoveError(f"unknown move {move!r}")


def _apply_r1_insert(builder: DiagramBuilder, mv: R1Insert) -> dict:
    occ = builder.occurrences(mv.edge)
    if len(occ) != 2:
        raise MoveError(f"no such arc: {mv.edge}")
    if mv.sign not in (1, -1):
        raise MoveError("kink sign must be +1 or -1")
    head = next(p for p in occ if builder.is_head(*p))
    e_a = mv.edge
    loop = builder.fresh_edge()
    e_b = builder.fresh_edge()
    builder.replace_occurrence(head[0], head[1], e_b)
    if not mv.over_first:
        row = (e_a, e_b, loop, loop) if mv.sign > 0 else (e_a, loop, loop, e_b)
    else:
        row = (loop, loop, e_b, e_a) if mv.sign > 0 else (loop, e_a, e_b, loop)
    cid = builder.fresh_cid()
    builder.rows[cid] = row
    builder._dirty()
    return {"created": [cid], "touched": []}


def _apply_r1_remove(builder: DiagramBuilder, mv: R1Remove) -> dict:
    row = builder.rows.get(mv.cid)
    if row is None:
        raise MoveError(f"no such crossing: {mv.cid}")
    loop = None
    for e in row:
        if row.count(e) == 2:
            pairs = [s for s, x in enumerate(row) if x == e]
            # a kink loop occupies one under slot and one over slot
            if (pairs[0] in (UNDER_IN, UNDER_OUT)) != (pairs[1] in (UNDER_IN, UNDER_OUT)):
                loop = e
                break
            if pairs == [UNDER_IN, UNDER_OUT] or pairs == [OVER_A, OVER_B]:
                continue
    if loop is None:
        raise MoveError(f"crossing {mv.cid} is not a removable kink")
    outer = [e for e in row if e != loop]
    del builder.rows[mv.cid]
    builder._dirty()
    if not outer:  # the loop was the whole component
        builder.free_loops += 1
        return {"created": [], "touched": [mv.cid]}
    e_a, e_b = outer[0], outer[1] if len(outer) > 1 else outer[0]
    if e_a == e_b:
        # isolated kink on its own circle
        if not builder.occurrences(e_a):
            builder.free_loops += 1
        return {"created": [], "touched": [mv.cid]}
    keep, drop = min(e_a, e_b), max(e_a, e_b)
    for cid, slot in builder.occurrences(drop):
        builder.replace_occurrence(cid, slot, keep)
    return {"created": [], "touched": [mv.cid]}


def _locate_r2_face(builder: DiagramBuilder, mv: R2Insert):
    candidates = []
    for face in _faces(builder):
        steps = _face_walk_edges(builder, face)
        edges = [e for e, _ in steps]
        if mv.push_edge in edges and mv.across_edge in edges:
            if mv.corner is not None and tuple(mv.corner) not in face:
                continue
            candidates.append((face, steps))
    if not candidates:
        raise MoveError(
            f"arcs {mv.push_edge} and {mv.across_edge} do not co-bound a face"
            + (f" through corner {mv.corner}" if mv.corner else ""))
    candidates.sort(key=lambda fs: min(fs[0]))
    return candidates[0]


def _apply_r2_insert(builder: DiagramBuilder, mv: R2Insert) -> dict:
    """Insert the bigon of ``push_edge`` poked across ``across_edge``.

    The face walk keeps its interior on the walker's right, so the walk
    direction of each edge relative to its strand direction decides whether
    the two strands run parallel or antiparallel across the face; the slot
    quadruples below are the four resulting layouts.
    """
    f, g = mv.push_edge, mv.across_edge
    if f == g:
        raise MoveError("cannot push an arc across itself")
    face, steps = _locate_r2_face(builder, mv)
    f_fwd = g_fwd = None
    for e, (cid, slot) in steps:
        fwd = not builder.is_head(cid, slot)  # departing its tail = forward
        if e == f and f_fwd is None:
            f_fwd = fwd
        elif e == g and g_fwd is None:
            g_fwd = fwd
    parallel = f_fwd != g_fwd

    f_head = next(p for p in builder.occurrences(f) if builder.is_head(*p))
    g_head = next(p for p in builder.occurrences(g) if builder.is_head(*p))
    f_m, f_b = builder.fresh_edge(), builder.fresh_edge()
    g_m, g_b = builder.fresh_edge(), builder.fresh_edge()
    builder.replace_occurrence(*f_head, f_b)
    builder.replace_occurrence(*g_head, g_b)
    f_a, g_a = f, g

    if mv.push_over:
        if parallel:
            first = (g_a, f_m, g_m, f_a)
            second = (g_m, f_m, g_b, f_b)
        else:
            first = (g_m, f_a, g_b, f_m)
            second = (g_a, f_b, g_m, f_m)
    else:
        if parallel:
            first = (f_a, g_a, f_m, g_m)
            second = (f_m, g_b, f_b, g_m)
        else:
            first = (f_a, g_b, f_m, g_m)
            second = (f_m, g_a, f_b, g_m)
    if not f_fwd:
        # the face lies on the push strand's left: mirrored picture,
        # which exchanges the two over slots of both new crossings
        first = (first[0], first[3], first[2], first[1])
        second = (second[0], second[3], second[2], second[1])
    c1, c2 = builder.fresh_cid(), builder.fresh_cid()
    builder.rows[c1] = first
    builder.rows[c2] = second
    builder._dirty()
    return {"created": [c1, c2], "touched": []}


def _apply_r2_remove(builder: DiagramBuilder, mv: R2Remove) -> dict:
    r1 = builder.rows.get(mv.cid1)
    r2 = builder.rows.get(mv.cid2)
    if r1 is None or r2 is None:
        raise MoveError("no such crossing")
    shared = set(r1) & set(r2)
    inner = [e for e in shared
             if sum(x == e for x in r1) == 1 and sum(x == e for x in r2) == 1]
    if len(inner) != 2:
        raise MoveError(f"crossings {mv.cid1},{mv.cid2} do not bound a bigon")
    e1, e2 = inner

    def slot_of(row, e):
        return row.index(e)

    def is_under(s):
        return s in (UNDER_IN, UNDER_OUT)

    # one inner edge is under at both crossings, the other over at both
    unders = [e for e in inner if is_under(slot_of(r1, e)) and is_under(slot_of(r2, e))]
    overs = [e for e in inner if not is_under(slot_of(r1, e)) and not is_under(slot_of(r2, e))]
    if len(unders) != 1 or len(overs) != 1:
        raise MoveError("bigon is clasped (same strand not over at both crossings)")
    d = builder.diagram()
    if d.crossing(mv.cid1).sign + d.crossing(mv.cid2).sign != 0:
        raise MoveError("bigon crossings do not have opposite signs")

    def strand_edges(row, e):
        s = slot_of(row, e)
        if is_under(s):
            return (row[UNDER_IN], row[UNDER_OUT])
        return (row[OVER_A], row[OVER_B])

    for mid in inner:
        a1, b1 = strand_edges(r1, mid)
        o1 = a1 if b1 == mid else b1
        a2, b2 = strand_edges(r2, mid)
        o2 = a2 if b2 == mid else b2
        if o1 == o2:
            # strand closes up through the bigon alone
            other = [p for p in builder.occurrences(o1)
                     if p[0] not in (mv.cid1, mv.cid2)]
            if not other:
                builder.free_loops += 1
        else:
            keep, drop = sorted((o1, o2))
            for cid, slot in builder.occurrences(drop):
                if cid not in (mv.cid1, mv.cid2):
                    builder.replace_occurrence(cid, slot, keep)
    del builder.rows[mv.cid1]
    del builder.rows[mv.cid2]
    builder._dirty()
    return {"created": [], "touched": [mv.cid1, mv.cid2]}


def _apply_r3(builder: DiagramBuilder, mv: R3) -> dict:
    cids = tuple(mv.cids)
    if len(set(cids)) != 3 or any(c not in builder.rows for c in cids):
        raise MoveError(f"R3 needs three distinct crossings, got {cids}")
    triangle = None
    for face in _faces(builder):
        if len(face) == 3 and {c for c, _ in face} == set(cids):
            triangle = face
            break
    if triangle is None:
        raise MoveError(f"crossings {cids} do not bound a triangle face")

    rows = {c: builder.rows[c] for c in cids}
    inner_edges = [builder.rows[cid][(i + 1) % 4] for cid, i in triangle]

    def is_under_at(cid, e):
        row = rows[cid]
        s = row.index(e)
        if row.count(e) != 1:
            raise MoveError("degenerate triangle (kink inside)")
        return s in (UNDER_IN, UNDER_OUT)

    strands = {}  # inner edge -> (cid1, cid2, role at each)
    for e in inner_edges:
        at = [c for c in cids if e in rows[c]]
        if len(at) != 2:
            raise MoveError("triangle side does not join two of the crossings")
        strands[e] = (at[0], at[1])

    unders = {e: sum(is_under_at(c, e) for c in strands[e]) for e in strands}
    tops = [e for e, k in unders.items() if k == 0]
    bottoms = [e for e, k in unders.items() if k == 2]
    middles = [e for e, k in unders.items() if k == 1]
    if len(tops) != 1 or len(bottoms) != 1 or len(middles) != 1:
        raise MoveError("triangle is not an R3 pattern (needs top/middle/bottom strands)")

    d = builder.diagram()

    def strand_route(inner):
        """(c_first, c_second, x_in, x_out): strand order through the triangle."""
        c1, c2 = strands[inner]
        # orient: at one crossing inner is the strand's out-edge, at the other its in-edge
        def in_out(cid):
            x = d.crossing(cid)
            if inner in (x.under_in, x.under_out) and rows[cid].index(inner) in (UNDER_IN, UNDER_OUT):
                return (x.under_in, x.under_out)
            return (x.over_in, x.over_out)

        i1, o1 = in_out(c1)
        if o1 == inner:
            c_first, c_second = c1, c2
        else:
            c_first, c_second = c2, c1
        xf = in_out(c_first)
        xs = in_out(c_second)
        return c_first, c_second, xf[0], xs[1]

    routes = {e: strand_route(e) for e in inner_edges}
    signs = {c: d.crossing(c).sign for c in cids}

    # after the flip each strand passes its two crossings in the opposite order
    new_rows = {}
    for cid in cids:
        here = [e for e in inner_edges if cid in strands[e]]
        over_e = next(e for e in here if not is_under_at(cid, e))
        under_e = next(e for e in here if is_under_at(cid, e))

        def new_in_out(inner):
            c_first, c_second, x_in, x_out = routes[inner]
            if cid == c_first:      # becomes the strand's second crossing
                return (inner, x_out)
            return (x_in, inner)    # becomes the strand's first crossing

        u_in, u_out = new_in_out(under_e)
        o_in, o_out = new_in_out(over_e)
        if signs[cid] > 0:
            new_rows[cid] = (u_in, o_out, u_out, o_in)
        else:
            new_rows[cid] = (u_in, o_in, u_out, o_out)
    for cid, row in new_rows.items():
        builder.rows[cid] = row
    builder._dirty()
    return {"created": [], "touched": list(cids)}


# -- replay and verification ---------------------------------------------------


def replay_trace(diagram: Diagram, trace: MoveTrace) -> Diagram:
    """Re-execute every move; deterministic, raises MoveError on bad locations."""
    builder = DiagramBuilder(diagram)
    for stage in trace.stages:
        for move, _disk in stage.moves:
            apply_move(builder, move)
    return builder.diagram()


@dataclass(frozen=True)
class EquivalenceReport:
    ok: bool
    reasons: tuple[str, ...] = ()


def verify_local_equivalence(source: Diagram, target: Diagram, trace: MoveTrace) -> EquivalenceReport:
    """Check disk disjointness, per-move locality, and end-diagram equality.

    Locality is crossing-based: every crossing a move modifies or removes
    must be in the move's declared disk or created earlier by the same
    disk.  Disks are checked for pairwise disjointness within each stage;
    stages are independent localizations applied in sequence.
    """
    reasons = []
    builder = DiagramBuilder(source)
    for si, stage in enumerate(trace.stages):
        ids = sorted(stage.disks)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                if stage.disks[a] & stage.disks[b]:
                    reasons.append(f"stage {si}: disks {a} and {b} overlap")
        owned: dict[int, set[int]] = {k: set(v) for k, v in stage.disks.items()}
        for move, disk in stage.moves:
            if disk not in owned:
                reasons.append(f"stage {si}: move {move} names unknown disk {disk}")
                owned.setdefault(disk, set())
            try:
                info = apply_move(builder, move)
            except MoveError as err:
                return EquivalenceReport(False, tuple(reasons + [f"replay failed: {err}"]))
            for cid in info["touched"]:
                if cid not in owned[disk]:
                    reasons.append(
                        f"stage {si}: move {move} touched crossing {cid} outside disk {disk}")
            owned[disk].update(info["created"])
    result = builder.diagram()
    if not same_diagram(result, target):
        reasons.append("replayed diagram does not match the target")
    return EquivalenceReport(ok=not reasons, reasons=tuple(reasons))
