"""Builders for test diagrams: diff chains, random knots, standard corpus.

A diff chain is one base circle (colored 0) overlaid by small bights whose
colors prescribe the crossing diffs: a bight colored v crosses over the
base twice, producing two v-diff crossings while the base color telescopes
back to 0.  Kinks sprinkled on the base contribute 0-diff crossings, so
chains realize any diff histogram with verifiable colorings and known
paths between the bights.
"""

from __future__ import annotations

import os
import random
from typing import Optional, Sequence

from .coloring import Coloring
from .diagram import Diagram, canonical
from .moves import DiagramBuilder, MoveError, R1Insert, apply_move


def seeded_rng(seed: Optional[int] = None) -> random.Random:
    """Honor ZCOLOR_SEED for reproducible randomized tests."""
    if seed is None:
        seed = int(os.environ.get("ZCOLOR_SEED", "271828"))
    return random.Random(seed)


def diff_chain(loop_colors: Sequence[int], kinks_between: int = 0
               ) -> tuple[Diagram, Coloring]:
    """A base circle colored 0 overlaid by bights with the given colors.

    Each bight colored v contributes two v-diff crossings (the base dives
    under it twice: 0 -> 2v -> 0); `kinks_between`` kinks follow each bight
    on the base, adding 0-diff crossings.
    """
    if not loop_colors:
        raise ValueError("need at least one bight")
    k = len(loop_colors)
    rows = []
    gamma: Coloring = {}
    next_edge = 2 * k + 1  # base arcs are 1..2k

    def fresh():
        nonlocal next_edge
        e = next_edge
        next_edge += 1
        return e

    for i, v in enumerate(loop_colors):
        u_in = 2 * i + 1
        u_mid = 2 * i + 2
        u_out = (2 * i + 3) if i < k - 1 else 1
        outer, mid = fresh(), fresh()
        rows.append((u_in, mid, u_mid, outer))    # bight descends: positive
        rows.append((u_mid, mid, u_out, outer))   # bight returns: negative
        gamma[u_in] = 0
        gamma[u_mid] = 2 * v
        gamma[outer] = v
        gamma[mid] = v

    diagram = Diagram(rows)
    if kinks_between:
        builder = DiagramBuilder(diagram)
        for i in range(k):
            base_arc = 2 * i + 1
            for j in range(kinks_between):
                info = apply_move(builder, R1Insert(edge=base_arc, sign=(-1) ** j))
                for e in builder.rows[info["created"][0]]:
                    gamma.setdefault(e, gamma[base_arc])
        diagram = builder.diagram()
    return diagram, gamma


def random_knot_diagram(rng: random.Random, n_ops: int = 6) -> Diagram:
    """A one-component diagram grown by random kinks and twist clasps.

    Starts from a single kink and repeatedly either kinks a random arc
    (writhe +-1) or claps two parallel co-face arcs with a full twist
    (writhe +-2), preserving validity and planarity throughout.
    """
    builder = DiagramBuilder(Diagram([(1, 1, 2, 2)]))
    for _ in range(n_ops):
        edges = sorted({e for row in builder.rows.values() for e in row})
        op = rng.random()
        if op < 0.55 or len(edges) < 4:
            e = rng.choice(edges)
            apply_move(builder, R1Insert(
                edge=e, sign=rng.choice((1, -1)),
                over_first=rng.random() < 0.5))
        else:
            pairs = rng.sample(edges, min(len(edges), 6))
            sign = rng.choice((1, -1))
            for f in pairs:
                g = rng.choice([e for e in edges if e != f])
                try:
                    insert_twist_clasp(builder, f, g, sign)
                    break
                except MoveError:
                    continue
    return canonical(builder.diagram())[0]


def insert_twist_clasp(builder: DiagramBuilder, f: int, g: int, sign: int) -> None:
    """Two equal-sign crossings between co-face parallel arcs (a full twist).

    Requires the two arcs to run parallel along a shared face; raises
    MoveError otherwise.  Writhe changes by 2*sign.
    """
    from .moves import _faces, _face_walk_edges

    if f == g:
        raise MoveError("clasp needs two distinct arcs")
    chosen = None
    for face in _faces(builder):
        steps = _face_walk_edges(builder, face)
        edges = [e for e, _ in steps]
        if f in edges and g in edges:
            f_fwd = next(not builder.is_head(c, s) for e, (c, s) in steps if e == f)
            g_fwd = next(not builder.is_head(c, s) for e, (c, s) in steps if e == g)
            if f_fwd != g_fwd:  # strands parallel across the face
                chosen = (f_fwd, g_fwd)
                break
    if chosen is None:
        raise MoveError(f"arcs {f} and {g} do not run parallel along a face")
    f_fwd, _ = chosen
    f_head = next(p for p in builder.occurrences(f) if builder.is_head(*p))
    g_head = next(p for p in builder.occurrences(g) if builder.is_head(*p))
    f_m, f_b = builder.fresh_edge(), builder.fresh_edge()
    g_m, g_b = builder.fresh_edge(), builder.fresh_edge()
    builder.replace_occurrence(*f_head, f_b)
    builder.replace_occurrence(*g_head, g_b)
    if sign > 0:
        # left strand passes over at both crossings of a positive twist
        c1 = (g, f_m, g_m, f)
        c2 = (f_m, g_b, f_b, g_m)
    else:
        c1 = (f, g, f_m, g_m)
        c2 = (g_m, f_m, g_b, f_b)
    if not f_fwd:
        c1 = (c1[0], c1[3], c1[2], c1[1])
        c2 = (c2[0], c2[3], c2[2], c2[1])
    builder.rows[builder.fresh_cid()] = c1
    builder.rows[builder.fresh_cid()] = c2
    builder._dirty()


def standard_diagrams() -> dict[str, Diagram]:
    """The bundled small diagrams used across the test corpus."""
    from .diagram import parse_pd

    trefoil = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    builder = DiagramBuilder(trefoil)
    for e in (2, 4, 6):
        apply_move(builder, R1Insert(edge=e, sign=1, over_first=False))
    trefoil_w0 = canonical(builder.diagram())[0]
    return {
        "unknot_kink": parse_pd("X[1,1,2,2]"),
        "unknot_writhe0": parse_pd("X[1,3,2,2] X[3,4,4,1]"),
        "trefoil": trefoil,
        "trefoil_writhe0": trefoil_w0,
        "figure8": parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"),
        "hopf": parse_pd("X[4,1,3,2] X[2,3,1,4]"),
        "split_unlink": parse_pd("X[1,1,2,2] X[3,3,4,4]"),
    }
