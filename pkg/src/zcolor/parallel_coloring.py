"""Small-palette colorings of parallels, and verified color deletion.

Even parallels (all multiplicities even, at least 4) are colored by a fixed
boundary pattern: in every parallel family of k arcs the middle two copies
get 1 and the rest 0.  Under strands crossing a cable telescope back to
their entering color, so the pattern closes up globally; region interiors
use colors -1..3 (width divisible by 4) or -1..2 (width 2 mod 4).

Untwisted 2-parallels of writhe-0 knot diagrams are colored in pairs
(a, a+1): passing under a cable shifts a pair by -2*sign, so along the
strand the pair state alternates between (0,1) and (2,3) provided the
underpass signs alternate; full twists are inserted between same-sign
underpasses to restore the alternation.  The raw palette is inside
-1..4 and two deletion passes (4 then -1) reach exactly {0,1,2,3}.

Deletions are verified local rewrites built from R2/R3 moves: conjugating
a crossing region by a canceling twist pair toggles the over state, a
bigon of one over line pushed across the region exchanges which line is
met first, and rerouting a 0-line past the middle 1-pair fixes the parity
that produces color 3.  Every rewrite is accepted only after the recolored
diagram verifies and the trace replays; failures raise, never degrade.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cabling import CableSpec, CableStructure, Region, insert_full_twist, parallel
from .coloring import Coloring, ColoringError, palette, verify_coloring
from .diagram import Diagram, crossing_graph_pieces, writhe
from .moves import (
    DiagramBuilder,
    MoveError,
    MoveTrace,
    R2Insert,
    R3,
    apply_move,
    single_stage,
    verify_local_equivalence,
)


class ConstructionError(ValueError):
    pass


class NoApplicableMoveError(ValueError):
    """No move in the library can remove the requested color."""


# -- boundary patterns and region propagation --------------------------------


@dataclass(frozen=True)
class BoundaryPattern:
    """Colors of one parallel family outside the crossing regions."""

    k: int
    colors: tuple[int, ...]

    @staticmethod
    def standard(k: int) -> "BoundaryPattern":
        if k < 2 or k % 2:
            raise ConstructionError("pattern width must be even and at least 2")
        colors = [0] * k
        colors[k // 2 - 1] = 1
        colors[k // 2] = 1
        return BoundaryPattern(k=k, colors=tuple(colors))


@dataclass(frozen=True)
class RegionColoring:
    """Propagation of under strands beneath a constant block of over lines."""

    over_colors: tuple[int, ...]
    under_in: tuple[int, ...]
    interior: tuple[tuple[int, ...], ...]
    under_out: tuple[int, ...]


def propagate_region(over: Sequence[int], under_in) -> RegionColoring:
    """Apply the crossing relation along each under strand in met order.

    interior[s][j] = 2*over[j] - previous, starting from under_in[s]; the
    last interior entry is the strand's exit color.
    """
    over = tuple(int(o) for o in over)
    if isinstance(under_in, int):
        under_in = (under_in,)
    under_in = tuple(int(u) for u in under_in)
    interior = []
    outs = []
    for u in under_in:
        row = []
        cur = u
        for o in over:
            cur = 2 * o - cur
            row.append(cur)
        interior.append(tuple(row))
        outs.append(cur)
    return RegionColoring(
        over_colors=over,
        under_in=under_in,
        interior=tuple(interior),
        under_out=tuple(outs),
    )


# -- relation propagation over a whole diagram --------------------------------


def propagate_coloring(diagram: Diagram, seeds: Coloring) -> Coloring:
    """Extend seed arc colors to a full coloring by the crossing relations.

    Fixpoint propagation in all directions; raises on contradiction or if
    the seeds do not determine every arc.
    """
    gamma: dict[int, int] = {}

    def assign(e, v):
        if e in gamma:
            if gamma[e] != v:
                raise ConstructionError(f"propagation conflict at arc {e}: {gamma[e]} vs {v}")
            return False
        gamma[e] = v
        return True

    for e, v in seeds.items():
        assign(e, int(v))
    changed = True
    while changed:
        changed = False
        for x in diagram.crossings:
            oi, oo = x.over_in, x.over_out
            ui, uo = x.under_in, x.under_out
            if oi in gamma and oo not in gamma:
                changed |= assign(oo, gamma[oi])
            if oo in gamma and oi not in gamma:
                changed |= assign(oi, gamma[oo])
            if oi in gamma:
                o = gamma[oi]
                if ui in gamma and uo not in gamma:
                    changed |= assign(uo, 2 * o - gamma[ui])
                elif uo in gamma and ui not in gamma:
                    changed |= assign(ui, 2 * o - gamma[uo])
            elif ui in gamma and uo in gamma:
                s = gamma[ui] + gamma[uo]
                if s % 2:
                    raise ConstructionError(f"propagation conflict at crossing {x.cid}")
                changed |= assign(oi, s // 2)
    missing = [e for e in diagram.edges if e not in gamma]
    if missing:
        raise ConstructionError(f"seeds do not determine arcs {missing[:8]}")
    for x in diagram.crossings:
        if gamma[x.over_in] != gamma[x.over_out] or \
                2 * gamma[x.over_in] != gamma[x.under_in] + gamma[x.under_out]:
            raise ConstructionError(f"propagation conflict at crossing {x.cid}")
    return gamma


# -- even parallels ------------------------------------------------------------


def color_even_parallel(cabled: Diagram, spec: Optional[CableSpec] = None) -> Coloring:
    """The explicit coloring of an even parallel with all widths >= 4.

    Every parallel family carries the standard boundary pattern; region
    interiors follow by propagation and exits telescope back to the
    entering colors, so the assignment is globally consistent.  The palette
    is inside {-1,0,1,2,3}, and inside {-1,0,1,2} when every width is
    2 mod 4.
    """
    st: CableStructure = cabled.cable
    if st is None:
        raise ConstructionError("diagram carries no cable structure")
    mult = spec.multiplicities if spec is not None else st.multiplicities
    if tuple(mult) != tuple(st.multiplicities):
        raise ConstructionError("spec disagrees with the diagram's cable structure")
    if any(n % 2 or n < 4 for n in mult):
        raise ConstructionError("all multiplicities must be even and at least 4")
    if len(crossing_graph_pieces(cabled)) > 1:
        raise ConstructionError("base diagram must be non-split")

    seeds: Coloring = {}
    patterns = {n: BoundaryPattern.standard(n) for n in set(mult)}
    for (base_edge, copy), arc in st.copy_edges.items():
        width = _width_of_base_edge(st, base_edge)
        seeds[arc] = patterns[width].colors[copy - 1]
    gamma = propagate_coloring(cabled, seeds)
    if not verify_coloring(cabled, gamma):
        raise ConstructionError("internal: even-parallel coloring failed verification")
    values, _ = palette(gamma)
    allowed = {-1, 0, 1, 2, 3} if any(n % 4 == 0 for n in mult) else {-1, 0, 1, 2}
    if not values <= allowed:
        raise ConstructionError(f"internal: palette {sorted(values)} exceeds {sorted(allowed)}")
    return gamma


def _width_of_base_edge(st: CableStructure, base_edge: int) -> int:
    copies = [k for (e, k) in st.copy_edges if e == base_edge]
    return max(copies)


# -- 2-parallel construction -----------------------------------------------------


def plan_drift_twists(diagram: Diagram) -> list[tuple[int, int]]:
    """(base arc, twist sign) sites between consecutive same-sign underpasses.

    Walking the knot, a pair coloring exits an underpass in the state the
    opposite-sign underpass expects; between two same-sign underpasses one
    full twist restores the state.  A writhe-0 diagram has as many positive
    as negative crossings, so the inserted twists balance.
    """
    if len(diagram.components) != 1 or diagram.free_loops:
        raise ConstructionError("twist planning needs a one-component knot diagram")
    cyc = diagram.components[0]
    unders = []
    for e in cyc:
        for x in diagram.crossings:
            if x.under_in == e:
                unders.append((e, x))
    plan = []
    for i, (e, x) in enumerate(unders):
        nxt = unders[(i + 1) % len(unders)][1]
        if x.sign == nxt.sign:
            # after a positive underpass the pair sits at state 0 and the
            # next positive underpass wants 2: raise with a negative twist;
            # mirrored for negative underpasses
            plan.append((x.under_out, -1 if x.sign > 0 else 1))
    return plan


def _underpass_states(diagram: Diagram, plan: list[tuple[int, int]]) -> dict[int, int]:
    """Pair state (0 or 2) at the start of every base arc, before twists.

    Anchored at the first underpass (a positive crossing wants state 2, a
    negative one state 0) and simulated forward: each underpass shifts the
    state by -2*sign, each planned twist toggles it.  The walk must close
    up; an unbalanced twist plan raises.
    """
    cyc = diagram.components[0]
    n = len(cyc)
    twist_edges = {e: s for e, s in plan}
    under_sign = {x.under_in: x.sign for x in diagram.crossings}

    anchor = None
    for idx, e in enumerate(cyc):
        if e in under_sign:
            anchor = (idx, 2 if under_sign[e] > 0 else 0)
            break
    if anchor is None:
        return {e: 0 for e in cyc}
    idx0, st = anchor
    order = [cyc[(idx0 + i) % n] for i in range(n)]
    state_at: dict[int, int] = {}
    cur = st
    for e in order:
        state_at[e] = cur
        if e in twist_edges:
            cur = cur - 2 * twist_edges[e]  # a positive twist lowers the state
        if e in under_sign:
            cur = cur - 2 * under_sign[e]
    if cur != state_at[order[0]]:
        raise ConstructionError("pair states do not close up; twist plan is unbalanced")
    return state_at


def color_two_parallel(
    diagram: Diagram,
    twist_plan: Optional[Sequence[tuple[int, int]]] = None,
) -> tuple[Diagram, Coloring]:
    """Colored 2-parallel of a writhe-0 knot diagram.

    Builds the 2-parallel with drift-balancing full twists and colors each
    parallel pair (a, a+1) with a in {0, 2}; region and twist interiors
    follow by propagation.  The palette is inside {-1,0,1,2,3,4}; the two
    deletion passes of ``delete_color_moves`` then reach exactly {0,1,2,3}.
    """
    if len(diagram.components) != 1 or diagram.free_loops:
        raise ConstructionError("needs a one-component knot diagram")
    w = writhe(diagram)
    if w != 0:
        raise ConstructionError(f"writhe is {w}; the construction needs writhe 0")
    plan = list(twist_plan) if twist_plan is not None else plan_drift_twists(diagram)
    states = _underpass_states(diagram, plan)

    cabled = parallel(diagram, CableSpec(multiplicities=(2,)))
    st: CableStructure = cabled.cable
    pre_twist_arcs = dict(st.copy_edges)
    for base_edge, sign in plan:
        cabled = insert_full_twist(cabled, base_edge, sign)
    st = cabled.cable

    seeds: Coloring = {}
    for e in diagram.components[0]:
        state = states[e]
        seeds[pre_twist_arcs[(e, 1)]] = state
        seeds[pre_twist_arcs[(e, 2)]] = state + 1
    gamma = propagate_coloring(cabled, seeds)
    if not verify_coloring(cabled, gamma):
        raise ConstructionError("internal: 2-parallel coloring failed verification")
    values, _ = palette(gamma)
    if not values <= {-1, 0, 1, 2, 3, 4}:
        raise ConstructionError(f"internal: palette {sorted(values)} exceeds -1..4")
    return cabled, gamma


# -- region geometry helpers -----------------------------------------------------


def _under_entry(diagram: Diagram, region: Region, row: int) -> int:
    return diagram.crossing(region.grid[row][0]).under_in


def _over_travel_rows(region: Region) -> list[int]:
    q = len(region.grid)
    return list(range(q)) if region.base_sign > 0 else list(range(q - 1, -1, -1))


def _over_line(diagram: Diagram, region: Region, step: int) -> dict:
    """Entry arc, exit arc and travel-ordered crossings of one over line."""
    rows = _over_travel_rows(region)
    cids = [region.grid[r][step] for r in rows]
    entry = diagram.crossing(cids[0]).over_in
    exit_ = diagram.crossing(cids[-1]).over_out
    return {"cids": cids, "entry": entry, "exit": exit_}


def _region_interior_arcs(diagram: Diagram, region: Region) -> set[int]:
    cids = {c for row in region.grid for c in row}
    count: dict[int, int] = {}
    for c in cids:
        for e in diagram.crossing(c).slots:
            count[e] = count.get(e, 0) + 1
    return {e for e, k in count.items() if k == 2}


def _slide_east(builder: DiagramBuilder, slider: int, region: Region,
                moves: list, disk: int) -> None:
    """R3 the over-over crossing ``slider`` across every under strand."""
    for r in _over_travel_rows(region):
        row = region.grid[r]
        # the slider forms a triangle with the two line crossings of this row
        done = False
        for a_idx in range(len(row)):
            for b_idx in range(a_idx + 1, len(row)):
                mv = R3(cids=(slider, row[a_idx], row[b_idx]))
                try:
                    apply_move(builder, mv)
                except MoveError:
                    continue
                moves.append((mv, disk))
                done = True
                break
            if done:
                break
        if not done:
            raise NoApplicableMoveError(
                f"cannot slide crossing {slider} across under row {r}")


# -- the rewrite library ----------------------------------------------------------


def _rewrite_swap_first_met(builder: DiagramBuilder, region: Region,
                            clean_step: int, other_step: int,
                            moves: list, disk: int) -> None:
    """Exchange which over line is met first, spanning the whole region.

    Pushes the desired-first line over its partner (an R2 bigon west of the
    region) and slides the far crossing east across every under strand; the
    partner is recolored to 2f - g between the bigon crossings.
    """
    d = builder.diagram()
    clean = _over_line(d, region, clean_step)
    other = _over_line(d, region, other_step)
    first_col_cids = {region.grid[r][s] for r in (_over_travel_rows(region)[:1])
                      for s in (clean_step, other_step)}
    corner = _find_corner(builder, clean["entry"], other["entry"], first_col_cids)
    mv = R2Insert(push_edge=clean["entry"], across_edge=other["entry"],
                  push_over=True, corner=corner)
    info = apply_move(builder, mv)
    moves.append((mv, disk))
    far = info["created"][1]
    _slide_east(builder, far, region, moves, disk)


def _rewrite_toggle_over_state(builder: DiagramBuilder, region: Region,
                               moves: list, disk: int, flip_second: bool) -> None:
    """Conjugate the region by a canceling full-twist pair on its over cable.

    Two nested R2 bigons west of the region build twist+inverse; the two
    crossings nearest the region slide east across the under strands,
    leaving one full twist before the region and its inverse after.
    ``flip_second`` selects the handedness of the twist pair.
    """
    d = builder.diagram()
    line0 = _over_line(d, region, 0)
    line1 = _over_line(d, region, 1)
    first_col_cids = {region.grid[r][s] for r in (_over_travel_rows(region)[:1])
                      for s in (0, 1)}
    x_edge, y_edge = (line0["entry"], line1["entry"])
    if flip_second:
        x_edge, y_edge = y_edge, x_edge
    corner = _find_corner(builder, x_edge, y_edge, first_col_cids)
    mv1 = R2Insert(push_edge=x_edge, across_edge=y_edge, push_over=True, corner=corner)
    info1 = apply_move(builder, mv1)
    moves.append((mv1, disk))
    o1, o2 = info1["created"]
    # inside the bigon: the mid segments are the over strand's new middle
    # (arc between o1 and o2) and the crossed strand's middle
    x_mid = _shared_over_arc(builder, o1, o2)
    y_mid = _shared_under_arc(builder, o1, o2)
    mv2 = R2Insert(push_edge=y_mid, across_edge=x_mid, push_over=True)
    info2 = apply_move(builder, mv2)
    moves.append((mv2, disk))
    i1, i2 = info2["created"]
    # east pair = the far crossings of each insert
    _slide_east(builder, o2, region, moves, disk)
    _slide_east(builder, i2, region, moves, disk)


def _shared_over_arc(builder: DiagramBuilder, c1: int, c2: int) -> int:
    r1, r2 = builder.rows[c1], builder.rows[c2]
    for e in set(r1) & set(r2):
        s1, s2 = r1.index(e), r2.index(e)
        if s1 in (1, 3) and s2 in (1, 3):
            return e
    raise NoApplicableMoveError("bigon lost its over arc")


def _shared_under_arc(builder: DiagramBuilder, c1: int, c2: int) -> int:
    r1, r2 = builder.rows[c1], builder.rows[c2]
    for e in set(r1) & set(r2):
        s1, s2 = r1.index(e), r2.index(e)
        if s1 in (0, 2) and s2 in (0, 2):
            return e
    raise NoApplicableMoveError("bigon lost its under arc")


def _find_corner(builder: DiagramBuilder, e1: int, e2: int,
                 prefer_cids: set[int]) -> Optional[tuple[int, int]]:
    from .moves import _faces, _face_walk_edges

    for face in _faces(builder):
        edges = [e for e, _ in _face_walk_edges(builder, face)]
        if e1 in edges and e2 in edges:
            for cid, slot in face:
                if cid in prefer_cids:
                    return (cid, slot)
    return None


def _rewrite_reroute_line(builder: DiagramBuilder, region: Region,
                          mover_step: int, over_steps: tuple[int, int],
                          moves: list, disk: int) -> None:
    """Send the over line at ``mover_step`` around the two lines after it.

    Two spanning bigons (mover under each 1-line) move the line's passage
    across the region from before the pair to after it; the mover dips to
    color 2 at each crossing and carries its own color through the middle.
    """
    for target_step in over_steps:
        d = builder.diagram()
        mover = _over_line(d, region, mover_step)
        target = _over_line(d, region, target_step)
        first_col_cids = {region.grid[r][s] for r in (_over_travel_rows(region)[:1])
                          for s in (mover_step, target_step)}
        corner = _find_corner(builder, mover["entry"], target["entry"], first_col_cids)
        mv = R2Insert(push_edge=mover["entry"], across_edge=target["entry"],
                      push_over=False, corner=corner)
        info = apply_move(builder, mv)
        moves.append((mv, disk))
        far = info["created"][1]
        _slide_east(builder, far, region, moves, disk)


# -- delete_color_moves -----------------------------------------------------------


def delete_color_moves(cabled: Diagram, gamma: Coloring, target: int
                       ) -> tuple[Diagram, Coloring, MoveTrace]:
    """Remove one color from a parallel coloring by verified local moves.

    Every region whose interior uses the target color is rewritten inside
    its own disk; the result is recolored by propagation from the unchanged
    boundary and accepted only if it verifies, drops the target, and adds
    no new colors.  Raises NoApplicableMoveError when the move library has
    no rewrite for the configuration.
    """
    st: CableStructure = cabled.cable
    if st is None:
        raise NoApplicableMoveError("no cable structure: move library does not apply")
    if not verify_coloring(cabled, gamma):
        raise ColoringError("not a valid coloring")
    values, _ = palette(gamma)
    if target not in values:
        raise ColoringError(f"color {target} is not in the palette")

    builder = DiagramBuilder(cabled)
    moves: list = []
    disks: dict[int, frozenset[int]] = {}
    disk_id = 0
    rewritten = False

    for base_cid in sorted(st.regions):
        region = st.regions[base_cid]
        interior = _region_interior_arcs(cabled, region)
        colors_here = {gamma[e] for e in interior}
        if target not in colors_here:
            continue
        disk_id += 1
        disks[disk_id] = frozenset(c for row in region.grid for c in row)
        _rewrite_region(builder, cabled, gamma, region, target, moves, disk_id)
        rewritten = True

    if not rewritten:
        raise NoApplicableMoveError(
            f"color {target} does not appear in any rewritable region interior")

    new_st = CableStructure(
        multiplicities=st.multiplicities,
        base_components=st.base_components,
        regions=st.regions,
        copy_edges=dict(st.copy_edges),
        twists=list(st.twists),
    )
    result = builder.diagram(cable=new_st)
    new_gamma = _recolor(result, cabled, gamma, st.regions.values())

    if not verify_coloring(result, new_gamma):
        raise NoApplicableMoveError("rewrite produced an invalid coloring")
    new_values, _ = palette(new_gamma)
    if target in new_values:
        raise NoApplicableMoveError(f"rewrite did not eliminate color {target}")
    if not new_values <= values - {target}:
        raise NoApplicableMoveError(
            f"rewrite introduced unexpected colors {sorted(new_values - values)}")

    trace = single_stage(moves, disks)
    report = verify_local_equivalence(cabled, result, trace)
    if not report.ok:
        raise NoApplicableMoveError(f"trace verification failed: {report.reasons}")
    return result, new_gamma, trace


def _region_met_colors(diagram: Diagram, gamma: Coloring, region: Region) -> list[int]:
    """Over-line colors in the order the under strands meet them."""
    out = []
    for s in range(len(region.grid[0])):
        line = _over_line(diagram, region, s)
        out.append(gamma[line["entry"]])
    return out


def _rewrite_region(builder: DiagramBuilder, cabled: Diagram, gamma: Coloring,
                    region: Region, target: int, moves: list, disk: int) -> None:
    q = len(region.grid)
    p = len(region.grid[0])
    met = _region_met_colors(cabled, gamma, region)
    under_in = [gamma[_under_entry(cabled, region, r)] for r in range(q)]

    if p == q == 2:
        u_state = min(under_in)
        y_state = min(met)
        all_regions = cabled.cable.regions.values()
        if target == 4:
            if y_state != 2:
                raise NoApplicableMoveError("color-4 interior without a (2,3) over pair")
            _toggle_verified(builder, cabled, gamma, region, all_regions, moves, disk)
            return
        if target == -1:
            if y_state == 2:
                raise NoApplicableMoveError("expected a toggled (0,1) over pair")
            clean_color = 2 if u_state == 2 else 1
            if u_state == 2:
                _toggle_verified(builder, cabled, gamma, region, all_regions, moves, disk)
            d = builder.diagram()
            g_now = _recolor(d, cabled, gamma, all_regions)
            met_now = _region_met_colors(d, g_now, region)
            if clean_color not in met_now:
                raise NoApplicableMoveError("no clean line to bring first")
            clean_step = met_now.index(clean_color)
            other_step = 1 - clean_step
            _rewrite_swap_first_met(builder, region, clean_step, other_step,
                                    moves, disk)
            return
        raise NoApplicableMoveError(f"no 2-parallel rewrite deletes color {target}")

    if target == 3 and p % 4 == 0:
        # the 0-line met immediately before the middle 1-pair detours to
        # just after it, making the zero-prefix even for the 1-strands
        ones = [s for s, c in enumerate(met) if c == 1]
        if len(ones) != 2 or ones[1] != ones[0] + 1:
            raise NoApplicableMoveError("over pattern lacks an adjacent 1-pair")
        mover = ones[0] - 1
        if mover < 0 or met[mover] != 0:
            raise NoApplicableMoveError("no 0-line before the 1-pair")
        _rewrite_reroute_line(builder, region, mover,
                              (ones[0], ones[1]), moves, disk)
        return
    raise NoApplicableMoveError(f"no rewrite available for color {target} here")


def _recolor(diagram: Diagram, old_diagram: Diagram, gamma: Coloring,
             regions) -> Coloring:
    """Recolor after rewrites, pinning only true boundary arcs.

    Region interiors of the old diagram may survive under the same id in a
    new role after R3 slides, so both old and new interiors are excluded
    from pinning and re-derived by propagation.
    """
    excluded: set[int] = set()
    for region in regions:
        excluded |= _region_interior_arcs(old_diagram, region)
        excluded |= _region_interior_arcs(diagram, region)
    pinned = {e: gamma[e] for e in diagram.edges
              if e in gamma and e not in excluded}
    return propagate_coloring(diagram, pinned)


def _toggle_verified(builder: DiagramBuilder, cabled: Diagram, gamma: Coloring,
                     region: Region, all_regions, moves: list, disk: int) -> None:
    """Try both twist handednesses; keep the one whose pair stays in 0..3.

    The wrong handedness also recolors consistently but drives the over
    pair to (4,5) or (-2,-1) through the region, so the met colors decide.
    """
    snapshot_rows = dict(builder.rows)
    snapshot_loops = builder.free_loops
    snap_cid, snap_edge = builder.next_cid, builder.next_edge
    snap_moves = len(moves)
    for flip in (False, True):
        try:
            _rewrite_toggle_over_state(builder, region, moves, disk, flip)
            d = builder.diagram()
            ext = _recolor(d, cabled, gamma, all_regions)
            met_now = _region_met_colors(d, ext, region)
            if all(0 <= c <= 3 for c in met_now):
                return
            raise ConstructionError(f"toggle drove the pair to {met_now}")
        except (ConstructionError, MoveError, NoApplicableMoveError):
            builder.rows = dict(snapshot_rows)
            builder.free_loops = snapshot_loops
            builder.next_cid, builder.next_edge = snap_cid, snap_edge
            builder._dirty()
            del moves[snap_moves:]
    raise NoApplicableMoveError("twist conjugation failed in both handednesses")
