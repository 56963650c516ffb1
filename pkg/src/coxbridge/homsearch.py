"""Exhaustive search for maximal rank Coxeter quotients of a knot diagram.

Each member of a robust family is matched bijectively to the Wirtinger seeds,
labels are pushed along the stored move sequence with the involution form of
the crossing relation (``r_new = r_over r_prev r_over``), and the crossings
not consumed by moves are checked.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import permutations
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import fox
from .coxeter import GROUPS_BY_RANK, GroupTable, get_group
from .diagram import Diagram, build_diagram, parse_gauss
from .errors import NotAReflection, NotFound, OmegaOutOfRange, RankMismatch
from .golden import pmatmul
from .robust import RobustSet
from .wirtinger import DEFAULT_K_MAX, Move, WirtingerResult, saturate, wirtinger_number


@dataclass(frozen=True)
class QuotientCertificate:
    knot: str
    group: str
    omega: int
    seeds: tuple[int, ...]
    assignment: tuple[int, ...]
    labels: tuple[int, ...]
    robust_hash: str
    verified: bool = True
    gauss: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("seeds", "assignment", "labels", "gauss"):
            out[k] = list(out[k])
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> QuotientCertificate:
        return cls(
            knot=obj["knot"],
            group=obj["group"],
            omega=int(obj["omega"]),
            seeds=tuple(obj["seeds"]),
            assignment=tuple(obj["assignment"]),
            labels=tuple(obj["labels"]),
            robust_hash=obj.get("robust_hash", ""),
            verified=bool(obj.get("verified", False)),
            gauss=tuple(obj.get("gauss", ())),
        )


def _conj_rows(gt: GroupTable) -> list[list[int]]:
    rows = gt.__dict__.get("_conj_rows")
    if rows is None:
        rows = gt.conj.tolist()
        gt.__dict__["_conj_rows"] = rows
    return rows


def propagate(
    d: Diagram,
    moves: Sequence[Move],
    gt: GroupTable,
    seed_assignment: Mapping[int, int],
) -> list[int]:
    """Extend a seed labeling by replaying ``moves``; returns one label per strand."""
    conj = _conj_rows(gt)
    R = gt.n_reflections
    labels: list[int | None] = [None] * len(d.strands)
    for s, r in seed_assignment.items():
        if not 0 <= r < R:
            raise NotAReflection(f"label {r} is not a reflection of {gt.name}")
        labels[s] = r
    for mv in moves:
        labels[mv.new] = conj[labels[mv.over]][labels[mv.prev]]
    if any(x is None for x in labels):
        raise ValueError("moves do not reach every strand from these seeds")
    return labels  # type: ignore[return-value]


def verify(d: Diagram, gt: GroupTable, labeling: Sequence[int], crossings=None) -> bool:
    """Crossing relation ``r_over r_a r_over == r_b`` at every (given) crossing."""
    conj = _conj_rows(gt)
    for c in d.crossings if crossings is None else crossings:
        if conj[labeling[c.over]][labeling[c.under_a]] != labeling[c.under_b]:
            return False
    return True


def search(
    d: Diagram, wr: WirtingerResult, gt: GroupTable, rs: RobustSet
) -> QuotientCertificate | None:
    """First (generating set, bijection) whose propagated labeling is a coloring.

    A ``None`` result means the diagram has no good quotient onto ``gt`` of
    rank equal to its Wirtinger number.
    """
    if wr.omega != gt.rank:
        raise RankMismatch(f"omega(D) = {wr.omega} but {gt.name} has rank {gt.rank}")
    used = {mv.crossing for mv in wr.moves}
    pending = [c for c in d.crossings if c.id not in used]
    for gs in rs.sets:
        for perm in permutations(gs):
            labels = propagate(d, wr.moves, gt, dict(zip(wr.seeds, perm)))
            if verify(d, gt, labels, pending):
                return QuotientCertificate(
                    knot=d.name or "",
                    group=gt.name,
                    omega=wr.omega,
                    seeds=tuple(wr.seeds),
                    assignment=tuple(perm),
                    labels=tuple(labels),
                    robust_hash=rs.content_hash,
                    gauss=d.source.entries,
                )
    return None


def brute_force_exists(d: Diagram, wr: WirtingerResult, gt: GroupTable) -> bool:
    """Oracle: try every assignment of reflections to the seeds, no trimming."""
    from itertools import product

    used = {mv.crossing for mv in wr.moves}
    pending = [c for c in d.crossings if c.id not in used]
    for assign in product(range(gt.n_reflections), repeat=len(wr.seeds)):
        if len(set(assign)) < gt.rank:
            continue
        labels = propagate(d, wr.moves, gt, dict(zip(wr.seeds, assign)))
        if verify(d, gt, labels, pending) and gt.subgroup_order(assign) == gt.order:
            return True
    return False


def dihedral_certificate(d: Diagram, dc: fox.DihedralCertificate) -> QuotientCertificate:
    """Express a Fox coloring certificate in the common certificate schema."""
    return QuotientCertificate(
        knot=d.name or "",
        group=dc.group,
        omega=2,
        seeds=dc.seeds,
        assignment=dc.assignment,
        labels=dc.labels,
        robust_hash="",
        gauss=d.source.entries,
    )


def verify_certificate(cert: QuotientCertificate, gt: GroupTable | None = None) -> bool:
    """Re-check a certificate from scratch using explicit matrix products.

    Dihedral certificates (group ``I2(p)``) are re-checked as Fox colorings.
    """
    if not cert.gauss:
        raise ValueError("certificate carries no Gauss code")
    d = build_diagram(parse_gauss(",".join(map(str, cert.gauss))))
    if cert.group.startswith("I2("):
        p = int(cert.group[3:-1])
        colored, _ = saturate(d, cert.seeds)
        return (
            cert.omega == 2
            and len(colored) == len(d.strands)
            and tuple(cert.labels[s] for s in cert.seeds) == tuple(cert.assignment)
            and fox.verify_dihedral(d, p, cert.labels)
        )
    gt = gt or get_group(cert.group)
    R = gt.n_reflections
    labels = cert.labels
    if len(labels) != len(d.strands) or any(not 0 <= x < R for x in labels):
        return False
    if len(cert.seeds) != gt.rank or cert.omega != gt.rank:
        return False
    colored, _ = saturate(d, cert.seeds)
    if len(colored) != len(d.strands):
        return False
    if tuple(labels[s] for s in cert.seeds) != tuple(cert.assignment):
        return False
    mats = [gt.reflection_matrix(x) for x in labels]
    for c in d.crossings:
        lhs = pmatmul(pmatmul(mats[c.over], mats[c.under_a]), mats[c.over])
        if not np.array_equal(lhs, mats[c.under_b]):
            return False
    return gt.subgroup_order(cert.assignment) == gt.order


@dataclass
class AnalysisReport:
    name: str
    crossings: int
    omega: int
    seeds: tuple[int, ...]
    hits: dict[str, bool] = field(default_factory=dict)
    certificates: dict[str, QuotientCertificate] = field(default_factory=dict)
    dihedral: fox.DihedralCertificate | None = None
    dihedral_note: str = ""

    @property
    def bridge(self) -> int | None:
        """Certified bridge number (= meridional rank), if any quotient was found."""
        if self.omega == 1 or self.dihedral is not None or any(self.hits.values()):
            return self.omega
        return None

    def summary(self) -> str:
        if self.bridge is not None:
            return f"{self.name}: omega={self.omega}, bridge = meridional rank = {self.bridge}"
        return f"{self.name}: omega={self.omega}, bridge <= {self.omega}, MRCQ not found"


def analyze(
    d: Diagram,
    library: Mapping[str, RobustSet],
    groups: Sequence[str] | None = None,
    k_max: int = DEFAULT_K_MAX,
) -> AnalysisReport:
    try:
        wr = wirtinger_number(d, k_max)
    except NotFound:
        raise OmegaOutOfRange(f"{d.name}: omega(D) > {k_max}; only the bound omega <= {d.m} holds") from None
    rep = AnalysisReport(d.name or "", d.m, wr.omega, tuple(wr.seeds))
    if wr.omega == 2:
        try:
            rep.dihedral = fox.dihedral_mrcq(d, wr.seeds)
        except fox.NoOddPrimeDivisor as exc:
            rep.dihedral_note = f"dihedral certificate unavailable: {exc}"
        return rep
    for g in GROUPS_BY_RANK.get(wr.omega, ()):
        if groups is not None and g not in groups:
            continue
        if g not in library:
            continue
        cert = search(d, wr, get_group(g), library[g])
        rep.hits[g] = cert is not None
        if cert is not None:
            rep.certificates[g] = cert
    return rep


def save_certificates(certs: Sequence[QuotientCertificate], path: str | Path) -> None:
    Path(path).write_text(json.dumps([c.to_json() for c in certs], indent=1) + "\n")


def load_certificates(path: str | Path) -> list[QuotientCertificate]:
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict):
        obj = [obj]
    return [QuotientCertificate.from_json(o) for o in obj]
