"""Piecewise affine coordinates on a skeleton and faithfulness certification.

From an order matrix the skeleton acquires, stratum by stratum, an integer
affine map into R^ell whose i-th coordinate is the affine restriction of
``-log|s_i/s_0|``.  This module certifies two things about the resulting
piecewise map:

* unimodularity of every piece, via Smith normal form of the image
  edge-difference vectors (all elementary divisors 1 and full rank); and
* global injectivity, by showing the images of the open simplices of any
  two distinct strata are disjoint.

Disjointness is established along two independent routes.  The certificate
route picks a vertex of one stratum missing from the other and checks the
vertex-value table of that coordinate (0 once and 1 elsewhere on the first
stratum, at least 1 everywhere on the second, plus the concavity flag).
The exact route decides emptiness of the intersection of the two image
polytopes outright, by coordinate-interval separation when a single
coordinate suffices and by exact rational LP feasibility otherwise.

Pair checks are independent of one another and may run concurrently; the
report is always assembled in sorted order, so its serialization does not
depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import DualComplex, SimplexPoint, Stratum, validate_complex
from .lattice import (IntMatrix, RationalPolyhedron, relint_intersection_nonempty,
                      simplex_image_polyhedron, smith_normal_form)
from .sections import OrderMatrix, restrict_affine, validate_orders
from .tropical import TropicalProjectivePoint, trop_normalize

__all__ = [
    "PiecewiseAffineMap",
    "UnimodularityCertificate",
    "SeparationCertificate",
    "ExactVerdict",
    "FaceDischarge",
    "PairEvidence",
    "FaithfulnessReport",
    "build_map",
    "check_unimodular",
    "piece_injective",
    "separation_certificate",
    "images_relint_disjoint_exact",
    "check_faithful",
]

MODES = ("certificate", "exact", "both")


@dataclass(frozen=True, eq=False)
class PiecewiseAffineMap:
    """For each stratum, an integer matrix sending barycentric weights to R^n.

    Row ``i-1`` of a piece holds the coefficients of coordinate ``i``
    (section index) over the stratum's vertex slots.  Pieces automatically
    agree on shared faces because entries depend only on vertex labels.
    """

    complex: DualComplex
    n: int
    pieces: dict[str, tuple[tuple[int, ...], ...]]

    def piece(self, s: "Stratum | str") -> tuple[tuple[int, ...], ...]:
        return self.pieces[self.complex.stratum(s).id]

    def vertex_image(self, s: "Stratum | str", slot: int) -> tuple[int, ...]:
        return tuple(row[slot] for row in self.piece(s))

    def vertex_images(self, s: "Stratum | str") -> tuple[tuple[int, ...], ...]:
        rows = self.piece(s)
        arity = len(self.complex.stratum(s).vertices)
        return tuple(tuple(row[a] for row in rows) for a in range(arity))

    def edge_vectors(self, s: "Stratum | str") -> tuple[tuple[int, ...], ...]:
        imgs = self.vertex_images(s)
        return tuple(tuple(b - a for a, b in zip(imgs[0], img)) for img in imgs[1:])

    def apply(self, p: SimplexPoint) -> tuple[Fraction, ...]:
        rows = self.piece(p.stratum)
        if len(rows[0]) != len(p.u):
            raise ValueError("point arity does not match the piece")
        return tuple(sum((c * w for c, w in zip(row, p.u)), Fraction(0)) for row in rows)

    def projective_image(self, p: SimplexPoint) -> TropicalProjectivePoint:
        """Image in tropical projective space, with the base chart coordinate 0."""
        return trop_normalize((Fraction(0),) + self.apply(p))


def build_map(c: DualComplex, m: OrderMatrix, check: bool = True) -> PiecewiseAffineMap:
    """Assemble the per-stratum affine pieces from an order matrix.

    With ``check`` (the default) the complex and the order matrix are
    validated first and any violation raises.
    """
    if check:
        problems = validate_complex(c)
        if problems:
            raise ValueError("invalid complex: " + "; ".join(v.message for v in problems))
        problems = validate_orders(m, c)
        if problems:
            raise ValueError("invalid order matrix: " + "; ".join(v.message for v in problems))
    elif m.ell != c.ell:
        raise ValueError("order matrix size does not match the complex")
    pieces = {}
    for s in c.strata:
        rows = tuple(tuple(int(x) for x in restrict_affine(m, i, s).coefficients)
                     for i in range(1, m.ell + 1))
        pieces[s.id] = rows
    return PiecewiseAffineMap(c, m.ell, pieces)


@dataclass(frozen=True)
class UnimodularityCertificate:
    """Per-stratum evidence: edge-difference vectors and their divisors."""

    stratum: str
    edge_matrix: IntMatrix
    elementary_divisors: tuple[int, ...]
    verdict: bool


def check_unimodular(f: PiecewiseAffineMap, s: "Stratum | str") -> UnimodularityCertificate:
    """Unimodularity of one piece.

    The piece is affine on the whole simplex, so it suffices that the image
    edge-difference vectors extend to a lattice basis: full rank with every
    elementary divisor equal to 1.  A true verdict implies the piece is
    injective on its simplex.  Vertex strata pass vacuously.
    """
    st = f.complex.stratum(s)
    vectors = f.edge_vectors(st)
    matrix = IntMatrix.from_rows(vectors, cols=f.n)
    if not vectors:
        return UnimodularityCertificate(st.id, matrix, (), True)
    diag = smith_normal_form(matrix).diagonal
    verdict = len(diag) == len(vectors) and all(x == 1 for x in diag)
    return UnimodularityCertificate(st.id, matrix, diag, verdict)


def piece_injective(f: PiecewiseAffineMap, s: "Stratum | str") -> bool:
    """Injectivity of one piece on its simplex: edge vectors of full rank."""
    st = f.complex.stratum(s)
    vectors = f.edge_vectors(st)
    if not vectors:
        return True
    return IntMatrix.from_rows(vectors, cols=f.n).rank() == len(vectors)


def separation_certificate(f: PiecewiseAffineMap, m: OrderMatrix,
                           s: "Stratum | str", t: "Stratum | str") -> int | None:
    """A coordinate separating the open simplex of ``s`` from all of ``t``.

    Looks for a vertex ``j`` of ``s`` that is not a vertex of ``t`` whose
    coordinate has vertex values 0 at ``j`` and exactly 1 at the remaining
    vertices of ``s`` (so the open simplex maps into [0, 1), and into (0, 1)
    when ``s`` has an edge), while every vertex value on ``t`` is at least 1
    and row ``j`` carries the horizontal-effectivity flag (so the whole
    simplex of ``t`` maps into [1, oo)).  Returns the component index ``j``,
    or None when no vertex qualifies; with a validated order matrix the
    first vertex of ``s`` outside ``t`` always does.
    """
    c = f.complex
    st = c.stratum(s)
    tt = c.stratum(t)
    if st.id == tt.id:
        raise ValueError("separation requires two distinct strata")
    if c.face_related(st, tt):
        raise ValueError("face pairs are discharged by injectivity, not separation")
    t_verts = set(tt.vertices)
    for j in st.vertices:
        if j in t_verts:
            continue
        if not m.horizontal_effective[j]:
            continue
        if m.order(j, j) != 0:
            continue
        if any(m.order(j, v) != 1 for v in st.vertices if v != j):
            continue
        if any(m.order(j, w) < 1 for w in tt.vertices):
            continue
        return j
    return None


@dataclass(frozen=True)
class ExactVerdict:
    """Outcome of the exact disjointness oracle for one stratum pair."""

    disjoint: bool
    witness: tuple[Fraction, ...] | None
    method: str  # "face-injectivity" | "interval" | "lp"


@dataclass(frozen=True)
class SeparationCertificate:
    interior: str  # stratum whose open simplex maps below the separating value
    coordinate: int


@dataclass(frozen=True)
class FaceDischarge:
    ambient: str
    injective: bool


@dataclass(frozen=True)
class PairEvidence:
    left: str
    right: str
    relation: str  # "face" | "independent"
    face: FaceDischarge | None
    separation: SeparationCertificate | None
    exact: ExactVerdict | None
    disjoint: bool | None


def _interval_table(f: PiecewiseAffineMap, sid: str, cache: dict) -> tuple:
    table = cache.get(sid)
    if table is None:
        imgs = f.vertex_images(sid)
        table = tuple((min(vals), max(vals))
                      for vals in zip(*imgs))
        cache[sid] = table
    return table


def _intervals_separate(ta, tb) -> bool:
    # Projections of the two open images; a single coordinate with disjoint
    # projections proves the images disjoint.
    for (alo, ahi), (blo, bhi) in zip(ta, tb):
        if alo == ahi and blo == bhi:
            if alo != blo:
                return True
        elif alo == ahi:
            if alo <= blo or alo >= bhi:
                return True
        elif blo == bhi:
            if blo <= alo or blo >= ahi:
                return True
        elif ahi <= blo or bhi <= alo:
            return True
    return False


def _relint_poly(f: PiecewiseAffineMap, sid: str, cache: dict) -> RationalPolyhedron:
    poly = cache.get(sid)
    if poly is None:
        poly = simplex_image_polyhedron(f.vertex_images(sid), relative_interior=True)
        cache[sid] = poly
    return poly


def _injective(f: PiecewiseAffineMap, sid: str, cache: dict) -> bool:
    flag = cache.get(sid)
    if flag is None:
        flag = piece_injective(f, sid)
        cache[sid] = flag
    return flag


def _pair_exact(f: PiecewiseAffineMap, sid: str, tid: str,
                intervals: dict, polys: dict, injective: dict) -> ExactVerdict:
    c = f.complex
    if c.face_related(sid, tid):
        ambient = sid if c.is_face(tid, sid) else tid
        if _injective(f, ambient, injective):
            return ExactVerdict(True, None, "face-injectivity")
        # Degenerate ambient piece: fall through to the oracle.
    if _intervals_separate(_interval_table(f, sid, intervals),
                           _interval_table(f, tid, intervals)):
        return ExactVerdict(True, None, "interval")
    hit, witness = relint_intersection_nonempty(_relint_poly(f, sid, polys),
                                                _relint_poly(f, tid, polys))
    return ExactVerdict(not hit, witness, "lp")


def images_relint_disjoint_exact(f: PiecewiseAffineMap,
                                 s: "Stratum | str", t: "Stratum | str") -> ExactVerdict:
    """Exact verdict on disjointness of the two open-simplex images.

    Face pairs reduce to injectivity of the ambient piece; other pairs are
    decided on the image polytopes, first by a one-coordinate interval
    separation and otherwise by the exact rational LP oracle, which returns
    a collision witness when the images meet.
    """
    sid = f.complex.stratum(s).id
    tid = f.complex.stratum(t).id
    if sid == tid:
        raise ValueError("disjointness query requires two distinct strata")
    return _pair_exact(f, sid, tid, {}, {}, {})


@dataclass(frozen=True)
class FaithfulnessReport:
    mode: str
    certificates: tuple[UnimodularityCertificate, ...]
    pairs: tuple[PairEvidence, ...]
    overall: str  # "faithful" | "not_faithful" | "certificate_incomplete"
    defects: tuple[str, ...]


def _pair_evidence(f: PiecewiseAffineMap, m: OrderMatrix, sid: str, tid: str,
                   mode: str, intervals: dict, polys: dict,
                   injective: dict) -> PairEvidence:
    c = f.complex
    if c.face_related(sid, tid):
        ambient = sid if c.is_face(tid, sid) else tid
        ok = _injective(f, ambient, injective)
        if ok:
            disjoint = True
        elif mode == "certificate":
            disjoint = None
        else:
            verdict = _pair_exact(f, sid, tid, intervals, polys, injective)
            return PairEvidence(sid, tid, "face", FaceDischarge(ambient, False),
                                None, verdict, verdict.disjoint)
        return PairEvidence(sid, tid, "face", FaceDischarge(ambient, ok),
                            None, None, disjoint)

    separation = None
    if mode in ("certificate", "both"):
        coord = separation_certificate(f, m, sid, tid)
        if coord is not None:
            separation = SeparationCertificate(sid, coord)
        else:
            coord = separation_certificate(f, m, tid, sid)
            if coord is not None:
                separation = SeparationCertificate(tid, coord)
    exact = None
    if mode in ("exact", "both"):
        exact = _pair_exact(f, sid, tid, intervals, polys, injective)

    if mode == "certificate":
        disjoint = True if separation is not None else None
    else:
        disjoint = exact.disjoint
    return PairEvidence(sid, tid, "independent", None, separation, exact, disjoint)


def check_faithful(c: DualComplex, m: OrderMatrix, mode: str = "both",
                   jobs: int = 1,
                   pair_filter: "Iterable[Sequence[str]] | None" = None) -> FaithfulnessReport:
    """Full faithfulness check: per-stratum unimodularity plus pairwise disjointness.

    ``mode`` selects the evidence route per pair: "certificate" (separating
    coordinate), "exact" (polytope oracle), or "both", in which case any
    disagreement between the routes is recorded as a defect.  ``jobs``
    parallelizes the pair checks; the report and its serialization are
    identical for any job count.  ``pair_filter`` restricts which unordered
    pairs are examined (ids); the overall verdict then only speaks for the
    examined pairs.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    f = build_map(c, m, check=True)

    order = c.stratum_ids()
    certificates = tuple(check_unimodular(f, sid) for sid in order)

    wanted = None
    if pair_filter is not None:
        wanted = {frozenset(p) for p in pair_filter}
        for p in wanted:
            for sid in p:
                c.stratum(sid)  # raises on unknown ids
    pairs_to_check = [(a, b) for a, b in combinations(order, 2)
                      if wanted is None or frozenset((a, b)) in wanted]

    intervals: dict = {}
    polys: dict = {}
    injective: dict = {}

    def run(pair):
        a, b = pair
        return _pair_evidence(f, m, a, b, mode, intervals, polys, injective)

    if jobs == 1 or len(pairs_to_check) < 2:
        evidence = [run(p) for p in pairs_to_check]
    else:
        # Pure functions over immutable inputs; cache writes are idempotent.
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            evidence = list(pool.map(run, pairs_to_check))
    evidence.sort(key=lambda e: (c.sort_key(e.left), c.sort_key(e.right)))

    defects = []
    for e in evidence:
        if e.separation is not None and e.exact is not None and not e.exact.disjoint:
            defects.append(f"pair {e.left}/{e.right}: separation certificate "
                           f"contradicts the exact oracle")
        # Only both-mode actually consulted the certificate route, so only
        # there can its silence be reported as a gap.
        if (mode == "both" and e.relation == "independent" and e.separation is None
                and e.exact is not None and not e.exact.disjoint):
            defects.append(f"pair {e.left}/{e.right}: no separating vertex exists "
                           f"and the exact oracle reports a collision")

    unimodular_ok = all(cert.verdict for cert in certificates)
    collision = any(e.disjoint is False for e in evidence)
    unknown = any(e.disjoint is None for e in evidence)
    if not unimodular_ok or collision:
        overall = "not_faithful"
    elif unknown:
        overall = "certificate_incomplete"
    else:
        overall = "faithful"
    return FaithfulnessReport(mode, certificates, tuple(evidence), overall, tuple(defects))
