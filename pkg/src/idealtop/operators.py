"""Set-valued operators over a space.

Covers interior, closure and derived set; the semi-/pre-/b-/beta-open
families with their generalized closures; plain local functions (membership
demands every kind-open neighborhood to meet the argument outside the
ideal) and closure-expanded local functions (the neighborhood is first
blown up by a generalized closure); the complement duals of all of these;
the star-closure ``a | f(a)``; the family of dual-expansive sets; and the
topology induced by a star-closure once it passes the Kuratowski axioms.

The string alias table at the bottom is the single naming surface shared
by the law DSL and the command line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .space import Family, Space, Topology, validate_topology
from .verdicts import KuratowskiReport, Verdict, Witness


class OpenKind(Enum):
    OPEN = "open"
    SEMI = "semi"
    PRE = "pre"
    B = "b"
    BETA = "beta"


KIND_BY_NAME = {k.value: k for k in OpenKind}


@dataclass(frozen=True)
class LocalFnSpec:
    """Which local function: neighborhood kind, plus an optional closure
    kind that expands each neighborhood before testing it."""

    nbhd: OpenKind
    cl: OpenKind | None = None

    @classmethod
    def plain(cls, kind: OpenKind) -> "LocalFnSpec":
        return cls(kind, None)

    @classmethod
    def closure_style(cls, nbhd: OpenKind, cl: OpenKind) -> "LocalFnSpec":
        return cls(nbhd, cl)

    @property
    def is_plain(self) -> bool:
        return self.cl is None


def interior(space: Space, a: int) -> int:
    return space.int_table[a]


def closure(space: Space, a: int) -> int:
    return space.cl_table[a]


def derived_set(space: Space, a: int) -> int:
    """Points whose every open neighborhood meets ``a`` elsewhere."""
    out = 0
    for z in range(space.ground.n):
        rest = a & ~(1 << z)
        if all(u & rest for u in space.opens_at[z]):
            out |= 1 << z
    return out


def kopen_family(space: Space, kind: OpenKind) -> Family:
    """All kind-open subsets, canonically ordered.

    open: members of the topology      semi: a <= cl(int(a))
    pre:  a <= int(cl(a))              b:    a <= int(cl(a)) | cl(int(a))
    beta: a <= cl(int(cl(a)))
    """
    key = ("kopen", kind)
    fam = space._cache.get(key)
    if fam is None:
        if kind is OpenKind.OPEN:
            fam = space.topology.family
        else:
            it, cl = space.int_table, space.cl_table
            pred: Callable[[int], int] = {
                OpenKind.SEMI: lambda a: cl[it[a]],
                OpenKind.PRE: lambda a: it[cl[a]],
                OpenKind.B: lambda a: it[cl[a]] | cl[it[a]],
                OpenKind.BETA: lambda a: cl[it[cl[a]]],
            }[kind]
            fam = Family(
                tuple(a for a in range(space.n_subsets) if a & ~pred(a) == 0)
            )
        space._cache[key] = fam
    return fam


def kopen_at(space: Space, kind: OpenKind) -> tuple[tuple[int, ...], ...]:
    """Per point, the kind-open sets containing it."""
    key = ("kopen-at", kind)
    nbhds = space._cache.get(key)
    if nbhds is None:
        members = kopen_family(space, kind).members
        nbhds = tuple(
            tuple(u for u in members if u >> z & 1) for z in range(space.ground.n)
        )
        space._cache[key] = nbhds
    return nbhds


def kclosure_table(space: Space, kind: OpenKind) -> tuple[int, ...]:
    key = ("kclosure", kind)
    table = space._cache.get(key)
    if table is None:
        full = space.ground.universe
        closed = [full ^ u for u in kopen_family(space, kind).members]
        out = []
        for a in range(space.n_subsets):
            r = full
            for c in closed:
                if c & a == a:
                    r &= c
            out.append(r)
        table = tuple(out)
        space._cache[key] = table
    return table


def kclosure(space: Space, kind: OpenKind, a: int) -> int:
    """Smallest kind-closed superset (kind-closed = complement kind-open)."""
    return kclosure_table(space, kind)[a]


def _tests_at(space: Space, spec: LocalFnSpec) -> tuple[tuple[int, ...], ...]:
    # Per point, the deduplicated masks whose trace on the argument must
    # stay outside the ideal: the neighborhoods themselves for a plain
    # spec, their generalized closures otherwise.
    key = ("lf-tests", spec)
    tests = space._cache.get(key)
    if tests is None:
        nbhds = kopen_at(space, spec.nbhd)
        if spec.is_plain:
            tests = nbhds
        else:
            kcl = kclosure_table(space, spec.cl)
            tests = tuple(tuple(sorted({kcl[u] for u in us})) for us in nbhds)
        space._cache[key] = tests
    return tests


def local_function(space: Space, spec: LocalFnSpec, a: int) -> int:
    imask = space.ideal_mask
    out = 0
    for z, tests in enumerate(_tests_at(space, spec)):
        if all(not imask >> (t & a) & 1 for t in tests):
            out |= 1 << z
    return out


def local_function_table(space: Space, spec: LocalFnSpec) -> tuple[int, ...]:
    key = ("lf-table", spec)
    table = space._cache.get(key)
    if table is None:
        table = tuple(local_function(space, spec, a) for a in range(space.n_subsets))
        space._cache[key] = table
    return table


def psi_dual(space: Space, spec: LocalFnSpec, a: int) -> int:
    """Complement dual of the local function: X - f(X - a)."""
    full = space.ground.universe
    return full ^ local_function(space, spec, full ^ a)


def cl_star(space: Space, spec: LocalFnSpec, a: int) -> int:
    """Star closure ``a | f(a)``."""
    return a | local_function(space, spec, a)


def psi_fix_family(space: Space, spec: LocalFnSpec) -> Family:
    """All subsets contained in their own dual image."""
    full = space.ground.universe
    table = local_function_table(space, spec)
    members = tuple(
        a
        for a in range(space.n_subsets)
        if a & ~(full ^ table[full ^ a]) == 0
    )
    return Family(members)


def cl_star_axioms(space: Space, spec: LocalFnSpec) -> KuratowskiReport:
    """Check the four Kuratowski axioms for the star closure, exhaustively.

    Witness scans run in ascending mask order, pairs in lexicographic
    order, so the first witness is deterministic.
    """
    table = local_function_table(space, spec)
    n_subsets = space.n_subsets
    star = [a | table[a] for a in range(n_subsets)]

    if star[0] == 0:
        fixes_empty = Verdict.ok()
    else:
        fixes_empty = Verdict.violated(
            (("A", 0),), star[0], 0, operation="fixes-empty"
        )

    extensive = Verdict.ok()
    for a in range(n_subsets):
        if a & ~star[a]:
            extensive = Verdict.violated((("A", a),), a, star[a], operation="extensive")
            break

    idempotent = Verdict.ok()
    for a in range(n_subsets):
        if star[star[a]] != star[a]:
            idempotent = Verdict.violated(
                (("A", a),), star[star[a]], star[a], operation="idempotent"
            )
            break

    additive = Verdict.ok()
    for a in range(n_subsets):
        sa = star[a]
        for b in range(n_subsets):
            if star[a | b] != sa | star[b]:
                additive = Verdict.violated(
                    (("A", a), ("B", b)), star[a | b], sa | star[b], operation="additive"
                )
                break
        if not additive.holds:
            break

    return KuratowskiReport(fixes_empty, extensive, idempotent, additive)


class StarTopologyRefused(Exception):
    """The star closure failed a Kuratowski axiom, so no topology is built."""

    def __init__(self, axiom: str, verdict: Verdict):
        super().__init__(f"star closure violates the {axiom} axiom")
        self.axiom = axiom
        self.verdict = verdict


def star_topology(space: Space, spec: LocalFnSpec) -> Topology:
    """Topology whose closed sets are the star-closure fixed points.

    Refuses with :class:`StarTopologyRefused` unless all four Kuratowski
    axioms hold for ``cl_star(spec, .)`` on this space.
    """
    report = cl_star_axioms(space, spec)
    failure = report.first_violation
    if failure is not None:
        raise StarTopologyRefused(*failure)
    full = space.ground.universe
    table = local_function_table(space, spec)
    opens = tuple(
        a for a in range(space.n_subsets) if (full ^ a) | table[full ^ a] == full ^ a
    )
    topo = Topology(Family(opens))
    issue = validate_topology(topo.family, space.ground)
    if issue is not None:  # guarded by the axioms; defensive only
        raise StarTopologyRefused(
            "axioms", Verdict.violated((), 0, operation=issue.kind)
        )
    return topo


# ---------------------------------------------------------------------------
# Alias table: the naming surface shared by the DSL and the CLI.

LOCAL_FN_ALIASES: dict[str, LocalFnSpec] = {
    "star": LocalFnSpec.plain(OpenKind.OPEN),
    "sstar": LocalFnSpec.plain(OpenKind.SEMI),
    "pstar": LocalFnSpec.plain(OpenKind.PRE),
    "bstar": LocalFnSpec.plain(OpenKind.B),
    "betastar": LocalFnSpec.plain(OpenKind.BETA),
    "G": LocalFnSpec.closure_style(OpenKind.OPEN, OpenKind.OPEN),
    "g": LocalFnSpec.closure_style(OpenKind.OPEN, OpenKind.SEMI),
    "xis": LocalFnSpec.closure_style(OpenKind.SEMI, OpenKind.SEMI),
    "xip": LocalFnSpec.closure_style(OpenKind.PRE, OpenKind.PRE),
    "xib": LocalFnSpec.closure_style(OpenKind.B, OpenKind.B),
    "xibeta": LocalFnSpec.closure_style(OpenKind.BETA, OpenKind.BETA),
}

# Dual alias for each local-function alias.
PSI_ALIAS: dict[str, str] = {
    "star": "psi",
    "sstar": "psis",
    "pstar": "psip",
    "bstar": "psib",
    "betastar": "psibetastar",
    "G": "psiG",
    "g": "psig",
    "xis": "psixis",
    "xip": "psixip",
    "xib": "psixib",
    "xibeta": "psixibeta",
}

UnaryOp = Callable[[Space, int], int]


def _build_operator_table() -> dict[str, UnaryOp]:
    ops: dict[str, UnaryOp] = {
        "int": interior,
        "cl": closure,
        "der": derived_set,
    }
    for kind, alias in (
        (OpenKind.SEMI, "scl"),
        (OpenKind.PRE, "pcl"),
        (OpenKind.B, "bcl"),
        (OpenKind.BETA, "betacl"),
    ):
        ops[alias] = (lambda k: lambda sp, a: kclosure(sp, k, a))(kind)
    for alias, spec in LOCAL_FN_ALIASES.items():
        ops[alias] = (lambda s: lambda sp, a: local_function(sp, s, a))(spec)
        ops[PSI_ALIAS[alias]] = (lambda s: lambda sp, a: psi_dual(sp, s, a))(spec)
    return ops


OPERATORS: dict[str, UnaryOp] = _build_operator_table()


def resolve_operator(name: str) -> UnaryOp | None:
    """Look up a unary operator alias; ``clstar:<op>`` composes a | op(a)."""
    fn = OPERATORS.get(name)
    if fn is not None:
        return fn
    if name.startswith("clstar:"):
        base = resolve_operator(name[len("clstar:"):])
        if base is not None:
            return lambda sp, a, _base=base: a | _base(sp, a)
    return None


def operator_names() -> tuple[str, ...]:
    return tuple(sorted(OPERATORS)) + ("clstar:<op>",)


def unary_table(space: Space, name: str) -> tuple[int, ...]:
    """Tabulate an alias over every subset; memoized per space."""
    key = ("alias-table", name)
    table = space._cache.get(key)
    if table is None:
        fn = resolve_operator(name)
        if fn is None:
            raise KeyError(f"unknown operator alias {name!r}")
        table = tuple(fn(space, a) for a in range(space.n_subsets))
        space._cache[key] = table
    return table
