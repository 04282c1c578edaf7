"""Hand-coded law checkers and the named-law registry.

Each checker quantifies over every subset (or subset pair) of the space and
returns a verdict; violations carry the lexicographically first witness,
scanning assignments in ascending mask order with the first variable
outermost. Registry names follow ``<law>:<operator alias>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import operators as ops
from .space import Family, GroundSet, Space, validate_topology
from .verdicts import KuratowskiReport, Verdict, Witness

__all__ = [
    "Law",
    "Verdict",
    "Witness",
    "KuratowskiReport",
    "check_additivity",
    "check_difference_law",
    "check_psi_distributivity",
    "check_kuratowski",
    "check_family_is_topology",
    "check_family_intersection_closed",
    "get_law",
    "law_name_templates",
]


def check_additivity(space: Space, spec: ops.LocalFnSpec) -> Verdict:
    """f(a | b) == f(a) | f(b) over all ordered pairs."""
    t = ops.local_function_table(space, spec)
    n_subsets = space.n_subsets
    for a in range(n_subsets):
        ta = t[a]
        for b in range(n_subsets):
            lhs = t[a | b]
            rhs = ta | t[b]
            if lhs != rhs:
                return Verdict.violated((("A", a), ("B", b)), lhs, rhs)
    return Verdict.ok()


def check_difference_law(space: Space, spec: ops.LocalFnSpec) -> Verdict:
    """f(a) - f(b) == f(a - b) - f(b) over all ordered pairs."""
    t = ops.local_function_table(space, spec)
    n_subsets = space.n_subsets
    for a in range(n_subsets):
        for b in range(n_subsets):
            lhs = t[a] & ~t[b]
            rhs = t[a & ~b] & ~t[b]
            if lhs != rhs:
                return Verdict.violated((("A", a), ("B", b)), lhs, rhs)
    return Verdict.ok()


def check_psi_distributivity(space: Space, spec: ops.LocalFnSpec, connective: str) -> Verdict:
    """psi(a # b) == psi(a) # psi(b) for # = "inter" or "union"."""
    if connective not in ("inter", "union"):
        raise ValueError(f"connective must be 'inter' or 'union', got {connective!r}")
    full = space.ground.universe
    t = ops.local_function_table(space, spec)
    psi = [full ^ t[full ^ a] for a in range(space.n_subsets)]
    n_subsets = space.n_subsets
    for a in range(n_subsets):
        for b in range(n_subsets):
            c = a & b if connective == "inter" else a | b
            lhs = psi[c]
            rhs = psi[a] & psi[b] if connective == "inter" else psi[a] | psi[b]
            if lhs != rhs:
                return Verdict.violated((("A", a), ("B", b)), lhs, rhs, operation=connective)
    return Verdict.ok()


def check_kuratowski(space: Space, spec: ops.LocalFnSpec) -> KuratowskiReport:
    """Per-axiom verdicts for the star closure ``a | f(a)``."""
    return ops.cl_star_axioms(space, spec)


def check_family_is_topology(family: Family, ground: GroundSet) -> Verdict:
    """Wrap the topology validator in a verdict with a pair witness."""
    issue = validate_topology(family, ground)
    if issue is None:
        return Verdict.ok()
    if issue.kind in ("missing-empty", "missing-universe"):
        missing = 0 if issue.kind == "missing-empty" else ground.universe
        return Verdict.violated((), missing, operation=issue.kind)
    a, b = issue.pair
    return Verdict.violated((("A", a), ("B", b)), issue.missing, operation=issue.kind)


def check_family_intersection_closed(family: Family) -> Verdict:
    """Pairwise intersection closure, first failing pair as witness."""
    members, mask = family.members, family.mask
    for i, a in enumerate(members):
        for b in members[i:]:
            if not mask >> (a & b) & 1:
                return Verdict.violated((("A", a), ("B", b)), a & b, operation="inter")
    return Verdict.ok()


@dataclass(frozen=True)
class Law:
    """A named, space-quantified law with witness re-validation support."""

    name: str
    arity: int
    _check: Callable[[Space], Verdict]
    _recheck: Callable[[Space, Witness], bool]

    def check(self, space: Space) -> Verdict:
        return self._check(space)

    def witness_violates(self, space: Space, witness: Witness) -> bool:
        """Re-validate a witness from scratch (no tables, no caching tricks)."""
        return self._recheck(space, witness)

    def pair_violates(self, space: Space, a: int, b: int) -> bool:
        """Convenience for two-variable laws."""
        return self.witness_violates(space, Witness((("A", a), ("B", b)), 0))


def _equation_recheck(instance):
    def recheck(space: Space, witness: Witness) -> bool:
        sets = tuple(bits for _, bits in witness.bindings)
        lhs, rhs = instance(space, *sets)
        return lhs != rhs

    return recheck


def _family_pair_recheck(producer):
    def recheck(space: Space, witness: Witness) -> bool:
        fam = producer(space)
        if witness.operation in ("missing-empty", "missing-universe"):
            missing = 0 if witness.operation == "missing-empty" else space.ground.universe
            return missing not in fam
        a, b = (bits for _, bits in witness.bindings)
        combo = a | b if witness.operation == "union" else a & b
        return a in fam and b in fam and combo not in fam

    return recheck


def law_name_templates() -> tuple[str, ...]:
    return (
        "additivity:<op>",
        "diff-law:<op>",
        "psi-cap:<op>",
        "psi-cup:<op>",
        "kuratowski:<op>",
        "eta-topology:<op>",
        "family-cap-closed:<kind>",
    )


def get_law(name: str) -> Law:
    """Resolve a registry name like ``additivity:sstar``.

    ``<op>`` ranges over the local-function aliases, ``<kind>`` over
    open/semi/pre/b/beta. Raises ValueError for anything else.
    """
    head, sep, arg = name.partition(":")
    if not sep:
        raise ValueError(f"law name needs an argument: {name!r}")

    if head == "family-cap-closed":
        kind = ops.KIND_BY_NAME.get(arg)
        if kind is None:
            raise ValueError(f"unknown open-set kind {arg!r} in {name!r}")

        def check_kind(space: Space, _kind=kind) -> Verdict:
            return check_family_intersection_closed(ops.kopen_family(space, _kind))

        return Law(
            name,
            2,
            check_kind,
            _family_pair_recheck(lambda sp, _kind=kind: ops.kopen_family(sp, _kind)),
        )

    spec = ops.LOCAL_FN_ALIASES.get(arg)
    if spec is None:
        raise ValueError(f"unknown operator alias {arg!r} in {name!r}")

    if head == "additivity":
        def instance(space: Space, a: int, b: int, _s=spec):
            f = lambda x: ops.local_function(space, _s, x)
            return f(a | b), f(a) | f(b)

        return Law(name, 2, lambda sp, _s=spec: check_additivity(sp, _s),
                   _equation_recheck(instance))

    if head == "diff-law":
        def instance(space: Space, a: int, b: int, _s=spec):
            f = lambda x: ops.local_function(space, _s, x)
            return f(a) & ~f(b), f(a & ~b) & ~f(b)

        return Law(name, 2, lambda sp, _s=spec: check_difference_law(sp, _s),
                   _equation_recheck(instance))

    if head in ("psi-cap", "psi-cup"):
        connective = "inter" if head == "psi-cap" else "union"

        def instance(space: Space, a: int, b: int, _s=spec, _c=connective):
            psi = lambda x: ops.psi_dual(space, _s, x)
            if _c == "inter":
                return psi(a & b), psi(a) & psi(b)
            return psi(a | b), psi(a) | psi(b)

        return Law(
            name, 2,
            lambda sp, _s=spec, _c=connective: check_psi_distributivity(sp, _s, _c),
            _equation_recheck(instance),
        )

    if head == "kuratowski":
        def check_all(space: Space, _s=spec) -> Verdict:
            failure = check_kuratowski(space, _s).first_violation
            return Verdict.ok() if failure is None else failure[1]

        def recheck(space: Space, witness: Witness, _s=spec) -> bool:
            star = lambda x: ops.cl_star(space, _s, x)
            sets = tuple(bits for _, bits in witness.bindings)
            if witness.operation == "fixes-empty":
                return star(0) != 0
            if witness.operation == "extensive":
                (a,) = sets
                return bool(a & ~star(a))
            if witness.operation == "idempotent":
                (a,) = sets
                return star(star(a)) != star(a)
            if witness.operation == "additive":
                a, b = sets
                return star(a | b) != star(a) | star(b)
            raise ValueError(f"unknown closure axiom {witness.operation!r}")

        return Law(name, 2, check_all, recheck)

    if head == "eta-topology":
        def check_topology(space: Space, _s=spec) -> Verdict:
            fam = ops.psi_fix_family(space, _s)
            return check_family_is_topology(fam, space.ground)

        return Law(
            name, 2, check_topology,
            _family_pair_recheck(lambda sp, _s=spec: ops.psi_fix_family(sp, _s)),
        )

    raise ValueError(f"unknown law {name!r}")
