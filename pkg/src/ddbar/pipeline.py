"""Manifest -> CDBA -> bicomplex -> report, with an optional quotient step."""

from __future__ import annotations

from dataclasses import dataclass

from .bicomplex import FiniteBicomplex
from .cdba import CDBA, build_cdba, compile_bicomplex
from .cohomology import CohomologyReport, compute_report
from .errors import UnknownName
from .group import FiniteGroupAction, GeneratorAction, invariant_differentials_report, invariant_subcomplex
from .manifest import Manifest


@dataclass
class QuotientResult:
    cdba: CDBA
    group: FiniteGroupAction
    sub: FiniteBicomplex
    report: CohomologyReport
    differentials: list[str]


def group_from_manifest(cdba: CDBA, manifest: Manifest, action: str) -> FiniteGroupAction:
    spec = manifest.actions.get(action)
    if spec is None:
        known = ", ".join(manifest.actions) or "none"
        raise UnknownName(f"manifest {manifest.name!r} has no action {action!r} (known: {known})")
    return FiniteGroupAction(cdba, [GeneratorAction(tuple(spec.images), name=action)], name=action)


def cohomology_of(manifest: Manifest, representatives: bool = False) -> CohomologyReport:
    bc = compile_bicomplex(build_cdba(manifest))
    return compute_report(bc, name=manifest.name, representatives=representatives)


def quotient_of(manifest: Manifest, action: str, representatives: bool = False) -> QuotientResult:
    cdba = build_cdba(manifest)
    group = group_from_manifest(cdba, manifest, action)
    sub = invariant_subcomplex(compile_bicomplex(cdba), group)
    report = compute_report(sub, name=f"{manifest.name}/{action}", representatives=representatives)
    return QuotientResult(cdba, group, sub, report, invariant_differentials_report(sub))
