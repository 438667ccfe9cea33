"""Solver configuration toggles and run statistics."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

__all__ = ["SolverConfig", "SolveStats", "config_from_name", "CONFIG_NAMES",
           "HEURISTIC_CODES"]

# short codes accepted by --heur and by named configurations
HEURISTIC_CODES = ("b-cpl", "b-sp", "b-fi", "d-ms", "c-dist", "c-pl")


@dataclass(frozen=True)
class SolverConfig:
    """Heuristic toggles and ordering choices.

    ``rng_seed`` only feeds instance generation in the harness; a solve()
    call itself is fully deterministic.
    """

    preprocess: bool = True
    trivial_detection: bool = True
    b_cpl: bool = False
    b_sp: bool = True
    b_fi: bool = True
    d_ms: bool = True
    dms_bare_lists_only: bool = True
    c_dist: bool = True
    c_pl: bool = True
    timeout_ms: Optional[int] = None
    rng_seed: int = 0

    def heuristic_codes(self) -> list[str]:
        out = []
        for code, on in (("b-cpl", self.b_cpl), ("b-sp", self.b_sp),
                         ("b-fi", self.b_fi), ("d-ms", self.d_ms),
                         ("c-dist", self.c_dist), ("c-pl", self.c_pl)):
            if on:
                out.append(code)
        return out

    def fingerprint(self) -> str:
        heur = ",".join(self.heuristic_codes()) or "none"
        bits = [f"heur={heur}"]
        if not self.preprocess:
            bits.append("no-preprocess")
        if not self.trivial_detection:
            bits.append("no-trivial")
        if self.d_ms and not self.dms_bare_lists_only:
            bits.append("dms-any-lists")
        return ";".join(bits)


# named heuristic sets mirroring the evaluated configurations; preprocessing
# and trivial detection are separate switches and stay untouched here
_NAMED_HEURISTICS: dict[str, tuple[str, ...]] = {
    "bare": (),
    "b-sp": ("b-sp",),
    "b-sp+b-fi": ("b-sp", "b-fi"),
    "b-sp+c": ("b-sp", "c-dist", "c-pl"),
    "b-sp+d-ms": ("b-sp", "d-ms"),
    "b-sp+b-fi+c": ("b-sp", "b-fi", "c-dist", "c-pl"),
    "b-sp+b-fi+d-ms": ("b-sp", "b-fi", "d-ms"),
    "b-sp+c+d-ms": ("b-sp", "c-dist", "c-pl", "d-ms"),
    "all": ("b-sp", "b-fi", "c-dist", "c-pl", "d-ms"),
}
_ALIASES = {"b-sp+c-dist+c-pl": "b-sp+c"}

CONFIG_NAMES = tuple(_NAMED_HEURISTICS)


def config_from_name(name: str, base: Optional[SolverConfig] = None) -> SolverConfig:
    """Build a SolverConfig whose heuristic toggles match a named set.

    Pipeline switches (preprocess, trivial detection, timeout, seed) are
    taken from ``base`` when given, defaults otherwise.
    """
    canonical = _ALIASES.get(name, name)
    if canonical not in _NAMED_HEURISTICS:
        raise ValueError(f"unknown configuration name: {name!r}")
    codes = set(_NAMED_HEURISTICS[canonical])
    base = base if base is not None else SolverConfig()
    return SolverConfig(
        preprocess=base.preprocess,
        trivial_detection=base.trivial_detection,
        b_cpl="b-cpl" in codes,
        b_sp="b-sp" in codes,
        b_fi="b-fi" in codes,
        d_ms="d-ms" in codes,
        dms_bare_lists_only=base.dms_bare_lists_only,
        c_dist="c-dist" in codes,
        c_pl="c-pl" in codes,
        timeout_ms=base.timeout_ms,
        rng_seed=base.rng_seed,
    )


@dataclass
class SolveStats:
    """Counters for one solve() call.

    ``nodes`` counts search-tree nodes entered (>= 1 whenever the tree is
    entered at all); ``max_depth`` uses the convention that the root sits at
    depth 0, which keeps max_depth <= k*ell structural.  ``bfi_recorded``
    counts pushed forbidden intervals, ``bfi_masked`` the candidate
    insertions they masked out of the branching.
    """

    nodes: int = 0
    br1: int = 0
    br2: int = 0
    br3: int = 0
    prunes_len: int = 0
    prunes_bcpl: int = 0
    prunes_bsp: int = 0
    bfi_recorded: int = 0
    bfi_masked: int = 0
    dms_fired: int = 0
    solved_by: str = ""
    wall_ms: float = 0.0
    n_before: int = 0
    n_after: int = 0
    m_before: int = 0
    m_after: int = 0
    max_depth: int = 0

    def as_dict(self) -> dict:
        return asdict(self)
