"""JSON code descriptors and their re-verification."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .cyclic import AboveCeiling, bch_lower_bound, from_generator, min_distance_exact
from .errors import LrcError, PreconditionError
from .field import field_of_order
from .lrc import (
    ConstructionKind,
    Kind,
    LrcParams,
    LrcReport,
    construct,
    expected_dimension,
    locality_check_defining_set,
    locality_check_direct,
    singleton_bound,
)
from .poly import Polynomial
from .repair import repair_groups

REQUIRED = (
    "q", "n", "r", "delta", "construction", "generator", "k", "d_exact", "d_bch_lower",
    "singleton_bound", "optimal", "locality", "repair_groups",
)


class DescriptorError(PreconditionError):
    pass


def _d_to_json(d):
    return {"above_ceiling": d.ceiling} if isinstance(d, AboveCeiling) else d


def _d_from_json(v):
    if isinstance(v, dict):
        return AboveCeiling(int(v["above_ceiling"]))
    return int(v)


@dataclass(frozen=True)
class CodeDescriptor:
    q: int
    n: int
    r: int
    delta: int
    construction: str
    target_d: int | None
    generator: list
    k: int
    d_exact: object
    d_bch_lower: int
    singleton_bound: int
    optimal: bool
    locality: dict
    repair_groups: list

    @property
    def params(self) -> LrcParams:
        return LrcParams(self.q, self.n, self.r, self.delta)

    @property
    def kind(self) -> ConstructionKind:
        return ConstructionKind.parse(self.construction, self.target_d)

    def to_json(self) -> dict:
        out = asdict(self)
        out["d_exact"] = _d_to_json(self.d_exact)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data) -> CodeDescriptor:
        if not isinstance(data, dict):
            raise DescriptorError("descriptor must be a JSON object")
        missing = [k for k in REQUIRED if k not in data]
        if missing:
            raise DescriptorError(f"descriptor is missing fields: {', '.join(missing)}")
        try:
            tag = Kind(str(data["construction"]).lower()).value
            loc = data["locality"]
            ds = loc["defining_set"]
            return cls(
                q=int(data["q"]),
                n=int(data["n"]),
                r=int(data["r"]),
                delta=int(data["delta"]),
                construction=tag,
                target_d=None if data.get("target_d") is None else int(data["target_d"]),
                generator=list(data["generator"]),
                k=int(data["k"]),
                d_exact=_d_from_json(data["d_exact"]),
                d_bch_lower=int(data["d_bch_lower"]),
                singleton_bound=int(data["singleton_bound"]),
                optimal=bool(data["optimal"]),
                locality={
                    "defining_set": {
                        "holds": bool(ds["holds"]),
                        "witness": None if ds.get("witness") is None else {
                            "ells": [int(v) for v in ds["witness"]["ells"]],
                            "step": int(ds["witness"]["step"]),
                        },
                    },
                    "direct": bool(loc["direct"]),
                },
                repair_groups=[[int(i) for i in g] for g in data["repair_groups"]],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DescriptorError(f"malformed descriptor: {exc}") from None

    @classmethod
    def loads(cls, text: str) -> CodeDescriptor:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"invalid JSON: {exc}") from None
        return cls.from_json(data)

    @classmethod
    def from_report(cls, rep: LrcReport) -> CodeDescriptor:
        w = rep.defining_set.witness
        return cls(
            q=rep.params.q,
            n=rep.params.n,
            r=rep.params.r,
            delta=rep.params.delta,
            construction=rep.kind.tag.value,
            target_d=rep.kind.target_d,
            generator=rep.code.generator.to_json(),
            k=rep.k,
            d_exact=rep.d_exact,
            d_bch_lower=rep.d_bch_lower,
            singleton_bound=rep.bound,
            optimal=rep.optimal,
            locality={
                "defining_set": {
                    "holds": rep.defining_set.holds,
                    "witness": None if w is None else {"ells": list(w.ells), "step": w.step},
                },
                "direct": rep.direct,
            },
            repair_groups=[list(g.positions) for g in repair_groups(rep.params.n, rep.params.r, rep.params.delta)],
        )


@dataclass(frozen=True)
class Check:
    name: str
    recorded: object
    recomputed: object

    @property
    def ok(self) -> bool:
        return self.recorded == self.recomputed


def recheck(desc: CodeDescriptor, method: str = "auto", backend=None) -> list[Check]:
    """Recompute every derived field of ``desc`` from its parameters and generator."""
    params, kind = desc.params, desc.kind
    checks = []
    base = field_of_order(desc.q)
    try:
        g = Polynomial.from_json(base, desc.generator)
    except (ValueError, TypeError) as exc:
        raise DescriptorError(f"bad generator: {exc}") from None
    fresh = construct(params, kind)
    checks.append(Check("generator", desc.generator, fresh.generator.to_json()))
    try:
        code = from_generator(base, desc.n, g)
    except LrcError as exc:
        checks.append(Check("g | x^n - 1", True, f"failed: {exc}"))
        return checks
    checks.append(Check("g | x^n - 1", True, True))
    checks.append(Check("k", desc.k, code.k))
    checks.append(Check("k (closed form)", desc.k, expected_dimension(params, kind)))
    bound = singleton_bound(desc.n, code.k, desc.r, desc.delta)
    checks.append(Check("singleton_bound", desc.singleton_bound, bound))
    d = min_distance_exact(code, bound + 1, method=method, backend=backend)
    checks.append(Check("d_exact", _d_to_json(desc.d_exact), _d_to_json(d)))
    checks.append(Check("d_bch_lower", desc.d_bch_lower, bch_lower_bound(code)))
    ds = locality_check_defining_set(code, desc.r, desc.delta)
    w = None if ds.witness is None else {"ells": list(ds.witness.ells), "step": ds.witness.step}
    checks.append(Check("locality.defining_set", desc.locality["defining_set"], {"holds": ds.holds, "witness": w}))
    direct = locality_check_direct(code, desc.r, desc.delta, backend)
    checks.append(Check("locality.direct", desc.locality["direct"], direct))
    groups = [list(gr.positions) for gr in repair_groups(desc.n, desc.r, desc.delta)]
    checks.append(Check("repair_groups", desc.repair_groups, groups))
    checks.append(Check("optimal", desc.optimal, direct and d == bound))
    return checks
