"""JSON reading and writing for family members, reports and graphs.

Member files look like::

    {
      "version": 1,
      "f": "z1^3 + z2^3 + z3^3 - ...",
      "h": "z2^5 + z3^5",
      "d": 2,
      "extra_terms": "0",
      "f_factors": ["z1 + z2 - 2*z3", "..."],
      "certificates": [
        {"point": ["1", "1", "1"], "local_milnor": 1, "branches": 2,
         "normal_form": "v2*v3", "type_tag": "A1",
         "chart": [["1", "0"], ["0", "1"]]}
      ]
    }

``f_factors``, ``extra_terms`` and ``chart`` are optional.  When
``certificates`` is absent and ``f_factors`` is present the singular points
are found from the lines.  All output is written with sorted keys so that
two runs produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .expr import ParseError, parse
from .family import FamilyError, FamilyMember, SingularPointCertificate, build_member
from .poly import Polynomial, to_string
from .resolution import DualGraph
from .zeta import ZetaFunction

SCHEMA_VERSION = 1
NORMAL_FORM_NAMES = ("v2", "v3")


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _frac(x) -> str:
    return str(Fraction(x))


def certificate_to_json(c: SingularPointCertificate) -> dict:
    out = {
        "point": [_frac(x) for x in c.point],
        "local_milnor": c.local_milnor,
        "branches": c.branches,
        "normal_form": to_string(c.local_normal_form, NORMAL_FORM_NAMES),
        "type_tag": c.type_tag,
    }
    if c.chart is not None:
        out["chart"] = [[_frac(x) for x in row] for row in c.chart]
    return out


def certificate_from_json(data: dict) -> SingularPointCertificate:
    try:
        chart = data.get("chart")
        if chart is not None:
            chart = tuple(tuple(Fraction(x) for x in row) for row in chart)
        return SingularPointCertificate(
            point=tuple(Fraction(x) for x in data["point"]),
            local_milnor=int(data["local_milnor"]),
            branches=int(data["branches"]),
            local_normal_form=parse(data["normal_form"], names=NORMAL_FORM_NAMES),
            type_tag=data.get("type_tag", "A1"),
            chart=chart,
        )
    except KeyError as exc:
        raise FamilyError(f"certificate is missing the field {exc.args[0]!r}") from None


def member_to_json(m: FamilyMember) -> dict:
    out = {
        "version": SCHEMA_VERSION,
        "f": to_string(m.f),
        "h": to_string(m.h),
        "d": m.d,
        "extra_terms": to_string(m.extra_terms),
        "certificates": [certificate_to_json(c) for c in m.certificates],
    }
    if m.f_factors:
        out["f_factors"] = [to_string(L) for L in m.f_factors]
    return out


def member_from_json(data: dict) -> FamilyMember:
    """Build and validate a member from its JSON description."""
    for key in ("f", "h"):
        if key not in data:
            raise FamilyError(f"member is missing the field {key!r}")
    f = parse(data["f"])
    h = parse(data["h"])
    extra = data.get("extra_terms")
    if isinstance(extra, list):
        extra_poly = Polynomial({}, 3)
        for term in extra:
            extra_poly = extra_poly + parse(term)
    else:
        extra_poly = parse(extra) if extra else None
    factors = [parse(s) for s in data["f_factors"]] if data.get("f_factors") else None
    certs = data.get("certificates")
    if certs is not None:
        certs = [certificate_from_json(c) for c in certs]
    m = build_member(f, h, extra_poly, certs, factors)
    if "d" in data and int(data["d"]) != m.d:
        raise FamilyError(f"declared d = {data['d']} but deg f = {m.d}")
    return m


def load_member(path) -> FamilyMember:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    try:
        return member_from_json(data)
    except ParseError as exc:
        raise FamilyError(f"{path}: {exc}") from None


def zeta_to_json(z: ZetaFunction) -> list:
    return z.to_json()


def graph_to_json(g: DualGraph) -> dict:
    return g.to_json()


def graph_from_json(data: dict) -> DualGraph:
    return DualGraph.from_json(data)
