"""Textual encodings of machines: compact one-liner, JSON, and DOT.

Compact format::

    mealy <q> <p> : t/o t/o ... ; t/o ... ; ...

with one ``;``-separated group per state (in state order) and one ``t/o``
pair per letter (in letter order), where ``t`` is the successor state and
``o`` the output letter.
"""

from __future__ import annotations

import json

from .core import FormatError, MealyMachine


def machine_to_text(m: MealyMachine) -> str:
    rows = [
        " ".join("%d/%d" % (m.delta[x][i], m.rho[x][i]) for i in range(m.p))
        for x in range(m.q)
    ]
    return "mealy %d %d : %s" % (m.q, m.p, " ; ".join(rows))


def machine_from_text(text: str) -> MealyMachine:
    tokens = text.split()
    if len(tokens) < 5 or tokens[0] != "mealy":
        raise FormatError("expected 'mealy <q> <p> : ...': %r" % text)
    try:
        q = int(tokens[1])
        p = int(tokens[2])
    except ValueError:
        raise FormatError("bad state/letter counts in %r" % text) from None
    if tokens[3] != ":":
        raise FormatError("expected ':' after sizes in %r" % text)
    groups = []
    current = []
    for tok in tokens[4:]:
        if tok == ";":
            groups.append(current)
            current = []
        else:
            current.append(tok)
    groups.append(current)
    if len(groups) != q:
        raise FormatError("expected %d state groups, found %d" % (q, len(groups)))
    delta = []
    rho = []
    for x, group in enumerate(groups):
        if len(group) != p:
            raise FormatError(
                "state %d: expected %d transitions, found %d" % (x, p, len(group))
            )
        drow = []
        rrow = []
        for tok in group:
            left, slash, right = tok.partition("/")
            if not slash:
                raise FormatError("bad transition token %r" % tok)
            try:
                drow.append(int(left))
                rrow.append(int(right))
            except ValueError:
                raise FormatError("bad transition token %r" % tok) from None
        delta.append(drow)
        rho.append(rrow)
    try:
        return MealyMachine(delta, rho)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def machine_to_json(m: MealyMachine) -> str:
    payload = {
        "q": m.q,
        "p": m.p,
        "delta": [list(row) for row in m.delta],
        "rho": [list(row) for row in m.rho],
    }
    return json.dumps(payload)


def machine_from_json(text: str) -> MealyMachine:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("invalid JSON: %s" % exc) from None
    if not isinstance(payload, dict):
        raise FormatError("expected a JSON object with delta/rho")
    try:
        delta = payload["delta"]
        rho = payload["rho"]
    except KeyError as exc:
        raise FormatError("missing field %s" % exc) from None
    try:
        m = MealyMachine(delta, rho)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None
    if "q" in payload and payload["q"] != m.q:
        raise FormatError("declared q=%r does not match tables" % payload["q"])
    if "p" in payload and payload["p"] != m.p:
        raise FormatError("declared p=%r does not match tables" % payload["p"])
    return m


def parse_machine(text: str) -> MealyMachine:
    """Parse either encoding, sniffing by the first non-space character."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return machine_from_json(stripped)
    if stripped.startswith("mealy"):
        return machine_from_text(stripped)
    raise FormatError("unrecognized machine encoding: %r" % text[:40])


def machine_to_dot(m: MealyMachine, name: str = "mealy") -> str:
    """Deterministic DOT rendering with one arc per transition."""
    lines = ["digraph %s {" % name, "  rankdir=LR;", "  node [shape=circle];"]
    for x in range(m.q):
        lines.append('  %d [label="%d"];' % (x, x))
    for x in range(m.q):
        for i in range(m.p):
            lines.append(
                '  %d -> %d [label="%d|%d"];' % (x, m.delta[x][i], i, m.rho[x][i])
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
