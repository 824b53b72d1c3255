"""Interchange formats: Pajek NET text and edge-list CSV.

The NET writer is byte-deterministic (LF line endings, single spaces,
ties in ascending (src, dst) order) so exports can be compared against
golden files and loaded by the usual desktop SNA tools.
"""

from __future__ import annotations

import csv
import io
import re

from .errors import GraphError, PajekParseError
from .graph import SocialGraph

_VERTEX_RE = re.compile(r'^(\d+) "([^"]*)"$')


def export_pajek(g: SocialGraph) -> str:
    lines = [f"*Vertices {g.n}"]
    for node in g.nodes:
        lines.append(f'{node.id + 1} "{node.label}"')
    lines.append("*Arcs" if g.directed else "*Edges")
    for tie in g.ties():
        if g.weighted:
            lines.append(f"{tie.src + 1} {tie.dst + 1} {tie.weight}")
        else:
            lines.append(f"{tie.src + 1} {tie.dst + 1}")
    return "\n".join(lines) + "\n"


def import_pajek(text: str, name: str = "imported") -> SocialGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise PajekParseError("empty input", line=1)

    header = lines[0].split()
    if len(header) != 2 or header[0].lower() != "*vertices":
        raise PajekParseError(f"expected '*Vertices N', got {lines[0]!r}", line=1)
    try:
        n = int(header[1])
    except ValueError:
        raise PajekParseError(f"vertex count {header[1]!r} is not an integer", line=1) from None
    if n < 0:
        raise PajekParseError(f"negative vertex count {n}", line=1)

    labels = []
    for i in range(n):
        lineno = 2 + i
        if lineno - 1 >= len(lines):
            raise PajekParseError(f"expected {n} vertex lines, found {i}", line=lineno)
        m = _VERTEX_RE.match(lines[lineno - 1])
        if not m:
            raise PajekParseError(f"malformed vertex line {lines[lineno - 1]!r}", line=lineno)
        if int(m.group(1)) != i + 1:
            raise PajekParseError(
                f"vertex index {m.group(1)} out of order (expected {i + 1})", line=lineno
            )
        labels.append(m.group(2))

    section_lineno = n + 2
    if section_lineno - 1 >= len(lines):
        raise PajekParseError("missing *Arcs/*Edges section header", line=section_lineno)
    section = lines[section_lineno - 1].strip().lower()
    if section == "*arcs":
        directed = True
    elif section == "*edges":
        directed = False
    else:
        raise PajekParseError(
            f"expected '*Arcs' or '*Edges', got {lines[section_lineno - 1]!r}",
            line=section_lineno,
        )

    tie_lines = []
    for offset, raw in enumerate(lines[section_lineno:]):
        lineno = section_lineno + 1 + offset
        fields = raw.split()
        if len(fields) not in (2, 3):
            raise PajekParseError(f"malformed tie line {raw!r}", line=lineno)
        tie_lines.append((lineno, fields))

    # The grammar carries weights on every tie line or on none; a tie-less
    # graph gives no evidence either way and loads as unweighted.
    weighted = bool(tie_lines) and len(tie_lines[0][1]) == 3

    g = SocialGraph(name, directed=directed, weighted=weighted)
    for label in labels:
        try:
            g.add_node(label)
        except GraphError as exc:
            raise PajekParseError(str(exc), line=1) from None

    for lineno, fields in tie_lines:
        if len(fields) != (3 if weighted else 2):
            raise PajekParseError(
                "tie line arity differs from the first tie line", line=lineno
            )
        try:
            src, dst = int(fields[0]), int(fields[1])
        except ValueError:
            raise PajekParseError(f"non-integer node index in {fields!r}", line=lineno) from None
        if not (1 <= src <= n and 1 <= dst <= n):
            raise PajekParseError(f"node index out of range in {fields!r}", line=lineno)
        weight = None
        if weighted:
            try:
                weight = int(fields[2])
            except ValueError:
                raise PajekParseError(f"non-integer weight {fields[2]!r}", line=lineno) from None
        try:
            g.add_tie(src - 1, dst - 1, weight)
        except GraphError as exc:
            raise PajekParseError(str(exc), line=lineno) from None
    return g.freeze()


def export_csv(g: SocialGraph) -> str:
    """Edge list as `src_label,dst_label,weight` with a header row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["src_label", "dst_label", "weight"])
    labels = g.labels()
    for tie in g.ties():
        writer.writerow(
            [labels[tie.src], labels[tie.dst], "" if tie.weight is None else tie.weight]
        )
    return buf.getvalue()
