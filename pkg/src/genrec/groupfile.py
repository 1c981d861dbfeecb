"""Reading and writing permutation groups as JSON or ``.perms`` text."""

from __future__ import annotations

import json
import os
import tempfile

from .errors import CycleParseError, ParseError
from .permcore import PermGroup, parse_permutation

SCHEMA = 1


def group_to_dict(g, **extra):
    out = {
        "schema": SCHEMA,
        "name": g.name or "group",
        "degree": g.degree,
        "generators": [s.to_cycle_string() for s in g.generators],
    }
    out.update(extra)
    return out


def _parse_gens(texts, degree, lines, path):
    gens = []
    for text, line in zip(texts, lines):
        if not isinstance(text, str):
            raise ParseError("generator must be a cycle-notation string", line, path=path)
        try:
            gens.append(parse_permutation(text, degree))
        except CycleParseError as exc:
            raise ParseError(exc.reason, line, exc.column, path) from None
    return gens


def parse_json_group(text, path=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path) from None
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", 1, 1, path)
    degree = data.get("degree")
    gens = data.get("generators")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise ParseError("'degree' must be a positive integer", path=path)
    if not isinstance(gens, list):
        raise ParseError("'generators' must be a list", path=path)
    # line numbers of generator strings, for error messages
    lines = []
    search_from = text.find('"generators"')
    for g in gens:
        if isinstance(g, str) and search_from >= 0:
            at = text.find(json.dumps(g), search_from)
            if at >= 0:
                lines.append(text.count("\n", 0, at) + 1)
                search_from = at + 1
                continue
        lines.append(None)
    perms = _parse_gens(gens, degree, lines, path)
    return PermGroup(perms, degree=degree, name=data.get("name"))


def parse_perms_text(text, path=None):
    """``degree m`` on the first line, then one generator per line; ``#`` comments."""
    rows = [(i + 1, line.split("#", 1)[0].strip()) for i, line in enumerate(text.splitlines())]
    rows = [(i, line) for i, line in rows if line]
    if not rows:
        raise ParseError("empty file; expected 'degree m'", 1, 1, path)
    first_line, head = rows[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise ParseError("first line must be 'degree m'", first_line, 1, path)
    degree = int(parts[1])
    gens = _parse_gens([r[1] for r in rows[1:]], degree, [r[0] for r in rows[1:]], path)
    name = os.path.splitext(os.path.basename(path))[0] if path else None
    return PermGroup(gens, degree=degree, name=name)


def read_group(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".perms") or not text.lstrip().startswith("{"):
        return parse_perms_text(text, path)
    return parse_json_group(text, path)


def dumps(data):
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
