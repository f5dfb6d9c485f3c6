"""
Plain-text tableau files.

    # optional header lines
    name: MYPAIR
    order: 2
    explicit:
    0    0
    1    0
    b: 1 0
    c: 0 1
    implicit:
    0    0
    0    1
    b: 0 1
    c: 0 1

Coefficients are decimals or simple fractions p/q. Lines starting with #
and blank lines are ignored.
"""

import os
from fractions import Fraction

from imex_relax.errors import TableauLookupError, ValidationError
from imex_relax.utils import read_file

from .builtin import BUILTINS, builtin
from .tableau import ImexPair, RKTableau


def _number(token, where):
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{where}: cannot read coefficient {token!r}")


def _parse_block(lines, label):
    rows, b, c = [], None, None
    for lineno, line in lines:
        where = f"line {lineno}"
        if line.startswith("b:"):
            b = [_number(t, where) for t in line[2:].split()]
        elif line.startswith("c:"):
            c = [_number(t, where) for t in line[2:].split()]
        else:
            rows.append([_number(t, where) for t in line.split()])
    if b is None or c is None:
        raise ValidationError(f"{label} block needs both a 'b:' and a 'c:' line")
    s = len(b)
    if len(rows) != s or any(len(row) != s for row in rows):
        raise ValidationError(f"{label} block must hold {s} rows of {s} coefficients")
    return RKTableau(a=rows, b=b, c=c)


def parse_tableau_text(text: str, name: str = "custom") -> ImexPair:
    header = {}
    blocks = {"explicit": [], "implicit": []}
    current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.rstrip(":").strip().lower()
        if line.endswith(":") and key in blocks:
            current = key
            continue
        if current is None:
            if ":" not in line:
                raise ValidationError(f"line {lineno}: expected 'explicit:' before coefficients")
            field, value = [part.strip() for part in line.split(":", 1)]
            header[field.lower()] = value
            continue
        blocks[current].append((lineno, line))

    for label, lines in blocks.items():
        if not lines:
            raise ValidationError(f"tableau text has no {label!r} block")

    explicit = _parse_block(blocks["explicit"], "explicit")
    implicit = _parse_block(blocks["implicit"], "implicit")
    try:
        order = int(header.get("order", 1))
    except ValueError:
        raise ValidationError(f"order must be an integer, got {header['order']!r}")
    return ImexPair(
        name=header.get("name", name),
        explicit_part=explicit,
        implicit_part=implicit,
        declared_order=order,
        declared_counts=(explicit.s, implicit.s),
    )


def load_tableau(path: str) -> ImexPair:
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_tableau_text(read_file(path), name=name)


def resolve_pair(name_or_path: str) -> ImexPair:
    """
    A builtin identifier, or else a path to a tableau file.
    """
    if str(name_or_path).upper() in BUILTINS:
        return builtin(name_or_path)
    if os.path.exists(str(name_or_path)):
        return load_tableau(name_or_path)
    raise TableauLookupError(
        f"{name_or_path!r} is neither a builtin ({', '.join(BUILTINS)}) nor a tableau file"
    )
