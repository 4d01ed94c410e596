"""JSON presentation files.

::

    {"components": [{"framing": "5/2"}, {"framing": "0"}],
     "lk": [[0, 1], [1, 0]],
     "braid": {"strands": 2, "word": "s1 s1"},
     "longitudes": ["x1 x2 x1^-1", "x1"]}

``braid`` and ``longitudes`` are optional. Framings are exact strings
(``"p/q"`` or an integer); loading re-checks every link invariant.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import ParseError, PresentationError
from .presentation import FramedLink
from .words import BraidWord, FreeWord


def _framing(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"framing must be an integer or a 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad framing {value!r}: {exc}") from None


def link_from_dict(doc: dict) -> FramedLink:
    if not isinstance(doc, dict):
        raise ParseError("presentation must be a JSON object")
    try:
        comps = doc["components"]
        framings = tuple(_framing(c["framing"] if isinstance(c, dict) else c) for c in comps)
        lk = doc.get("lk")
        if lk is None:
            lk = [[0] * len(framings) for _ in framings]
        if not all(isinstance(x, int) and not isinstance(x, bool) for row in lk for x in row):
            raise ParseError("lk entries must be integers")
        braid = None
        if doc.get("braid") is not None:
            b = doc["braid"]
            braid = BraidWord.parse(int(b["strands"]), b.get("word", ""))
        longitudes = None
        if doc.get("longitudes") is not None:
            longitudes = tuple(FreeWord.parse(w) for w in doc["longitudes"])
        return FramedLink(framings, tuple(tuple(r) for r in lk), braid=braid,
                          longitudes=longitudes, name=str(doc.get("name", "")))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed presentation: {exc!r}") from None


def link_to_dict(link: FramedLink) -> dict:
    doc: dict = {}
    if link.name:
        doc["name"] = link.name
    doc["components"] = [{"framing": str(f)} for f in link.framings]
    doc["lk"] = [list(r) for r in link.lk]
    if link.braid is not None:
        doc["braid"] = {"strands": link.braid.strands, "word": str(link.braid)}
    if link.longitudes is not None:
        doc["longitudes"] = [str(w) for w in link.longitudes]
    return doc


def loads(text: str) -> FramedLink:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return link_from_dict(doc)


def dumps(link: FramedLink) -> str:
    """One top-level key per line, values compact."""
    doc = link_to_dict(link)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items())
    return "{\n" + body + "\n}"


def load(path) -> FramedLink:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text)


def fixture_names() -> list[str]:
    root = resources.files("surgeq") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture(name: str) -> FramedLink:
    """A presentation from the bundled corpus, e.g. ``fixture("borromean")``."""
    path = resources.files("surgeq") / "data" / f"{name}.json"
    if not path.is_file():
        raise ParseError(f"no fixture named {name!r}")
    return loads(path.read_text(encoding="utf-8"))


__all__ = ["PresentationError", "ParseError", "dumps", "fixture", "fixture_names", "link_from_dict",
           "link_to_dict", "load", "loads"]
