"""Known D-optimal difference families and the stanza text format.

A catalog file is a ``format 1`` line followed by stanzas separated by one
blank line::

    ps 111 51 46 42
    H 1 10 100
    I 3 8 13 ...
    J 0 2 3 ...
    label 111a-1
    source sec3

Blocks are X = H.I and Y = H.J (unions of H-orbits). Single spaces, LF line
endings. A JSON export with the same fields exists for tooling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from dopt.family import DifferenceFamily, VerificationReport, verify_df
from dopt.modring import subgroup_from_elements
from dopt.params import ParameterSet

FORMAT_VERSION = 1


class CatalogParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class CatalogVerificationError(ValueError):
    def __init__(self, failures: list[tuple[str, VerificationReport]]):
        parts = []
        for label, rep in failures:
            ds = [d for d, _ in rep.violations][:20]
            parts.append(f"{label}: {rep.message}" + (f" (d = {ds})" if ds else ""))
        super().__init__("entries failed verification: " + "; ".join(parts))
        self.failures = failures


@dataclass(frozen=True)
class CatalogEntry:
    ps: ParameterSet
    H: tuple[int, ...]
    I: tuple[int, ...]
    J: tuple[int, ...]
    label: str
    source: str = ""

    def family(self) -> DifferenceFamily:
        return DifferenceFamily.from_orbits(subgroup_from_elements(self.ps.v, self.H), self.I, self.J)

    def verify(self) -> VerificationReport:
        return verify_df(self.family(), self.ps)

    def to_stanza(self) -> str:
        def ints(xs):
            return " ".join(map(str, xs))

        lines = [f"ps {ints(self.ps.astuple())}", f"H {ints(self.H)}", f"I {ints(self.I)}",
                 f"J {ints(self.J)}", f"label {self.label}", f"source {self.source}"]
        return "\n".join(ln.rstrip() for ln in lines) + "\n"

    def to_dict(self) -> dict:
        ps = self.ps
        return {"ps": {"v": ps.v, "r": ps.r, "s": ps.s, "lambda": ps.lam},
                "H": list(self.H), "I": list(self.I), "J": list(self.J),
                "label": self.label, "source": self.source}


@dataclass
class CatalogFile:
    entries: list[CatalogEntry] = field(default_factory=list)
    version: int = FORMAT_VERSION

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("catalog labels must be unique")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, label: str) -> CatalogEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def by_ps(self, ps: ParameterSet) -> list[CatalogEntry]:
        return [e for e in self.entries if e.ps == ps]

    def to_text(self) -> str:
        return f"format {self.version}\n" + "".join("\n" + e.to_stanza() for e in self.entries)

    def to_json(self) -> str:
        return json.dumps({"format": self.version, "entries": [e.to_dict() for e in self.entries]},
                          indent=1, sort_keys=True) + "\n"

    def verify(self) -> list[tuple[str, VerificationReport]]:
        """Failing entries as (label, report) pairs."""
        out = []
        for e in self.entries:
            try:
                rep = e.verify()
            except ValueError as exc:
                rep = VerificationReport(False, False, [], str(exc))
            if not rep.passed:
                out.append((e.label, rep))
        return out


_KEYS = ("ps", "H", "I", "J", "label", "source")


def parse(text: str, verify: bool = True) -> CatalogFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("format "):
        raise CatalogParseError(1, "expected 'format N' header")
    try:
        version = int(lines[0].split(" ", 1)[1])
    except ValueError:
        raise CatalogParseError(1, "bad format version") from None
    if version != FORMAT_VERSION:
        raise CatalogParseError(1, f"unsupported format version {version}")

    entries = []
    stanza: dict[str, tuple[int, str]] = {}
    start = 0

    def flush():
        missing = [k for k in _KEYS if k not in stanza]
        if missing:
            raise CatalogParseError(start, f"stanza missing {', '.join(missing)}")

        def ints(key):
            ln, val = stanza[key]
            try:
                return tuple(int(t) for t in val.split()) if val else ()
            except ValueError:
                raise CatalogParseError(ln, f"non-integer in '{key}' line") from None

        ps = ints("ps")
        if len(ps) != 4:
            raise CatalogParseError(stanza["ps"][0], "ps needs four integers v r s lambda")
        entries.append(CatalogEntry(ParameterSet(*ps), ints("H"), ints("I"), ints("J"),
                                    stanza["label"][1], stanza["source"][1]))
        stanza.clear()

    for no, line in enumerate(lines[1:], start=2):
        if "\r" in line:
            raise CatalogParseError(no, "CR line ending")
        if not line.strip():
            if stanza:
                flush()
            continue
        key, _, val = line.partition(" ")
        if key not in _KEYS:
            raise CatalogParseError(no, f"unknown key '{key}'")
        if key in stanza:
            raise CatalogParseError(no, f"duplicate key '{key}' in stanza")
        if not stanza:
            start = no
        stanza[key] = (no, val)
    if stanza:
        flush()

    labels = [e.label for e in entries]
    dup = {x for x in labels if labels.count(x) > 1}
    if dup:
        raise CatalogParseError(1, f"duplicate labels {sorted(dup)}")
    cf = CatalogFile(entries, version)
    if verify:
        failures = cf.verify()
        if failures:
            raise CatalogVerificationError(failures)
    return cf


def load(path, verify: bool = True) -> CatalogFile:
    return parse(Path(path).read_text(), verify=verify)


def save(cf: CatalogFile, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(cf.to_text())


def entry_from_family(df: DifferenceFamily, ps: ParameterSet, label: str, source: str) -> CatalogEntry:
    if df.orbit_spec is not None:
        H, I, J = df.orbit_spec
        return CatalogEntry(ps, H.elements, tuple(I), tuple(J), label, source)
    return CatalogEntry(ps, (1,), df.X.members, df.Y.members, label, source)


# ---------------------------------------------------------------------------
# designs printed with their H and orbit representatives

def _s(text):
    return tuple(int(t) for t in text.replace(",", " ").split())


_SEC3 = [
    ((111, 51, 46, 42), (1, 10, 100), "111a", [
        ("3,8,13,14,15,16,21,26,31,32,43,51,52,53,55,63,64",
         "0,2,3,5,7,13,14,15,26,31,43,52,53,54,63,64"),
        ("1,4,8,13,15,21,22,26,27,41,42,43,44,52,53,63,64",
         "0,1,2,4,11,13,14,17,21,25,33,42,52,53,62,63"),
        ("1,3,5,7,9,13,14,15,17,27,31,42,44,51,52,62,63",
         "0,1,2,4,11,17,21,25,42,43,51,53,54,55,62,64"),
        ("1,2,6,8,13,14,15,16,21,27,31,41,43,52,53,55,63",
         "0,1,2,4,5,11,16,17,21,22,32,33,43,44,54,63"),
        ("1,2,4,8,9,15,16,26,31,33,42,44,51,53,54,55,63",
         "0,2,3,4,8,13,16,21,41,44,51,52,55,62,63,64"),
    ]),
    ((111, 55, 45, 45), (1, 10, 100), "111b", [
        ("0,2,6,13,14,16,17,18,22,26,33,43,51,52,53,54,55,63,64",
         "2,3,4,6,13,14,17,21,25,27,41,54,55,63,64"),
        ("0,3,4,6,7,8,9,13,16,25,32,41,42,44,52,54,62,63,64",
         "2,3,5,7,13,17,21,25,41,44,51,52,55,62,63"),
        ("0,5,6,9,13,14,17,21,25,31,32,33,41,42,43,53,62,63,64",
         "2,5,6,8,13,16,18,31,33,43,51,54,55,62,63"),
        ("0,3,4,5,7,14,15,18,22,26,27,32,42,43,52,55,62,63,64",
         "2,5,9,15,18,22,25,32,33,41,42,43,44,52,53"),
        ("0,3,4,5,7,9,15,16,22,25,26,32,42,44,51,53,54,55,64",
         "2,4,14,15,17,18,21,25,41,43,51,52,54,63,64"),
    ]),
    ((117, 56, 48, 46), (1, 16, 22), "117a", [
        ("2,7,8,9,10,13,18,19,20,39,41,47,51,56,58,63,73,78,79,95",
         "0,1,2,5,6,8,12,19,25,34,39,41,47,56,57,63,78,79"),
        ("3,5,6,7,18,19,21,24,25,26,28,29,39,42,47,56,57,58,78,95",
         "0,1,3,7,14,24,25,29,34,39,41,47,51,56,57,63,78,79"),
        ("1,3,7,13,17,19,20,24,26,28,29,39,41,47,51,57,58,78,79,95",
         "0,4,7,9,12,13,17,18,20,25,28,29,34,35,39,51,56,78"),
        ("1,2,3,4,5,6,10,12,13,14,19,20,24,29,35,39,47,73,78,79",
         "0,4,6,13,14,21,26,28,29,36,39,40,56,57,58,73,78,95"),
        ("2,3,5,7,10,13,21,24,25,26,28,35,39,42,51,56,57,58,63,78",
         "0,3,5,13,14,17,19,20,25,34,36,39,47,51,56,63,73,78"),
        ("3,5,9,10,13,18,20,21,25,34,35,36,39,41,51,56,58,63,78,95",
         "0,8,9,10,12,13,14,19,26,28,35,39,51,56,57,58,63,78"),
        ("3,4,5,6,7,12,13,17,19,24,26,36,39,41,42,47,57,73,78,79",
         "0,3,7,13,20,25,28,34,35,36,39,47,51,56,57,73,78,95"),
        ("1,2,6,7,9,12,17,18,20,25,28,36,39,41,51,56,58,63,78,79",
         "0,1,2,5,9,12,13,18,28,29,39,40,41,47,51,56,73,78"),
    ]),
    ((129, 57, 56, 49), (1, 49, 79), "129a", [
        ("1,6,7,17,20,21,22,26,31,35,39,42,44,57,60,62,63,68,73",
         "0,1,3,11,12,19,20,22,31,35,39,44,50,63,65,68,70,73,78,86"),
    ]),
    ((139, 67, 58, 56), (1, 42, 96), "139a", [
        ("0,3,5,8,9,15,21,22,23,24,25,34,39,41,46,49,62,66,69,72,75,82,85",
         "0,4,6,8,9,11,12,18,23,26,33,34,36,39,41,49,59,65,66,78"),
        ("0,2,4,11,13,14,17,21,22,25,26,28,34,41,43,56,59,62,65,66,72,82,85",
         "0,1,3,11,12,13,15,17,21,23,25,26,31,33,36,41,65,68,69,75"),
    ]),
]

# (x, H, R, multipliers): X = H.R and Y = mu X, stored with J = mu R.
# For x = 8 the printed representative 46 does not give a difference family;
# 40 is the only single-orbit replacement that does, for both multipliers,
# and it reproduces |X & 11X| = 15 and |X & 14X| = 21.
_SEC5 = [
    (6, (1, 9, 16, 19, 21, 49, 59, 81), (3, 12, 15, 17, 24, 34), (3,)),
    (7, (1, 16, 28, 30, 49, 106, 109), (1, 2, 3, 7, 17, 27, 40), (2,)),
    (8, (1, 16, 36, 81, 111, 136, 141), (1, 3, 4, 7, 8, 10, 12, 26, 29, 40), (11, 14)),
]


def builtin_catalog() -> CatalogFile:
    entries = []
    for ps, H, tag, fams in _SEC3:
        for k, (I, J) in enumerate(fams, start=1):
            entries.append(CatalogEntry(ParameterSet(*ps), H, _s(I), _s(J), f"{tag}-{k}", "sec3"))
    for x, H, R, mus in _SEC5:
        v = 1 + 2 * x + 2 * x * x
        ps = ParameterSet(v, x * x, x * x, x * x - x)
        for k, mu in enumerate(mus, start=1):
            J = tuple(mu * i % v for i in R)
            entries.append(CatalogEntry(ps, H, R, J, f"{v}a-{k}", "sec5"))
    return CatalogFile(entries)
