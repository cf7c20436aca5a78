"""Text formats: code files, packing and blueprint manifests, key=value reports.

Code file::

    subspace-code q=2 n=4
    # comment
    k=2 1 0 0 1;0 1 1 1

Manifests use the same codeword lines grouped under ``[section]`` headers.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import ParseError
from .gf_arith import Field, gf
from .subspace import Code, Subspace

_HEADER = re.compile(r"^subspace-code\s+q=(\d+)\s+n=(\d+)\s*$")
_KV = re.compile(r"(\w+)=(\S+)")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def format_codeword(s: Subspace) -> str:
    return f"k={s.dim} {s.to_text()}".rstrip()


def parse_codeword(field: Field, n: int, text: str, where: str = "") -> Subspace:
    m = re.match(r"^k=(\d+)(?:\s+(.*))?$", text)
    if not m:
        raise ParseError(f"{where}expected 'k=<k> row;row;...', got {text!r}")
    k = int(m.group(1))
    body = (m.group(2) or "").strip()
    rows = [r.split() for r in body.split(";")] if body else []
    if len(rows) != k:
        raise ParseError(f"{where}k={k} but {len(rows)} rows given")
    try:
        arr = np.array([[int(x) for x in r] for r in rows], dtype=np.int64).reshape(k, -1)
    except ValueError:
        raise ParseError(f"{where}rows must have {n} integer entries") from None
    if arr.shape[1] != n and k:
        raise ParseError(f"{where}rows must have {n} entries, got {arr.shape[1]}")
    if arr.size and (arr.min() < 0 or arr.max() >= field.order):
        raise ParseError(f"{where}entries must lie in 0..{field.order - 1}")
    s = Subspace(field, arr.reshape(k, n), n)
    if s.dim != k:
        raise ParseError(f"{where}rows are linearly dependent (rank {s.dim} < {k})")
    return s


def format_code(code: Code, comments: Iterable[str] = ()) -> str:
    lines = [f"subspace-code q={code.q} n={code.n}"]
    lines += [f"# {c}" for c in comments]
    lines += [format_codeword(s) for s in code]
    return "\n".join(lines) + "\n"


def write_code(code: Code, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_code(code, comments))


def parse_code(text: str, source: str = "<string>") -> Code:
    """Parse a code file; codewords are re-reduced, duplicates counted in ``code.duplicates``."""
    header = None
    code = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        where = f"{source}:{lineno}: "
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError(f"{where}expected header 'subspace-code q=<q> n=<n>'")
            header = (int(m.group(1)), int(m.group(2)))
            try:
                field = gf(header[0])
            except ValueError as exc:
                raise ParseError(f"{where}{exc}") from None
            code = Code(field, header[1])
            continue
        code.add(parse_codeword(code.field, code.n, line, where))
    if code is None:
        raise ParseError(f"{source}: missing header")
    return code


def read_code(path: str | Path) -> Code:
    return parse_code(Path(path).read_text(), str(path))


# ---------------------------------------------------------------------------
# sectioned manifests


def format_sections(kind: str, params: Mapping[str, object], sections: Iterable[tuple[str, Iterable[str]]]) -> str:
    head = " ".join([kind] + [f"{k}={v}" for k, v in params.items()])
    out = [head]
    for name, lines in sections:
        out.append(f"[{name}]")
        out.extend(lines)
    return "\n".join(out) + "\n"


def parse_sections(text: str, kind: str, source: str = "<string>") -> tuple[dict[str, str], list[tuple[str, list[str]]]]:
    params: dict[str, str] | None = None
    sections: list[tuple[str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if params is None:
            if not line.startswith(kind):
                raise ParseError(f"{source}:{lineno}: expected header starting with {kind!r}")
            params = dict(_KV.findall(line[len(kind):]))
            continue
        if line.startswith("[") and line.endswith("]"):
            sections.append((line[1:-1].strip(), []))
            continue
        if not sections:
            raise ParseError(f"{source}:{lineno}: content before the first [section]")
        sections[-1][1].append(line)
    if params is None:
        raise ParseError(f"{source}: empty manifest")
    return params, sections


def _int_params(params: dict[str, str], keys: Iterable[str], source: str) -> dict[str, int]:
    out = {}
    for k in keys:
        if k not in params:
            raise ParseError(f"{source}: missing parameter {k}")
        try:
            out[k] = int(params[k])
        except ValueError:
            raise ParseError(f"{source}: parameter {k} must be an integer") from None
    return out


def format_packing(packing) -> str:
    """Packing manifest: one [part i] section per part and a [residual] section."""
    g = packing.ground
    sections = [(f"part {i}", [format_codeword(s) for s in p]) for i, p in enumerate(packing.parts)]
    sections.append(("residual", [format_codeword(s) for s in packing.residual]))
    params = {"q": g.q, "n": g.n, "d": packing.d, "l": packing.l}
    if packing.modes:
        params["modes"] = ",".join(packing.modes)
    return format_sections("packing", params, sections)


def parse_packing(text: str, source: str = "<string>"):
    from .packing import Packing

    params, sections = parse_sections(text, "packing", source)
    p = _int_params(params, ("q", "n", "d"), source)
    field = gf(p["q"])
    parts, residual = [], []
    for name, lines in sections:
        members = [parse_codeword(field, p["n"], ln, f"{source} [{name}]: ") for ln in lines]
        if name == "residual":
            residual.extend(members)
        elif name.startswith("part"):
            parts.append(members)
        else:
            raise ParseError(f"{source}: unknown section [{name}]")
    ground = Code(field, p["n"], [s for part in parts for s in part] + residual)
    modes = params.get("modes", "").split(",") if params.get("modes") else []
    return Packing(ground, parts, p["d"], residual, modes)


def format_matrix(mat: np.ndarray) -> str:
    return ";".join(" ".join(str(int(x)) for x in row) for row in mat)


def format_blueprint(bp) -> str:
    """Blueprint manifest: [A i], [B i] family sections and an [F] section of matrices."""
    sections: list[tuple[str, list[str]]] = []
    for i, (a, b) in enumerate(zip(bp.A, bp.B)):
        sections.append((f"A {i}", [format_codeword(s) for s in a]))
        sections.append((f"B {i}", [format_codeword(s) for s in b]))
    sections.append(("F", [format_matrix(f) for f in bp.F]))
    params = {
        "q": bp.q, "n": bp.n, "k": bp.k, "nprime": bp.nprime, "kprime": bp.kprime, "d": bp.d,
        "l": bp.l, "lambda": bp.lam, "fbar": len(bp.F),
    }
    return format_sections("coset-blueprint", params, sections)


def parse_blueprint(text: str, source: str = "<string>"):
    from .coset import CosetBlueprint

    params, sections = parse_sections(text, "coset-blueprint", source)
    p = _int_params(params, ("q", "n", "k", "nprime", "kprime", "d"), source)
    field = gf(p["q"])
    fcols = p["n"] - p["nprime"] - p["k"] + p["kprime"]
    A: dict[int, list] = {}
    B: dict[int, list] = {}
    F = []
    for name, lines in sections:
        tok = name.split()
        if tok[0] in ("A", "B") and len(tok) == 2 and tok[1].isdigit():
            nn = p["nprime"] if tok[0] == "A" else p["n"] - p["nprime"]
            target = A if tok[0] == "A" else B
            target[int(tok[1])] = [parse_codeword(field, nn, ln, f"{source} [{name}]: ") for ln in lines]
        elif tok == ["F"]:
            for ln in lines:
                rows = [r.split() for r in ln.split(";")] if fcols else [[] for _ in range(p["kprime"])]
                try:
                    F.append(np.array([[int(x) for x in r] for r in rows], dtype=np.int64).reshape(p["kprime"], fcols))
                except ValueError:
                    raise ParseError(f"{source} [F]: malformed matrix {ln!r}") from None
        else:
            raise ParseError(f"{source}: unknown section [{name}]")
    if sorted(A) != list(range(len(A))) or sorted(B) != sorted(A):
        raise ParseError(f"{source}: families must be numbered 0..l-1 on both sides")
    fmat = np.array(F, dtype=np.int64).reshape(-1, p["kprime"], fcols) if F else None
    return CosetBlueprint(p["q"], p["n"], p["k"], p["nprime"], p["kprime"], p["d"],
                          [A[i] for i in range(len(A))], [B[i] for i in range(len(B))], fmat)


# ---------------------------------------------------------------------------
# key=value reports


def format_report(items: Mapping[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in items.items())


def parse_report(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#") and "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out
