"""Text config parsing for the batch front-end.

Grammar (UTF-8, '#' comments, commas between pairs optional):

    datum { type="A2", ambient=2, k={alpha1=1, alpha2=3/2} }
    gamma { name="swap", matrix=[[0,1],[1,0]] }
    options { truncation=16, max_dim=1000000 }
    induce { p=["alpha1"], delta="steinberg", lambda_re=[0,0], extended=true }
    findim { kind="group" }
    catalog = "entries.cat"

Unknown keys are rejected; diagnostics carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .hecke import HeckeAlgebra
from .rootdata import RootDatum, build_root_datum
from .weyl import DiagramAutomorphism, make_diagram_automorphism


class ConfigError(ValueError):
    pass


@dataclass
class Token:
    kind: str  # ident, number, string, punct
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "{}[]=,":
            out.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ConfigError(f"line {line}, col {col}: unterminated string")
                j += 1
            if j >= n:
                raise ConfigError(f"line {line}, col {col}: unterminated string")
            out.append(Token("string", text[i + 1:j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and (text[j].isdigit() or text[j] == "/"):
                j += 1
            out.append(Token("number", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            out.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ConfigError(f"line {line}, col {col}: unexpected character {ch!r}")
    return out


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else Token("", "", 1, 1)
            raise ConfigError(
                f"line {last.line}: unexpected end of input")
        self.pos += 1
        return t

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        t = self.next()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise ConfigError(
                f"line {t.line}, col {t.col}: expected {want!r}, got {t.text!r}")
        return t

    def parse_value(self) -> Any:
        t = self.next()
        if t.kind == "string":
            return t.text
        if t.kind == "number":
            try:
                return Fraction(t.text)
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(
                    f"line {t.line}, col {t.col}: bad number {t.text!r}") from exc
        if t.kind == "ident" and t.text in ("true", "false"):
            return t.text == "true"
        if t.kind == "punct" and t.text == "{":
            return self.parse_pairs_until_brace()
        if t.kind == "punct" and t.text == "[":
            items = []
            while True:
                nxt = self.peek()
                if nxt is None:
                    raise ConfigError(f"line {t.line}: unterminated list")
                if nxt.kind == "punct" and nxt.text == "]":
                    self.next()
                    return items
                items.append(self.parse_value())
                nxt = self.peek()
                if nxt is not None and nxt.kind == "punct" and nxt.text == ",":
                    self.next()
        raise ConfigError(
            f"line {t.line}, col {t.col}: unexpected token {t.text!r}")

    def parse_pairs_until_brace(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        while True:
            t = self.peek()
            if t is None:
                raise ConfigError("unterminated block")
            if t.kind == "punct" and t.text == "}":
                self.next()
                return out
            if t.kind == "punct" and t.text == ",":
                self.next()
                continue
            key = self.expect("ident")
            self.expect("punct", "=")
            if key.text in out:
                raise ConfigError(
                    f"line {key.line}: duplicate key {key.text!r}")
            out[key.text] = self.parse_value()


def parse_blocks(text: str) -> List[Tuple[str, Any]]:
    """Top-level blocks as (name, dict) or (name, value) pairs, in order."""
    parser = _Parser(_tokenize(text))
    out: List[Tuple[str, Any]] = []
    while parser.peek() is not None:
        name = parser.expect("ident")
        t = parser.peek()
        if t is not None and t.kind == "punct" and t.text == "{":
            parser.next()
            out.append((name.text, parser.parse_pairs_until_brace()))
        else:
            parser.expect("punct", "=")
            out.append((name.text, parser.parse_value()))
    return out


# ---------------------------------------------------------------------------
# RunConfig: validated configuration, buildable into library objects.
# ---------------------------------------------------------------------------

_DATUM_KEYS = {"type", "ambient", "k", "gram"}
_GAMMA_KEYS = {"name", "matrix"}
_OPTIONS_KEYS = {"truncation", "max_dim", "n_max"}
_INDUCE_KEYS = {"p", "delta", "lambda_re", "lambda_im", "extended"}
_FINDIM_KEYS = {"kind", "size"}


@dataclass
class RunConfig:
    datum_type: str
    ambient: int
    k_values: Dict[str, Fraction]
    gram: Optional[List[List[Fraction]]] = None
    gammas: List[Tuple[str, List[List[Fraction]]]] = field(default_factory=list)
    truncation: int = 16
    max_dim: int = 10 ** 6
    n_max: int = 2
    catalog_path: Optional[str] = None
    induce_block: Optional[Dict[str, Any]] = None
    findim_kind: str = "group"
    findim_size: int = 2
    source_text: str = ""

    def root_names(self, datum: RootDatum) -> List[str]:
        return [f"alpha{i + 1}" for i in range(datum.rank)]

    def build_datum(self) -> RootDatum:
        return build_root_datum(self.datum_type, self.ambient, self.gram)

    def build_k(self, datum: RootDatum) -> List[Fraction]:
        names = self.root_names(datum)
        if not self.k_values:
            return [Fraction(0)] * datum.rank
        if set(self.k_values) == {"all"}:
            return [self.k_values["all"]] * datum.rank
        unknown = set(self.k_values) - set(names)
        if unknown:
            raise ConfigError(
                f"unknown parameter keys {sorted(unknown)}; "
                f"expected {names}")
        missing = set(names) - set(self.k_values)
        if missing:
            raise ConfigError(f"missing parameter values for {sorted(missing)}")
        return [self.k_values[n] for n in names]

    def build_algebra(self) -> HeckeAlgebra:
        datum = self.build_datum()
        k = self.build_k(datum)
        gammas = [make_diagram_automorphism(datum, name, matrix)
                  for name, matrix in self.gammas]
        gammas = _close_gammas(datum, gammas)
        return HeckeAlgebra(datum, k, gammas)

    def root_indices(self, datum: RootDatum, names: Sequence[str]) -> List[int]:
        valid = self.root_names(datum)
        out = []
        for n in names:
            if n not in valid:
                raise ConfigError(f"unknown simple root {n!r}; expected {valid}")
            out.append(valid.index(n))
        return sorted(out)


def _close_gammas(datum: RootDatum,
                  gammas: List[DiagramAutomorphism]) -> List[DiagramAutomorphism]:
    """Close the given automorphisms under composition (bounded)."""
    from .linalg import identity, mat_mul
    have = {g.matrix: g for g in gammas}
    have.setdefault(identity(datum.ambient_dim),
                    DiagramAutomorphism("e", tuple(range(datum.rank)),
                                        identity(datum.ambient_dim)))
    changed = True
    counter = 0
    while changed:
        changed = False
        items = list(have.values())
        for a in items:
            for b in items:
                m = mat_mul(a.matrix, b.matrix)
                if m not in have:
                    counter += 1
                    label = f"{a.label}*{b.label}"
                    have[m] = make_diagram_automorphism(datum, label, m)
                    changed = True
        if len(have) > 64:
            raise ConfigError("diagram-automorphism closure too large")
    return [g for g in have.values() if g.label != "e"]


def load_config(text: str) -> RunConfig:
    blocks = parse_blocks(text)
    datum_block = None
    cfg_kwargs: Dict[str, Any] = {}
    gammas = []
    for name, payload in blocks:
        if name == "datum":
            if datum_block is not None:
                raise ConfigError("duplicate datum block")
            unknown = set(payload) - _DATUM_KEYS
            if unknown:
                raise ConfigError(f"unknown datum keys {sorted(unknown)}")
            datum_block = payload
        elif name == "gamma":
            unknown = set(payload) - _GAMMA_KEYS
            if unknown:
                raise ConfigError(f"unknown gamma keys {sorted(unknown)}")
            if "name" not in payload or "matrix" not in payload:
                raise ConfigError("gamma block needs name and matrix")
            gammas.append((payload["name"],
                           [[Fraction(x) for x in row]
                            for row in payload["matrix"]]))
        elif name == "options":
            unknown = set(payload) - _OPTIONS_KEYS
            if unknown:
                raise ConfigError(f"unknown options keys {sorted(unknown)}")
            if "truncation" in payload:
                cfg_kwargs["truncation"] = int(payload["truncation"])
            if "max_dim" in payload:
                cfg_kwargs["max_dim"] = int(payload["max_dim"])
            if "n_max" in payload:
                cfg_kwargs["n_max"] = int(payload["n_max"])
        elif name == "induce":
            unknown = set(payload) - _INDUCE_KEYS
            if unknown:
                raise ConfigError(f"unknown induce keys {sorted(unknown)}")
            cfg_kwargs["induce_block"] = payload
        elif name == "findim":
            unknown = set(payload) - _FINDIM_KEYS
            if unknown:
                raise ConfigError(f"unknown findim keys {sorted(unknown)}")
            if "kind" in payload:
                kind = payload["kind"]
                if kind not in ("group", "matrix", "ground"):
                    raise ConfigError(f"unknown findim kind {kind!r}")
                cfg_kwargs["findim_kind"] = kind
            if "size" in payload:
                cfg_kwargs["findim_size"] = int(payload["size"])
        elif name == "catalog":
            if not isinstance(payload, str):
                raise ConfigError("catalog must be a path string")
            cfg_kwargs["catalog_path"] = payload
        else:
            raise ConfigError(f"unknown top-level block {name!r}")
    if datum_block is None:
        raise ConfigError("config needs a datum block")
    if "type" not in datum_block or "ambient" not in datum_block:
        raise ConfigError("datum block needs type and ambient")
    kvals: Dict[str, Fraction] = {}
    kraw = datum_block.get("k", {})
    if isinstance(kraw, Fraction):
        kvals = {"all": kraw}
    elif isinstance(kraw, dict):
        kvals = {key: Fraction(v) for key, v in kraw.items()}
    else:
        raise ConfigError("datum k must be a number or a map")
    gram = None
    if "gram" in datum_block:
        gram = [[Fraction(x) for x in row] for row in datum_block["gram"]]
    return RunConfig(datum_type=str(datum_block["type"]),
                     ambient=int(datum_block["ambient"]),
                     k_values=kvals, gram=gram, gammas=gammas,
                     source_text=text, **cfg_kwargs)


def apply_k_override(cfg: RunConfig, override: str) -> None:
    """--k-override 'alpha1=2,alpha2=2' or a single value for all roots."""
    override = override.strip()
    if "=" not in override:
        cfg.k_values = {"all": Fraction(override)}
        return
    out: Dict[str, Fraction] = {}
    for chunk in override.split(","):
        if "=" not in chunk:
            raise ConfigError(f"bad k override chunk {chunk!r}")
        name, val = chunk.split("=", 1)
        out[name.strip()] = Fraction(val.strip())
    cfg.k_values = out
