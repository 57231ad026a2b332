"""The ``.ring`` presentation format and supplied-decomposition files.

Grammar::

    file         := ring_decl (ideal_decl | decomp_ref)+
    ring_decl    := "ring" "GF(" INT ")" "[" [ident ("," ident)*] "]"
    ideal_decl   := "ideal" [ident ":"] poly ("," poly)*
    decomp_ref   := "decomposition" STRING

Exactly one ``ideal`` declaration is unnamed; it is the defining ideal.
``#`` starts a comment.  A decomposition file is a sequence of
``component: polys`` blocks, each optionally followed by ``prime: polys``
giving the radical of that component (default: the component itself).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .groebner import PolyIdeal
from .parsing import (KEYWORDS, NonPrimeModulusError, PolynomialParser,
                      SemanticError, Token, TokenStream, UnitIdealError, describe)
from .poly import MAX_MODULUS, Polynomial, PolyRing, is_prime
from .qring import MAX_PRESENTATION_VARS, QuotientRing


@dataclass
class RingFile:
    modulus: int
    variables: tuple[str, ...]
    ideal: tuple[Polynomial, ...]
    named: dict[str, tuple[Polynomial, ...]] = field(default_factory=dict)
    decomposition: str | None = None

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.modulus, self.variables)

    def quotient_ring(self, decomposition=None, name: str | None = None) -> QuotientRing:
        return QuotientRing(PolyIdeal(self.ring, self.ideal), decomposition=decomposition, name=name)

    def __eq__(self, other):
        if not isinstance(other, RingFile):
            return NotImplemented
        return (self.modulus, self.variables, self.ideal, list(self.named.items()),
                self.decomposition) == (other.modulus, other.variables, other.ideal,
                                        list(other.named.items()), other.decomposition)


def _parse_ring_decl(ts: TokenStream) -> tuple[int, tuple[str, ...], Token]:
    if not ts.at("IDENT", "ring"):
        ts.error(f"missing ring declaration: expected 'ring', found {describe(ts.cur)}")
    ts.advance()
    gf = ts.cur
    if not ts.at("IDENT", "GF"):
        ts.error(f"expected 'GF', found {describe(gf)}")
    ts.advance()
    ts.expect("OP", "(", "'('")
    mod_tok = ts.expect("INT", what="a prime modulus")
    ts.expect("OP", ")", "')'")
    p = int(mod_tok.value)
    if not is_prime(p) or p >= MAX_MODULUS:
        ts.error(f"{p} is not a prime below 2^31", mod_tok, NonPrimeModulusError)
    ts.expect("OP", "[", "'['")
    names: list[str] = []
    if not ts.at("OP", "]"):
        while True:
            tok = ts.expect("IDENT", what="a variable name")
            if tok.value in KEYWORDS:
                ts.error(f"{tok.value!r} is a reserved word", tok, SemanticError)
            if tok.value in names:
                ts.error(f"duplicate variable {tok.value!r}", tok, SemanticError)
            names.append(tok.value)
            if not ts.at("OP", ","):
                break
            ts.advance()
    close = ts.expect("OP", "]", "',' or ']'")
    if len(names) > MAX_PRESENTATION_VARS:
        ts.error(f"at most {MAX_PRESENTATION_VARS} variables are supported", close, SemanticError)
    return p, tuple(names), gf


def parse_ring_file(text: str, source: str = "<input>") -> RingFile:
    ts = TokenStream(text, source)
    modulus, names, _ = _parse_ring_decl(ts)
    ring = PolyRing(modulus, names)
    parser = PolynomialParser(ts, ring)
    defining = None
    defining_tok = None
    named: dict[str, tuple[Polynomial, ...]] = {}
    decomposition = None
    seen_decl = False
    while not ts.at("EOF"):
        tok = ts.cur
        if ts.at("IDENT", "decomposition"):
            ts.advance()
            path = ts.expect("STRING", what="a quoted file name")
            if decomposition is not None:
                ts.error("more than one decomposition reference", tok, SemanticError)
            decomposition = path.value
            seen_decl = True
            continue
        if not ts.at("IDENT", "ideal"):
            ts.error(f"expected 'ideal' or 'decomposition', found {describe(tok)}")
        ts.advance()
        seen_decl = True
        label = None
        if ts.cur.kind == "IDENT" and ts.peek().kind == "OP" and ts.peek().value == ":":
            label = ts.advance()
            ts.advance()
        polys = tuple(parser.parse_list())
        if label is None:
            if defining is not None:
                ts.error("more than one defining (unnamed) ideal", tok, SemanticError)
            defining, defining_tok = polys, tok
        else:
            if label.value in named:
                ts.error(f"duplicate ideal name {label.value!r}", label, SemanticError)
            named[label.value] = polys
    if not seen_decl:
        ts.error("expected at least one 'ideal' declaration")
    if defining is None:
        ts.error("missing the defining (unnamed) ideal declaration", cls=SemanticError)
    defining = tuple(f for f in defining if f)
    if PolyIdeal(ring, defining).is_unit():
        ts.error("the defining ideal is the unit ideal", defining_tok, UnitIdealError)
    return RingFile(modulus, names, defining, named, decomposition)


def _format_list(polys) -> str:
    return ", ".join(str(f) for f in polys) if polys else "0"


def format_ring_file(rf: RingFile) -> str:
    lines = [f"ring GF({rf.modulus})[{','.join(rf.variables)}]", f"ideal {_format_list(rf.ideal)}"]
    for name, polys in rf.named.items():
        lines.append(f"ideal {name}: {_format_list(polys)}")
    if rf.decomposition is not None:
        lines.append(f'decomposition "{rf.decomposition}"')
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str, ring: PolyRing, source: str = "<input>"):
    """``[(component, prime_or_None), ...]`` as :class:`PolyIdeal` pairs."""
    ts = TokenStream(text, source)
    parser = PolynomialParser(ts, ring)
    blocks: list[list] = []
    while not ts.at("EOF"):
        tok = ts.cur
        if ts.at("IDENT", "component"):
            ts.advance()
            ts.expect("OP", ":", "':'")
            blocks.append([PolyIdeal(ring, parser.parse_list()), None])
        elif ts.at("IDENT", "prime"):
            ts.advance()
            ts.expect("OP", ":", "':'")
            if not blocks or blocks[-1][1] is not None:
                ts.error("'prime:' must follow its 'component:' block", tok, SemanticError)
            blocks[-1][1] = PolyIdeal(ring, parser.parse_list())
        else:
            ts.error(f"expected 'component:' or 'prime:', found {describe(tok)}")
    if not blocks:
        ts.error("a decomposition needs at least one 'component:' block", cls=SemanticError)
    return [tuple(b) for b in blocks]


def load_ring(path: str | Path, decomposition: str | Path | None = None,
              name: str | None = None) -> tuple[RingFile, QuotientRing]:
    """Read a ``.ring`` file (and its decomposition, if any) into a quotient ring."""
    path = Path(path)
    rf = parse_ring_file(path.read_text(encoding="utf-8"), str(path))
    dec_path = decomposition
    if dec_path is None and rf.decomposition is not None:
        dec_path = path.parent / rf.decomposition
    pairs = None
    if dec_path is not None:
        dec_path = Path(dec_path)
        pairs = parse_decomposition(dec_path.read_text(encoding="utf-8"), rf.ring, str(dec_path))
    return rf, rf.quotient_ring(pairs, name=name or path.stem)
