"""Line-oriented text format for Yu data.

A file has the sections [levi], [point], [depths], [characters] and [rho]:

    [levi]
    p = 7
    precision = 6
    G1 = SL2
    G2 = torus elliptic delta=7

    [point]
    x = 1/4,-1/4

    [depths]
    r1 = 1/2

    [characters]
    phi1 = quadratic_form coeff=2

    [rho]
    kind = character
    degree = 1
    cuspidal = true
    certificate = declared
    character = trivial

When G_{n+1} is the whole group, ``torus = elliptic delta=...`` and
``character`` record the pair (S-bar, phi-bar) of a Deligne-Lusztig
representation.  Character specs name a constructor followed by key=value
fields; rationals are written as a/b and coordinates in E = F(sqrt(delta))
as a,b.  Parsed characters remember their descriptor string, so writing a
parsed datum reproduces the file byte for byte.  The sign character epsilon
is not part of the file.
"""
from __future__ import annotations

import configparser
import io
from fractions import Fraction
from importlib import resources

from .building import BTTriple
from .cyclotomic import RootOfUnity
from .errors import ConfigError
from .local_field import LocalFieldDesc
from .tori import (LogCharacter, TorusCharacter, TorusDescriptor, field_character, norm_character,
                   quadratic_form_character, split_character, tame_character, trivial_character)
from .yu import DetCharacter, ReductiveGroup, RhoHandle, YuDatum, is_torus

SECTIONS = ("levi", "point", "depths", "characters", "rho")


def _fractions(text: str) -> list[Fraction]:
    return [Fraction(t) for t in text.split(",") if t.strip()]


def _fields(parts) -> dict:
    out = {}
    for part in parts:
        if "=" not in part:
            raise ConfigError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k] = v
    return out


def _log_character(fd: LocalFieldDesc, fields: dict) -> LogCharacter:
    c = None
    if "c" in fields:
        coords = _fractions(fields["c"])
        c = fd(*coords)
    return LogCharacter(fd, c=c, tame=int(fields.get("tame", 0)),
                        unramified=RootOfUnity(Fraction(fields.get("unramified", "0"))))


def character_from_spec(spec: str, target, group: ReductiveGroup):
    """Build the character named by ``spec`` on ``target`` (a torus or the whole group)."""
    words = spec.split()
    if not words:
        raise ConfigError("empty character spec")
    kind, fields = words[0], _fields(words[1:])
    if kind in ("det", "det_trivial"):
        if is_torus(target):
            raise ConfigError("det characters live on the whole group")
        psi = _log_character(group.base, fields) if kind == "det" else None
        ch = DetCharacter(group, psi)
        ch.spec = spec
        return ch
    if not is_torus(target):
        raise ConfigError(f"{kind} characters live on a torus")
    torus = target
    if kind == "trivial":
        ch = trivial_character(torus)
    elif kind == "quadratic_form":
        ch = quadratic_form_character(torus, int(fields.get("coeff", 2)))
    elif kind == "field":
        ch = field_character(torus, _log_character(torus.field, fields))
    elif kind == "norm":
        ch = norm_character(torus, _log_character(torus.base, fields))
    elif kind == "tame":
        ch = tame_character(torus, int(fields["k"]))
    elif kind == "split":
        exps = [int(e) for e in fields.pop("exponents").split(",")]
        ch = split_character(torus, _log_character(torus.base, fields), exps)
    else:
        raise ConfigError(f"unknown character type {kind!r}")
    ch.descriptor = dict(ch.descriptor or {}, spec=spec)
    return ch


def _psi_fields(desc: dict) -> str:
    parts = []
    if "c" in desc:
        parts.append("c=" + ",".join(desc["c"]))
    if desc.get("tame"):
        parts.append(f"tame={desc['tame']}")
    if desc.get("unramified", "0") != "0":
        parts.append(f"unramified={desc['unramified']}")
    return " ".join(parts)


def character_to_spec(ch) -> str:
    if isinstance(ch, DetCharacter):
        if getattr(ch, "spec", None):
            return ch.spec
        desc = ch.descriptor
        return "det_trivial" if desc["type"] == "det_trivial" else ("det " + _psi_fields(desc["psi"])).strip()
    desc = ch.descriptor or {}
    if "spec" in desc:
        return desc["spec"]
    kind = desc.get("type")
    if kind == "trivial":
        return "trivial"
    if kind == "quadratic_form":
        return f"quadratic_form coeff={desc['coeff']}"
    if kind == "tame":
        return f"tame k={desc['k']}"
    if kind == "field":
        return ("field " + _psi_fields(desc["chi"])).strip()
    if kind == "norm":
        return ("norm " + _psi_fields(desc["psi"])).strip()
    if kind == "split":
        return ("split exponents=" + ",".join(str(e) for e in desc["exponents"]) + " "
                + _psi_fields(desc["psi"])).strip()
    raise ConfigError(f"character {getattr(ch, 'label', ch)!r} has no serializable descriptor")


def _group_from(text: str, p: int, precision: int):
    words = text.split()
    if words[0] == "torus":
        fields = _fields(words[2:])
        if words[1] != "elliptic":
            raise ConfigError("only elliptic tori appear in Yu data here")
        return words[0], fields
    name = words[0]
    if name[:2] not in ("SL", "GL"):
        raise ConfigError(f"unknown group {name!r}")
    return ReductiveGroup(name[:2], int(name[2:]), p, precision), None


def parse_yu(text: str) -> YuDatum:
    """Parse the INI-style datum format; malformed input raises ConfigError."""
    try:
        return _parse_yu(text)
    except (KeyError, ValueError, IndexError) as exc:
        raise ConfigError(f"malformed datum: {type(exc).__name__}: {exc}") from exc


def _parse_yu(text: str) -> YuDatum:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    missing = [s for s in SECTIONS if s not in cp]
    if missing:
        raise ConfigError(f"missing sections: {', '.join(missing)}")
    lv = cp["levi"]
    p = int(lv["p"])
    precision = int(lv.get("precision", "6"))
    names = sorted((k for k in lv if k.startswith("G")), key=lambda k: int(k[1:]))
    levi = []
    group = None
    for k in names:
        g, fields = _group_from(lv[k], p, precision)
        if fields is None:
            levi.append(g)
            group = group or g
        else:
            if group is None:
                raise ConfigError("G1 must be the whole group")
            levi.append(TorusDescriptor.elliptic(group.kind, p, int(fields["delta"]), precision))
    x = BTTriple(group.kind, group.n, tuple(_fractions(cp["point"]["x"])))
    dp = cp["depths"]
    depths = [Fraction(dp[k]) for k in sorted(dp, key=lambda k: int(k[1:]))]
    cs = cp["characters"]
    chars = []
    for i, k in enumerate(sorted(cs, key=lambda k: int(k[3:]))):
        target = levi[i + 1] if i + 1 < len(levi) else levi[-1]
        chars.append(character_from_spec(cs[k], target, group))
    rs = cp["rho"]
    character = None
    torus = levi[-1] if is_torus(levi[-1]) else None
    if "torus" in rs:
        g, fields = _group_from("torus " + rs["torus"], p, precision)
        torus = TorusDescriptor.elliptic(group.kind, p, int(fields["delta"]), precision)
    if "character" in rs:
        if torus is None:
            raise ConfigError("a rho character needs a torus")
        character = character_from_spec(rs["character"], torus, group)
    params = {k[len("param_"):]: v for k, v in rs.items() if k.startswith("param_")}
    cusp = rs.get("cuspidal", "true")
    rho = RhoHandle(rs.get("kind", "trivial"), int(rs.get("degree", "1")),
                    None if cusp == "unknown" else cusp == "true", rs.get("certificate", "declared"),
                    character, params, torus)
    return YuDatum(levi, x, depths, chars, rho)


def _group_text(g) -> str:
    if is_torus(g):
        return f"torus elliptic delta={g.field.delta}"
    return f"{g.kind}{g.n}"


def serialize_yu(d: YuDatum) -> str:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    g = d.group
    cp["levi"] = {"p": str(g.p), "precision": str(g.precision)}
    for i, member in enumerate(d.levi, start=1):
        cp["levi"][f"G{i}"] = _group_text(member)
    cp["point"] = {"x": ",".join(str(Fraction(c)) for c in d.x.x)}
    cp["depths"] = {f"r{i}": str(Fraction(r)) for i, r in enumerate(d.depths, start=1)}
    cp["characters"] = {f"phi{i}": character_to_spec(ch) for i, ch in enumerate(d.characters, start=1)}
    rho = d.rho
    section = {"kind": rho.kind, "degree": str(rho.degree),
               "cuspidal": "unknown" if rho.cuspidal is None else str(bool(rho.cuspidal)).lower(),
               "certificate": rho.certificate}
    if rho.torus is not None and not is_torus(d.levi[-1]):
        section["torus"] = _group_text(rho.torus)[len("torus "):]
    if rho.character is not None:
        section["character"] = character_to_spec(rho.character)
    for k, v in rho.params.items():
        section[f"param_{k}"] = str(v)
    cp["rho"] = section
    out = io.StringIO()
    cp.write(out)
    return out.getvalue()


def builtin_names() -> list[str]:
    files = resources.files("padic_cusp.data")
    return sorted(f.name[:-3] for f in files.iterdir() if f.name.endswith(".yu"))


def read_builtin(name: str) -> str:
    path = resources.files("padic_cusp.data").joinpath(f"{name}.yu")
    if not path.is_file():
        raise ConfigError(f"no built-in datum named {name!r}; available: {', '.join(builtin_names())}")
    return path.read_text()


def load_yu(source: str) -> tuple[YuDatum, str]:
    """Read a datum from a path or from ``builtin:<name>``; returns the datum and the text."""
    if source.startswith("builtin:"):
        text = read_builtin(source[len("builtin:"):])
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(str(exc)) from exc
    return parse_yu(text), text
