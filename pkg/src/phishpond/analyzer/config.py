"""Cue weighting, lexicons, and their file loaders.

All tunables (cue weights, threshold, phrase lists, brand inventory)
live in data files, not code. The packaged defaults under
``phishpond/data/`` are loaded lazily; callers may point at their own
files. No loader ever touches the network.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .cues import CueKind
from .urls import registrable_domain_of


@dataclass(frozen=True)
class Brand:
    brand_id: str
    canonical_domains: tuple[str, ...]
    name_tokens: tuple[str, ...]


@dataclass(frozen=True)
class BrandLexicon:
    brands: tuple[Brand, ...]

    def __post_init__(self):
        seen = set()
        for brand in self.brands:
            if brand.brand_id in seen:
                raise ValueError(f"duplicate brand id {brand.brand_id!r}")
            seen.add(brand.brand_id)
            for domain in brand.canonical_domains:
                if not domain or domain != registrable_domain_of(domain):
                    raise ValueError(
                        f"{brand.brand_id}: {domain!r} is not a registrable domain"
                    )

    def get(self, brand_id: str) -> Brand | None:
        for brand in self.brands:
            if brand.brand_id == brand_id:
                return brand
        return None

    def hyphen_tokens(self) -> list[tuple[str, str]]:
        """(brand_id, token) pairs usable in host labels (no spaces)."""
        out = []
        for brand in self.brands:
            for token in brand.name_tokens:
                if " " not in token:
                    out.append((brand.brand_id, token.lower()))
        return out

    def all_canonical_domains(self) -> list[str]:
        return [d for brand in self.brands for d in brand.canonical_domains]

    def is_canonical(self, domain: str) -> bool:
        return any(domain == d for d in self.all_canonical_domains())


@dataclass(frozen=True)
class CueConfig:
    weights: dict[CueKind, float]
    threshold: float = 0.5
    max_subdomains: int = 3
    dangerous_extensions: tuple[str, ...] = ("exe", "scr", "bat", "js", "zip")
    extra_suffixes: tuple[str, ...] = ()
    generic_salutations: tuple[str, ...] = ()
    urgency_phrases: tuple[str, ...] = ()

    def weight_of(self, kind: CueKind) -> float:
        return self.weights[kind]


def load_phrases(path: Path) -> tuple[str, ...]:
    """One lowercase phrase per line; blanks and #-comments skipped."""
    phrases = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            phrases.append(line)
    return tuple(phrases)


def load_brand_lexicon(path: Path) -> BrandLexicon:
    data = json.loads(path.read_text(encoding="utf-8"))
    return brand_lexicon_from_dict(data)


def brand_lexicon_from_dict(data: dict) -> BrandLexicon:
    brands = tuple(
        Brand(
            brand_id=entry["brand_id"],
            canonical_domains=tuple(entry["canonical_domains"]),
            name_tokens=tuple(entry["name_tokens"]),
        )
        for entry in data["brands"]
    )
    return BrandLexicon(brands=brands)


def cue_config_from_dict(data: dict, salutations: Iterable[str], urgency: Iterable[str]) -> CueConfig:
    weights = {CueKind(name): float(w) for name, w in data["weights"].items()}
    missing = [kind.value for kind in CueKind if kind not in weights]
    if missing:
        raise ValueError(f"cue weights missing for: {', '.join(missing)}")
    return CueConfig(
        weights=weights,
        threshold=float(data.get("threshold", 0.5)),
        max_subdomains=int(data.get("max_subdomains", 3)),
        dangerous_extensions=tuple(data.get("dangerous_extensions", ("exe", "scr", "bat", "js", "zip"))),
        extra_suffixes=tuple(data.get("extra_suffixes", ())),
        generic_salutations=tuple(s.lower() for s in salutations),
        urgency_phrases=tuple(p.lower() for p in urgency),
    )


def _data_path(name: str) -> Path:
    return Path(str(resources.files("phishpond").joinpath("data", name)))


def default_brand_lexicon() -> BrandLexicon:
    return load_brand_lexicon(_data_path("brands.json"))


def default_cue_config() -> CueConfig:
    config = json.loads(_data_path("config.json").read_text(encoding="utf-8"))
    return cue_config_from_dict(
        config["cues"],
        load_phrases(_data_path("salutations.txt")),
        load_phrases(_data_path("urgency.txt")),
    )
