"""One-stop loader for the game/ttat/cue config file and lexicons.

A config file is a JSON object with ``game``, ``ttat`` and ``cues``
sections (see the packaged ``data/config.json``). It may name its own
lexicon files under ``lexicons`` with paths relative to itself;
otherwise the packaged defaults apply.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .analyzer.config import (
    BrandLexicon,
    CueConfig,
    cue_config_from_dict,
    load_brand_lexicon,
    load_phrases,
    _data_path,
)
from .game import GameConfig
from .ttat import TtatWeights


@dataclass(frozen=True)
class Settings:
    game: GameConfig
    ttat: TtatWeights
    cues: CueConfig
    lexicon: BrandLexicon

    def to_dict(self) -> dict:
        """Config content as plain data; the basis of the config hash."""
        return {
            "game": self.game.to_dict(),
            "ttat": self.ttat.to_dict(),
            "cues": {
                "weights": {kind.value: w for kind, w in self.cues.weights.items()},
                "threshold": self.cues.threshold,
                "max_subdomains": self.cues.max_subdomains,
                "dangerous_extensions": list(self.cues.dangerous_extensions),
                "extra_suffixes": list(self.cues.extra_suffixes),
            },
        }


def load_settings(config_path: Path | str | None = None) -> Settings:
    if config_path is None:
        config_file = _data_path("config.json")
    else:
        config_file = Path(config_path)
    raw = json.loads(config_file.read_text(encoding="utf-8"))

    lexicon_paths = raw.get("lexicons", {})

    def resolve(key: str, default_name: str) -> Path:
        if key in lexicon_paths:
            return (config_file.parent / lexicon_paths[key]).resolve()
        return _data_path(default_name)

    salutations = load_phrases(resolve("salutations", "salutations.txt"))
    urgency = load_phrases(resolve("urgency", "urgency.txt"))
    lexicon = load_brand_lexicon(resolve("brands", "brands.json"))

    return Settings(
        game=GameConfig.from_dict(raw["game"]),
        ttat=TtatWeights.from_dict(raw.get("ttat", {})),
        cues=cue_config_from_dict(raw["cues"], salutations, urgency),
        lexicon=lexicon,
    )


def default_settings() -> Settings:
    return load_settings(None)
