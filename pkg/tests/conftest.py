import json
from importlib import resources
from pathlib import Path

import pytest

from phishpond.corpus import Corpus, CorpusAnalysis, load_corpus
from phishpond.game import GameConfig, LevelConfig
from phishpond.corpus import Tier
from phishpond.settings import Settings, default_settings

TESTS_DIR = Path(__file__).parent


@pytest.fixture(scope="session")
def settings() -> Settings:
    return default_settings()


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    data = resources.files("phishpond").joinpath("data", "corpus.json").read_bytes()
    return load_corpus(data)


@pytest.fixture(scope="session")
def analysis(settings, corpus) -> CorpusAnalysis:
    return CorpusAnalysis(corpus, settings.lexicon, settings.cues)


@pytest.fixture(scope="session")
def oracle_items() -> list[dict]:
    return json.loads((TESTS_DIR / "data" / "oracle_corpus.json").read_text(encoding="utf-8"))["items"]


def make_config(
    limits=(180.0, 120.0, 90.0),
    counts=(10, 15, 20),
    fractions=(0.4, 0.5, 0.6),
    points_correct=10,
    points_wrong=-5,
    hint_penalty=-3,
    lives=3,
) -> GameConfig:
    tiers = (Tier.BEGINNER, Tier.INTERMEDIATE, Tier.ADVANCED)
    return GameConfig(
        levels={
            tier: LevelConfig(
                time_limit=limits[i],
                worm_count=counts[i],
                phish_fraction=fractions[i],
                points_correct=points_correct,
                points_wrong=points_wrong,
                hint_penalty=hint_penalty,
            )
            for i, tier in enumerate(tiers)
        },
        lives=lives,
    )


@pytest.fixture(scope="session")
def default_config(settings) -> GameConfig:
    return settings.game
